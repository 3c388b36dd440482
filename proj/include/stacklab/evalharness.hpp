#pragma once

// Model response ingestion: tagged chain-of-thought parsing, binary
// format/answer rewards, and joining responses to manifest ground truth.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stacklab/generator.hpp"

namespace stacklab {

enum class Answer { True, False, Invalid };

std::string_view to_string(Answer answer);
Answer parse_answer_name(std::string_view text);
Answer gold_answer(Label label);

struct ResponseRecord {
  std::string sample_id;
  std::string raw_text;
};

struct ParsedResponse {
  std::optional<std::string> think;
  Answer answer = Answer::Invalid;
  bool format_ok = false;
};

struct RewardWeights {
  double format = 0.1;
  double answer = 0.9;

  /// Throws UsageError unless both are non-negative and sum to 1.
  void validate() const;
};

struct ScoredResponse {
  int format_reward = 0;
  int answer_reward = 0;
  double total = 0;
};

/// Strict grammar: after trimming, the text is `<think>...</think>`, optional
/// whitespace, then `<answer>...</answer>`, with each tag exactly once. The
/// answer is read from a single well-ordered answer block even when the
/// overall format fails.
ParsedResponse parse_response(std::string_view raw_text);

ScoredResponse score_response(const ParsedResponse& parsed, Answer gold, const RewardWeights& weights = {});

struct PredictionEntry {
  std::string sample_id;
  std::string model;  ///< empty when the set carries no model tag
  Answer gold = Answer::True;
  Answer pred = Answer::Invalid;
  int height = 0;
  Difficulty difficulty = Difficulty::Easy;
  Split split = Split::Test;
  std::optional<std::string> source_id;
  std::string response;
  ScoredResponse scored;
};

struct PredictionSet {
  std::vector<PredictionEntry> entries;
};

/// Throws UsageError listing unknown or duplicated sample ids.
PredictionSet build_prediction_set(const Manifest& manifest, const std::vector<ResponseRecord>& responses,
                                   const RewardWeights& weights = {});

std::vector<ResponseRecord> read_responses(const std::filesystem::path& path);
std::vector<ResponseRecord> responses_from_string(std::string_view text);

std::string prediction_set_to_string(const PredictionSet& set);
PredictionSet prediction_set_from_string(std::string_view text);
PredictionSet read_prediction_set(const std::filesystem::path& path);

struct RewardSummary {
  std::size_t n = 0;
  double mean_total = 0;
  std::optional<double> accuracy;  ///< over valid predictions
  double invalid_rate = 0;
};

RewardSummary summarize_rewards(const PredictionSet& set);

}  // namespace stacklab
