#include "stacklab/evalharness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "stacklab/errors.hpp"
#include "stacklab/io.hpp"
#include "stacklab/manifest.hpp"

namespace stacklab {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t count(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

Answer normalize_answer(std::string_view content) {
  content = trim(content);
  if (!content.empty() && content.back() == '.') content.remove_suffix(1);
  if (iequals(content, "true")) return Answer::True;
  if (iequals(content, "false")) return Answer::False;
  return Answer::Invalid;
}

// Content of the single open/close pair, if exactly one of each exists in order.
std::optional<std::pair<std::size_t, std::size_t>> single_block(std::string_view text, std::string_view open,
                                                                std::string_view close) {
  if (count(text, open) != 1 || count(text, close) != 1) return std::nullopt;
  const auto begin = text.find(open) + open.size();
  const auto end = text.find(close);
  if (end < begin) return std::nullopt;
  return std::make_pair(begin, end);
}

}  // namespace

std::string_view to_string(Answer answer) {
  switch (answer) {
    case Answer::True: return "True";
    case Answer::False: return "False";
    case Answer::Invalid: return "Invalid";
  }
  return "Invalid";
}

Answer parse_answer_name(std::string_view text) {
  if (text == "True") return Answer::True;
  if (text == "False") return Answer::False;
  if (text == "Invalid") return Answer::Invalid;
  throw UsageError("unknown answer '" + std::string(text) + "'");
}

Answer gold_answer(Label label) { return label == Label::Stable ? Answer::True : Answer::False; }

void RewardWeights::validate() const {
  if (!(format >= 0.0 && answer >= 0.0) || std::abs(format + answer - 1.0) > 1e-9) {
    throw UsageError("reward weights must be non-negative and sum to 1");
  }
}

ParsedResponse parse_response(std::string_view raw_text) {
  const std::string_view text = trim(raw_text);
  ParsedResponse parsed;

  const auto answer = single_block(text, kAnswerOpen, kAnswerClose);
  if (answer) parsed.answer = normalize_answer(text.substr(answer->first, answer->second - answer->first));

  const auto think = single_block(text, kThinkOpen, kThinkClose);
  if (think) parsed.think = std::string(text.substr(think->first, think->second - think->first));

  if (answer && think && text.starts_with(kThinkOpen) && text.ends_with(kAnswerClose)) {
    const auto gap_begin = think->second + kThinkClose.size();
    const auto gap_end = answer->first - kAnswerOpen.size();
    parsed.format_ok = gap_end >= gap_begin && trim(text.substr(gap_begin, gap_end - gap_begin)).empty();
  }
  return parsed;
}

ScoredResponse score_response(const ParsedResponse& parsed, Answer gold, const RewardWeights& weights) {
  if (gold == Answer::Invalid) throw UsageError("gold answer must be True or False");
  ScoredResponse s;
  s.format_reward = parsed.format_ok ? 1 : 0;
  s.answer_reward = parsed.answer == gold ? 1 : 0;
  s.total = weights.format * s.format_reward + weights.answer * s.answer_reward;
  return s;
}

PredictionSet build_prediction_set(const Manifest& manifest, const std::vector<ResponseRecord>& responses,
                                   const RewardWeights& weights) {
  weights.validate();
  std::map<std::string, const SampleRecord*> by_id;
  for (const auto& r : manifest.records) by_id.emplace(r.id, &r);

  std::vector<std::string> unknown;
  std::set<std::string> seen;
  std::set<std::string> duplicated;
  for (const auto& response : responses) {
    if (!by_id.contains(response.sample_id)) unknown.push_back(response.sample_id);
    if (!seen.insert(response.sample_id).second) duplicated.insert(response.sample_id);
  }
  auto join = [](const auto& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
    return out;
  };
  if (!unknown.empty()) throw UsageError("responses reference unknown sample ids: " + join(unknown));
  if (!duplicated.empty()) throw UsageError("duplicate responses for sample ids: " + join(duplicated));

  PredictionSet set;
  set.entries.reserve(responses.size());
  for (const auto& response : responses) {
    const SampleRecord& record = *by_id.at(response.sample_id);
    const auto parsed = parse_response(response.raw_text);
    PredictionEntry e;
    e.sample_id = record.id;
    e.gold = gold_answer(record.label);
    e.pred = parsed.answer;
    e.height = record.height;
    e.difficulty = record.difficulty;
    e.split = record.split;
    e.source_id = record.source_id;
    e.response = response.raw_text;
    e.scored = score_response(parsed, e.gold, weights);
    set.entries.push_back(std::move(e));
  }
  return set;
}

std::vector<ResponseRecord> responses_from_string(std::string_view text) {
  std::vector<ResponseRecord> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      const auto j = Json::parse(lines[i]);
      out.push_back({j.at("id").get<std::string>(), j.at("response").get<std::string>()});
    } catch (const Json::exception& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return out;
}

std::vector<ResponseRecord> read_responses(const std::filesystem::path& path) {
  return responses_from_string(read_file(path));
}

std::string prediction_set_to_string(const PredictionSet& set) {
  std::string out;
  for (const auto& e : set.entries) {
    Json j{{"id", e.sample_id}};
    if (!e.model.empty()) j["model"] = e.model;
    j["response"] = e.response;
    j["gold"] = std::string(to_string(e.gold));
    j["pred"] = std::string(to_string(e.pred));
    j["format_reward"] = e.scored.format_reward;
    j["answer_reward"] = e.scored.answer_reward;
    j["total"] = e.scored.total;
    j["height"] = e.height;
    j["difficulty"] = std::string(to_string(e.difficulty));
    j["split"] = std::string(to_string(e.split));
    if (e.source_id) j["source_id"] = *e.source_id;
    out += dump_line(j);
    out += '\n';
  }
  return out;
}

PredictionSet prediction_set_from_string(std::string_view text) {
  PredictionSet set;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      const auto j = Json::parse(lines[i]);
      PredictionEntry e;
      e.sample_id = j.at("id").get<std::string>();
      e.model = j.value("model", "");
      e.response = j.value("response", "");
      e.gold = parse_answer_name(j.at("gold").get<std::string>());
      if (e.gold == Answer::Invalid) throw UsageError("gold must be True or False");
      e.pred = parse_answer_name(j.at("pred").get<std::string>());
      e.height = j.at("height").get<int>();
      e.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
      e.split = parse_split(j.value("split", "test"));
      if (j.contains("source_id")) e.source_id = j.at("source_id").get<std::string>();
      e.scored.format_reward = j.value("format_reward", 0);
      e.scored.answer_reward = j.value("answer_reward", e.pred == e.gold ? 1 : 0);
      e.scored.total = j.value("total", 0.0);
      set.entries.push_back(std::move(e));
    } catch (const Json::exception& e) {
      throw ParseError(i + 1, e.what());
    } catch (const UsageError& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return set;
}

PredictionSet read_prediction_set(const std::filesystem::path& path) {
  return prediction_set_from_string(read_file(path));
}

RewardSummary summarize_rewards(const PredictionSet& set) {
  RewardSummary s;
  s.n = set.entries.size();
  if (s.n == 0) return s;
  double total = 0;
  std::size_t valid = 0;
  std::size_t correct = 0;
  for (const auto& e : set.entries) {
    total += e.scored.total;
    if (e.pred == Answer::Invalid) continue;
    ++valid;
    if (e.pred == e.gold) ++correct;
  }
  s.mean_total = total / static_cast<double>(s.n);
  s.invalid_rate = static_cast<double>(s.n - valid) / static_cast<double>(s.n);
  if (valid > 0) s.accuracy = static_cast<double>(correct) / static_cast<double>(valid);
  return s;
}

}  // namespace stacklab
