#include <doctest.h>

#include <random>

#include "stacklab/errors.hpp"
#include "stacklab/evalharness.hpp"
#include "stacklab/manifest.hpp"

using namespace stacklab;

TEST_CASE("well-formed responses") {
  auto p = parse_response("<think>the top block overhangs</think><answer>False</answer>");
  CHECK(p.format_ok);
  CHECK(p.answer == Answer::False);
  REQUIRE(p.think.has_value());
  CHECK(*p.think == "the top block overhangs");

  p = parse_response("  <think>x</think>\n\n<answer> true. </answer>\n");
  CHECK(p.format_ok);
  CHECK(p.answer == Answer::True);

  p = parse_response("<think></think><answer>TRUE</answer>");
  CHECK(p.format_ok);
  CHECK(p.answer == Answer::True);
}

TEST_CASE("malformed responses") {
  auto p = parse_response("The tower is stable. True");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::Invalid);

  p = parse_response("<answer>True</answer>");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::True);

  p = parse_response("<answer>True</answer><think>x</think>");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::True);

  p = parse_response("<think>x</think>then<answer>True</answer>");
  CHECK_FALSE(p.format_ok);

  p = parse_response("<think>x</think><answer>True</answer> trailing");
  CHECK_FALSE(p.format_ok);

  p = parse_response("<think>x</think><answer>True</answer><answer>False</answer>");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::Invalid);

  p = parse_response("<think>x<think>y</think><answer>True</answer>");
  CHECK_FALSE(p.format_ok);

  p = parse_response("<think>x</think><answer>maybe</answer>");
  CHECK(p.format_ok);
  CHECK(p.answer == Answer::Invalid);

  p = parse_response("<think>x</think></answer>True<answer>");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::Invalid);

  p = parse_response("");
  CHECK_FALSE(p.format_ok);
  CHECK(p.answer == Answer::Invalid);
}

TEST_CASE("reward values") {
  const auto score = [](std::string_view text, Answer gold) { return score_response(parse_response(text), gold).total; };
  CHECK(score("<think>ok</think><answer>True</answer>", Answer::True) == 1.0);
  CHECK(score("<think>ok</think><answer>True</answer>", Answer::False) == 0.1);
  CHECK(score("True", Answer::True) == 0.0);
  CHECK(score("<answer>False</answer>", Answer::False) == 0.9);
  CHECK_THROWS_AS(score_response(parse_response("x"), Answer::Invalid), UsageError);

  RewardWeights w{0.5, 0.4};
  CHECK_THROWS_AS(w.validate(), UsageError);
  w = {0.3, 0.7};
  CHECK_NOTHROW(w.validate());
  CHECK(score_response(parse_response("<think>a</think><answer>True</answer>"), Answer::True, w).total ==
        doctest::Approx(1.0));
}

TEST_CASE("fuzzed responses score within the four reward levels") {
  const std::vector<std::string> pieces{"<think>", "</think>", "<answer>", "</answer>", "True", "False",
                                        " ",       "\n",       "text",     "<",         ">",     "/"};
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 10);
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    for (int n = len(rng); n > 0; --n) text += pieces[pick(rng)];
    for (Answer gold : {Answer::True, Answer::False}) {
      const auto parsed = parse_response(text);
      const auto s = score_response(parsed, gold);
      CHECK((s.total == 0.0 || s.total == 0.1 || s.total == 0.9 || s.total == 1.0));
      CHECK(s.total == 0.1 * s.format_reward + 0.9 * s.answer_reward);
      if (parsed.format_ok) {
        CHECK(parsed.think.has_value());
        CHECK(parse_response("<think>" + *parsed.think + "</think><answer>" +
                             std::string(parsed.answer == Answer::Invalid ? "?" : to_string(parsed.answer)) +
                             "</answer>")
                  .format_ok);
      }
    }
  }
}

TEST_CASE("prediction sets join responses to the manifest") {
  GenSpec spec;
  spec.dim = Dim::Two;
  spec.heights = {3};
  spec.count_per_cell = 1;
  const Manifest m = gen_dataset(spec);
  REQUIRE(m.records.size() == 4);

  std::vector<ResponseRecord> responses;
  for (const auto& r : m.records) {
    responses.push_back({r.id, "<think>t</think><answer>" + std::string(to_string(gold_answer(r.label))) + "</answer>"});
  }
  const PredictionSet set = build_prediction_set(m, responses);
  CHECK(set.entries.size() == 4);
  const auto summary = summarize_rewards(set);
  CHECK(summary.mean_total == 1.0);
  CHECK(summary.accuracy == 1.0);
  CHECK(summary.invalid_rate == 0.0);

  const auto back = prediction_set_from_string(prediction_set_to_string(set));
  CHECK(prediction_set_to_string(back) == prediction_set_to_string(set));

  auto unknown = responses;
  unknown.push_back({"nope", "True"});
  CHECK_THROWS_AS(build_prediction_set(m, unknown), UsageError);
  auto dup = responses;
  dup.push_back(responses.front());
  CHECK_THROWS_AS(build_prediction_set(m, dup), UsageError);

  CHECK_THROWS_AS(responses_from_string("{\"id\":\"a\",\"response\":\"x\"}\n{\"id\":1}\n"), ParseError);
}

TEST_CASE("untagged responses are all invalid") {
  PredictionSet set;
  for (int i = 0; i < 4; ++i) {
    PredictionEntry e;
    e.gold = i % 2 ? Answer::True : Answer::False;
    e.pred = parse_response("I think it stands").answer;
    e.scored = score_response(parse_response("I think it stands"), e.gold);
    set.entries.push_back(e);
  }
  const auto s = summarize_rewards(set);
  CHECK(s.mean_total == 0.0);
  CHECK(s.invalid_rate == 1.0);
  CHECK_FALSE(s.accuracy.has_value());
}
