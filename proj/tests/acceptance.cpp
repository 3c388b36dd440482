// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "oracle/stats_oracle.hpp"
#include "oracle/torque_oracle.hpp"
#include "stacklab/biasstats.hpp"
#include "stacklab/cli.hpp"
#include "stacklab/evalharness.hpp"
#include "stacklab/generator.hpp"
#include "stacklab/io.hpp"
#include "stacklab/manifest.hpp"
#include "stacklab/statics.hpp"
#include "test_support.hpp"

using namespace stacklab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && elapsed >= limit_s) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(limit_s) + " s budget)";
  }
  if (!o.ok) ++failures;
  std::printf("[%s] %d. %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", number, name.c_str(), elapsed, o.detail.c_str());
  std::fflush(stdout);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

std::string tree_digest(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files[fs::relative(entry.path(), root).string()] = read_file(entry.path());
  }
  std::string all;
  for (const auto& [name, content] : files) all += name + "\n" + content + "\n";
  return all;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20241019);
  int compared = 0, skipped = 0, mismatches = 0, stable = 0;
  for (int i = 0; i < 1000; ++i) {
    const Dim dim = i % 2 ? Dim::Three : Dim::Two;
    const Scene s = stacklab::testing::random_tower(rng, dim, 2 + i % 5);
    const auto report = analyze_stability(s);
    if (std::abs(report.min_margin) < 1e-9) {
      ++skipped;
      continue;
    }
    ++compared;
    stable += report.stable ? 1 : 0;
    if (report.stable != oracle::torque_stable(stacklab::testing::to_raw(s), horizontal_axes(dim))) ++mismatches;
  }
  return {mismatches == 0, std::to_string(compared) + " compared, " + std::to_string(skipped) + " degenerate, " +
                               std::to_string(mismatches) + " mismatches (" + std::to_string(stable) + " stable)"};
}

Outcome duplication_invariance() {
  int checked = 0, violations = 0;
  for (int factor : {2, 3}) {
    for (int i = 0; i <= 99; ++i) {
      const Scene base = stacklab::testing::two_cubes(0.01 * i);
      const auto report = analyze_stability(base);
      if (std::abs(report.min_margin) < 1e-9) continue;
      const Scene dup = gen_duplicated(base, factor);
      const auto dup_report = analyze_stability(dup);
      if (std::abs(dup_report.min_margin) < 1e-9) continue;
      ++checked;
      if (dup_report.stable != report.stable) ++violations;
    }
  }
  return {violations == 0, std::to_string(checked) + " cases, " + std::to_string(violations) + " violations"};
}

Outcome t_pref_fixtures() {
  const bool equal = t_pref({9, 1, 9, 1}) == 0.0 && t_pref({5, 5, 5, 5}) == 0.0;
  const bool one = near(t_pref({10, 5, 5, 0}), 0.7615941559557649, 1e-12);
  const bool point8 = near(t_pref({9, 5, 5, 1}), 0.6640367702678491, 1e-12);
  const bool saturate = t_pref({5, 10, 0, 5}) == 1.0;
  return {equal && one && point8 && saturate, "zero, tanh(1), tanh(0.8), saturation"};
}

Outcome reward_fixtures() {
  auto total = [](std::string_view text, Answer gold) { return score_response(parse_response(text), gold).total; };
  const bool fixtures = total("<think>ok</think><answer>True</answer>", Answer::True) == 1.0 &&
                        total("<think>ok</think><answer>True</answer>", Answer::False) == 0.1 &&
                        total("<answer>False</answer>", Answer::False) == 0.9 &&
                        total("The tower stands. True", Answer::True) == 0.0;
  const std::vector<std::string> pieces{"<think>", "</think>", "<answer>", "</answer>", "True", "False", "true",
                                        " ",       "\n",       "x",        "<",         ">",        "/",    "."};
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  int outside = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string text;
    for (int n = len(rng); n > 0; --n) text += pieces[pick(rng)];
    const double t = total(text, i % 2 ? Answer::True : Answer::False);
    if (!(t == 0.0 || t == 0.1 || t == 0.9 || t == 1.0)) ++outside;
  }
  return {fixtures && outside == 0, "fixtures " + std::string(fixtures ? "ok" : "wrong") + ", " +
                                        std::to_string(outside) + " of 10000 fuzzed totals outside the set"};
}

Outcome statistics_fixtures() {
  const auto fit = ols_trend(std::vector<std::pair<double, double>>{{1, 2}, {2, 3}, {3, 5}});
  const bool ols = near(fit.slope, 1.5, 1e-12) && near(fit.std_error, 0.28868, 1e-4) && near(fit.p_value, 0.12111, 1e-4);
  const bool cdf = near(student_t_cdf(5.1962, 1), oracle::t1_cdf(5.1962), 1e-6) &&
                   near(student_t_cdf(3.4641, 2), oracle::t2_cdf(3.4641), 1e-6) &&
                   near(student_t_cdf(5.1962, 1), 0.939481681702059, 1e-6) &&
                   near(student_t_cdf(3.4641, 2), 0.9629100190531342, 1e-6);
  std::map<std::string, std::vector<std::pair<double, double>>> groups;
  const double slopes[] = {-0.1, -0.2, -0.3};
  for (int g = 0; g < 3; ++g) {
    for (int h = 2; h <= 6; ++h) groups["g" + std::to_string(g)].emplace_back(h, 1.0 + slopes[g] * h);
  }
  const auto trend = group_slope_trend(groups).fit;
  const bool two_stage = near(trend.slope, -0.2, 1e-12) && near(trend.p_value, 0.07418, 1e-4);
  char buf[160];
  std::snprintf(buf, sizeof buf, "ols slope %.4f se %.5f p %.5f; two-stage %.4f p %.5f", fit.slope, fit.std_error,
                fit.p_value, trend.slope, trend.p_value);
  return {ols && cdf && two_stage, buf};
}

Outcome bias_pipeline() {
  GenSpec spec;
  spec.dim = Dim::Three;
  spec.heights = {2, 3, 4, 5, 6};
  spec.count_per_cell = 50;
  spec.seed = 2024;
  const Manifest manifest = gen_dataset(spec);

  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (int model = 0; model < 9; ++model) {
    std::mt19937_64 rng(1000 + model);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<ResponseRecord> responses;
    for (const auto& r : manifest.records) {
      const bool say_false = u(rng) < 0.2 + 0.1 * (r.height - 2);
      responses.push_back({r.id, std::string("<think>look</think><answer>") + (say_false ? "False" : "True") + "</answer>"});
    }
    const auto set = build_prediction_set(manifest, responses);
    for (const auto& [group, m] : grouped_bias(set, GroupKey::Height)) {
      if (m.t_pref) points["model" + std::to_string(model)].emplace_back(std::stod(group), *m.t_pref);
    }
  }
  const auto trend = group_slope_trend(points).fit;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu records, slope %.4f, p %.3g", manifest.records.size(), trend.slope,
                trend.p_value);
  return {manifest.records.size() == 1000 && trend.slope < 0 && trend.p_value < 0.05, buf};
}

Outcome determinism(const fs::path& root) {
  const std::vector<std::string> base{"generate", "--dim", "3", "--heights", "2,3,4", "--count", "3",
                                      "--seed",   "99",    "--render"};
  const std::string max_jobs = std::to_string(std::max(8u, std::thread::hardware_concurrency()));
  std::vector<std::string> digests;
  for (const auto& [name, jobs] : std::vector<std::pair<std::string, std::string>>{
           {"serial_a", "1"}, {"serial_b", "1"}, {"parallel", max_jobs}}) {
    auto args = base;
    args.insert(args.end(), {"--jobs", jobs, "--out", (root / name).string()});
    if (run_cli(args) != 0) return {false, "generate failed for " + name};
    digests.push_back(tree_digest(root / name));
  }
  const bool same = digests[0] == digests[1] && digests[1] == digests[2];
  return {same, "serial, serial and " + max_jobs + "-thread outputs " + (same ? "identical" : "differ")};
}

Outcome dataset_contract(const fs::path& root) {
  bool all_ok = true;
  std::string detail;
  for (const auto& [dim, heights] : std::vector<std::pair<std::string, std::string>>{{"2", "3,4,5,6"}, {"3", "2,3,4,5,6"}}) {
    const auto dir = root / ("dim" + dim);
    if (run_cli({"generate", "--dim", dim, "--heights", heights, "--count", "10", "--seed", "5", "--out", dir.string()}) != 0) {
      return {false, "generate failed"};
    }
    const Manifest m = read_manifest(dir / "manifest.jsonl");
    std::map<std::pair<int, Difficulty>, int> balance;
    int in_band = 0;
    for (const auto& r : m.records) {
      balance[{r.height, r.difficulty}] += r.label == Label::Stable ? 1 : -1;
      if (std::abs(r.min_margin) < kExclusionBand) ++in_band;
    }
    bool balanced = true;
    for (const auto& [cell, diff] : balance) balanced = balanced && diff == 0;
    const bool valid = run_cli({"validate", (dir / "manifest.jsonl").string()}) == 0;
    all_ok = all_ok && balanced && in_band == 0 && valid;
    detail += dim + "D: " + std::to_string(m.records.size()) + " records, " + (balanced ? "balanced" : "unbalanced") +
              ", " + std::to_string(in_band) + " in band, validate " + (valid ? "ok" : "failed") + "; ";
  }
  return {all_ok, detail};
}

}  // namespace

int main() {
  const auto root = stacklab::testing::temp_dir("acceptance");
  criterion(1, "oracle equivalence on 1000 random towers", 10, oracle_equivalence);
  criterion(2, "duplication preserves labels over the offset grid", 5, duplication_invariance);
  criterion(3, "T_pref fixtures", 0, t_pref_fixtures);
  criterion(4, "reward fixtures and fuzzed responses", 0, reward_fixtures);
  criterion(5, "statistics fixtures", 0, statistics_fixtures);
  criterion(6, "height-bias pipeline over 9 synthetic models", 30, bias_pipeline);
  criterion(7, "deterministic generation under parallelism", 0, [&] { return determinism(root / "determinism"); });
  criterion(8, "dataset contract", 0, [&] { return dataset_contract(root / "contract"); });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
