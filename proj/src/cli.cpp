#include "stacklab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <tuple>

#include "stacklab/biasstats.hpp"
#include "stacklab/errors.hpp"
#include "stacklab/evalharness.hpp"
#include "stacklab/generator.hpp"
#include "stacklab/io.hpp"
#include "stacklab/manifest.hpp"
#include "stacklab/parallel.hpp"
#include "stacklab/render.hpp"

namespace stacklab::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string fmt_opt(const char* pattern, const std::optional<double>& value, const char* missing = "-") {
  return value ? fmt(pattern, *value) : std::string(missing);
}

Eigen::Vector3d size_bound(const std::vector<double>& values, const char* flag) {
  if (values.size() == 1) return Eigen::Vector3d::Constant(values[0]);
  if (values.size() == 3) return {values[0], values[1], values[2]};
  throw UsageError(std::string(flag) + " takes one value or three comma-separated values (width,depth,height)");
}

std::pair<int, int> parse_canvas(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("missing x");
    std::size_t used_w = 0, used_h = 0;
    const int w = std::stoi(text.substr(0, x), &used_w);
    const int h = std::stoi(text.substr(x + 1), &used_h);
    if (used_w != x || used_h != text.size() - x - 1) throw std::invalid_argument("trailing characters");
    return {w, h};
  } catch (const std::exception&) {
    throw UsageError("--canvas expects WIDTHxHEIGHT, got '" + text + "'");
  }
}

RewardWeights parse_weights(const std::vector<double>& values) {
  if (values.size() != 2) throw UsageError("--weights expects two comma-separated values (format,answer)");
  RewardWeights w{values[0], values[1]};
  w.validate();
  return w;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t flag_value) {
  if (flag->count() > 0) return flag_value;
  if (const char* env = std::getenv("STACKLAB_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used != std::string_view(env).size()) throw std::invalid_argument("trailing characters");
      return value;
    } catch (const std::exception&) {
      throw UsageError(std::string("STACKLAB_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 0;
}

// Renders every record into root/images and patches relative image paths.
void render_records(Manifest& manifest, const fs::path& root, ImageFormat format, const ViewSpec& view,
                    unsigned jobs) {
  const fs::path images = root / "images";
  parallel_for(manifest.records.size(), jobs, [&](std::size_t i) {
    auto& record = manifest.records[i];
    record.images.clear();
    for (const auto& name : render_sample(record, images, format, view)) record.images.push_back("images/" + name);
  });
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  int dim = 2;
  std::vector<int> heights;
  int count = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_flag = nullptr;
  double split_ratio = 0.8;
  std::vector<double> size_min{0.5};
  std::vector<double> size_max{1.5};
  std::string family = "cuboid";
  std::vector<std::string> difficulties{"easy", "hard"};
  std::size_t budget = kDefaultRejectionBudget;
  std::string out;
  bool render = false;
  std::string format = "svg";
  std::string canvas = "512x512";
  unsigned jobs = 0;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GenSpec spec;
  if (a.dim != 2 && a.dim != 3) throw UsageError("--dim must be 2 or 3");
  spec.dim = static_cast<Dim>(a.dim);
  spec.heights = a.heights;
  spec.count_per_cell = a.count;
  spec.seed = resolve_seed(a.seed_flag, a.seed);
  spec.split_ratio = a.split_ratio;
  spec.difficulties.clear();
  for (const auto& d : a.difficulties) spec.difficulties.push_back(parse_difficulty(d));
  spec.tower.family = parse_shape_family(a.family);
  spec.tower.size_min = size_bound(a.size_min, "--size-min");
  spec.tower.size_max = size_bound(a.size_max, "--size-max");
  spec.tower.rejection_budget = a.budget;
  spec.validate();

  const auto format = parse_image_format(a.format);
  ViewSpec view;
  std::tie(view.width, view.height) = parse_canvas(a.canvas);
  if (view.width < 64 || view.height < 64) throw UsageError("canvas must be at least 64x64");

  Manifest manifest = gen_dataset(spec, a.jobs);
  const fs::path root(a.out);
  if (a.render) render_records(manifest, root, format, view, a.jobs);
  write_manifest(root / "manifest.jsonl", manifest);

  std::map<std::tuple<int, Label, Difficulty>, int> cells;
  std::size_t train = 0;
  for (const auto& r : manifest.records) {
    ++cells[{r.height, r.label, r.difficulty}];
    if (r.split == Split::Train) ++train;
  }
  for (const auto& [cell, n] : cells) {
    const auto& [h, label, difficulty] = cell;
    out << "height=" << h << " label=" << to_string(label) << " difficulty=" << to_string(difficulty) << ": " << n
        << "\n";
  }
  out << "wrote " << manifest.records.size() << " records (train " << train << ", test "
      << manifest.records.size() - train << ") to " << (root / "manifest.jsonl").string() << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, std::ostream& out) {
  const Manifest manifest = read_manifest(path);
  std::vector<std::string> problems;
  auto problem = [&](const std::string& id, const std::string& what) { problems.push_back(id + ": " + what); };

  std::set<std::string> ids;
  std::map<std::pair<int, Difficulty>, std::pair<int, int>> balance;
  for (const auto& r : manifest.records) {
    if (!ids.insert(r.id).second) problem(r.id, "duplicate id");
    const auto validation = scene_validate(r.scene);
    if (!validation.ok()) {
      for (const auto& v : validation.violations) {
        problem(r.id, "invalid scene: " + v.invariant + " at index " + std::to_string(v.index));
      }
      continue;
    }
    const auto report = analyze_stability(r.scene);
    const Label computed = report.stable ? Label::Stable : Label::Unstable;
    if (computed != r.label) {
      problem(r.id, "label mismatch: stored " + std::string(to_string(r.label)) + ", computed " +
                        std::string(to_string(computed)));
    }
    if (r.height != static_cast<int>(r.scene.size())) problem(r.id, "height does not match body count");
    if (std::abs(report.min_margin) < kExclusionBand) problem(r.id, "min_margin inside the exclusion band");
    if (std::abs(report.min_margin - r.min_margin) > kContactTolerance) problem(r.id, "stored min_margin is stale");
    bool margins_match = r.stability.stable == report.stable && r.stability.margins.size() == report.margins.size() &&
                         r.stability.first_violation == report.first_violation;
    for (std::size_t k = 0; margins_match && k < report.margins.size(); ++k) {
      margins_match = std::abs(r.stability.margins[k].margin - report.margins[k].margin) <= kContactTolerance;
    }
    if (!margins_match) problem(r.id, "stored stability report does not match recomputation");
    if (sample_id(r.scene) != r.id) problem(r.id, "id does not match scene content");
    if (classify_difficulty(computed, misalignment(r.scene)) != r.difficulty) problem(r.id, "difficulty mismatch");
    auto& cell = balance[{r.height, r.difficulty}];
    (r.label == Label::Stable ? cell.first : cell.second)++;
  }
  for (const auto& [cell, counts] : balance) {
    if (counts.first != counts.second) {
      problems.push_back("cell height=" + std::to_string(cell.first) + " difficulty=" +
                         std::string(to_string(cell.second)) + ": unbalanced labels (" +
                         std::to_string(counts.first) + " stable, " + std::to_string(counts.second) + " unstable)");
    }
  }

  for (const auto& p : problems) out << p << "\n";
  out << manifest.records.size() << " records checked, " << problems.size() << " problems\n";
  return problems.empty() ? kSuccess : kFailure;
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string manifest;
  std::string responses;
  std::string out;
  std::string model;
  std::vector<double> weights{0.1, 0.9};
};

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  const auto weights = parse_weights(a.weights);
  const Manifest manifest = read_manifest(a.manifest);
  const auto responses = read_responses(a.responses);
  PredictionSet set = build_prediction_set(manifest, responses, weights);
  for (auto& e : set.entries) e.model = a.model;
  write_file_atomic(a.out, prediction_set_to_string(set));

  const auto summary = summarize_rewards(set);
  out << "records: " << summary.n << "\n";
  out << "mean total reward: " << fmt("%.6f", summary.mean_total) << "\n";
  out << "accuracy: " << fmt_opt("%.6f", summary.accuracy, "undefined") << "\n";
  out << "invalid rate: " << fmt("%.6f", summary.invalid_rate) << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::vector<std::string> predictions;
  std::vector<std::string> group_by{"height", "difficulty"};
  std::string trend;
  std::string annotations;
  std::string out;
};

// Entries of the duplicated series: duplicates plus the records they came from.
PredictionSet duplicated_series(const PredictionSet& set) {
  std::set<std::string> sources;
  for (const auto& e : set.entries) {
    if (e.source_id) sources.insert(*e.source_id);
  }
  PredictionSet out;
  for (const auto& e : set.entries) {
    if (e.source_id || sources.contains(e.sample_id)) out.entries.push_back(e);
  }
  return out;
}

PredictionSet base_series(const PredictionSet& set) {
  PredictionSet out;
  for (const auto& e : set.entries) {
    if (!e.source_id) out.entries.push_back(e);
  }
  return out;
}

std::string markdown_table(const std::map<std::string, PredictionSet>& models) {
  std::set<int> heights, dup_heights;
  std::map<std::string, GroupTable> difficulty, height, dup_height;
  std::map<std::string, std::optional<double>> accuracy;
  for (const auto& [name, set] : models) {
    accuracy[name] = confusion(set).accuracy;
    const auto base = base_series(set);
    const auto dup = duplicated_series(set);
    difficulty[name] = grouped_bias(base, GroupKey::Difficulty);
    height[name] = grouped_bias(base, GroupKey::Height);
    dup_height[name] = grouped_bias(dup, GroupKey::Height);
    for (const auto& e : base.entries) heights.insert(e.height);
    for (const auto& e : dup.entries) dup_heights.insert(e.height);
  }
  auto cell = [](const GroupTable& table, const std::string& key) {
    const auto it = table.find(key);
    return it == table.end() ? std::string("-") : fmt_opt("%.3f", it->second.t_pref);
  };

  std::string md = "| Model | Accuracy | Difficulty Bias: Easy | Difficulty Bias: Hard";
  for (int h : heights) md += " | Height Bias: " + std::to_string(h);
  for (int h : dup_heights) md += " | Duplicated Height Bias: " + std::to_string(h);
  md += " |\n|---|---:|---:|---:";
  for (std::size_t i = 0; i < heights.size() + dup_heights.size(); ++i) md += "|---:";
  md += "|\n";
  for (const auto& [name, set] : models) {
    md += "| " + name + " | " + fmt_opt("%.3f", accuracy[name]) + " | " + cell(difficulty[name], "easy") + " | " +
          cell(difficulty[name], "hard");
    for (int h : heights) md += " | " + cell(height[name], std::to_string(h));
    for (int h : dup_heights) md += " | " + cell(dup_height[name], std::to_string(h));
    md += " |\n";
  }
  return md;
}

std::string trend_text(const TrendFit& fit) {
  std::string s = std::string("method: ") + (fit.method == TrendMethod::Ols ? "ols" : "two_stage") + "\n";
  s += "slope: " + fmt("%.6f", fit.slope) + "\n";
  s += "intercept: " + fmt("%.6f", fit.intercept) + "\n";
  s += "ci95: [" + fmt("%.6f", fit.ci95[0]) + ", " + fmt("%.6f", fit.ci95[1]) + "]\n";
  s += "p_value: " + fmt("%.6g", fit.p_value) + "\n";
  s += "n: " + std::to_string(fit.n) + "\n";
  return s;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (a.predictions.empty()) throw UsageError("at least one --predictions file is required");
  std::vector<GroupKey> keys;
  for (const auto& k : a.group_by) keys.push_back(parse_group_key(k));
  if (!a.trend.empty() && a.trend != "height") throw UsageError("--trend supports only 'height'");

  // One model per distinct "model" tag; untagged entries take the file stem.
  std::map<std::string, PredictionSet> models;
  PredictionSet all;
  for (const auto& file : a.predictions) {
    auto set = read_prediction_set(file);
    for (auto& e : set.entries) {
      if (e.model.empty()) e.model = fs::path(file).stem().string();
      models[e.model].entries.push_back(e);
      all.entries.push_back(e);
    }
  }

  std::string csv = "model,group_by,group,n,tp,fp,tn,fn,accuracy,t_pref\n";
  for (const auto& [name, set] : models) {
    for (GroupKey key : keys) {
      for (const auto& [group, m] : grouped_bias(set, key)) {
        const auto& cm = m.summary.cm;
        csv += name + "," + std::string(to_string(key)) + "," + group + "," + std::to_string(m.summary.n) + "," +
               std::to_string(cm.tp) + "," + std::to_string(cm.fp) + "," + std::to_string(cm.tn) + "," +
               std::to_string(cm.fn) + "," + fmt_opt("%.6f", m.summary.accuracy, "") + "," +
               fmt_opt("%.6f", m.t_pref, "") + "\n";
      }
    }
  }

  std::string md = "# Bias report\n\n" + markdown_table(models);
  int status = kSuccess;

  if (!a.trend.empty()) {
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    for (const auto& [name, set] : models) {
      for (const auto& [group, m] : grouped_bias(base_series(set), GroupKey::Height)) {
        if (m.t_pref) points[name].emplace_back(std::stod(group), *m.t_pref);
      }
    }
    md += "\n## Height trend of T_pref\n\n";
    try {
      if (points.size() >= 3) {
        const auto trend = group_slope_trend(points);
        md += "```\n" + trend_text(trend.fit) + "```\n\n| Model | Slope |\n|---|---:|\n";
        for (const auto& [name, slope] : trend.group_slopes) md += "| " + name + " | " + fmt("%.6f", slope) + " |\n";
        out << "height trend (two-stage over " << points.size() << " models):\n" << trend_text(trend.fit);
      } else {
        for (const auto& [name, pts] : points) {
          const auto fit = ols_trend(pts);
          md += "### " + name + "\n\n```\n" + trend_text(fit) + "```\n";
          out << "height trend (" << name << "):\n" << trend_text(fit);
        }
        if (points.empty()) throw UsageError("no height group has a defined T_pref");
      }
    } catch (const UsageError& e) {
      md += "trend unavailable: " + std::string(e.what()) + "\n";
      out << "trend unavailable: " << e.what() << "\n";
      status = kFailure;
    }
  }

  const fs::path root(a.out);
  if (!a.annotations.empty()) {
    const auto annotations = annotations_from_string(read_file(a.annotations), all);
    const auto comparisons = behavior_compare(annotations);
    std::string bcsv = "behavior,proportion_correct,proportion_incorrect,z,p_value\n";
    md += "\n## Cognitive behaviors\n\n| Behavior | Correct | Incorrect | z | p |\n|---|---:|---:|---:|---:|\n";
    for (const auto& c : comparisons) {
      const std::string name(to_string(c.behavior));
      bcsv += name + "," + fmt("%.6f", c.proportion_correct) + "," + fmt("%.6f", c.proportion_incorrect) + "," +
              fmt("%.6f", c.z) + "," + fmt("%.6g", c.p_value) + "\n";
      md += "| " + name + " | " + fmt("%.3f", c.proportion_correct) + " | " + fmt("%.3f", c.proportion_incorrect) +
            " | " + fmt("%.3f", c.z) + " | " + fmt("%.4g", c.p_value) + " |\n";
    }
    write_file_atomic(root / "behaviors.csv", bcsv);
  }

  write_file_atomic(root / "report.csv", csv);
  write_file_atomic(root / "report.md", md);
  out << "wrote " << (root / "report.csv").string() << " and " << (root / "report.md").string() << "\n";
  return status;
}

// ---------------------------------------------------------------- duplicate

int cmd_duplicate(const std::string& in, int factor, const std::string& out_path, std::ostream& out) {
  if (factor != 2 && factor != 3) throw UsageError("--factor must be 2 or 3");
  const Manifest source = read_manifest(in);
  Manifest result;
  result.header.generator = generator_version();
  result.header.spec = source.header.spec;
  result.header.duplication_factor = factor;
  std::size_t skipped = 0;
  for (const auto& r : source.records) {
    if (!is_duplicable(r.scene)) {
      ++skipped;
      continue;
    }
    result.records.push_back(duplicate_record(r, factor));
  }
  std::sort(result.records.begin(), result.records.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  write_manifest(out_path, result);
  out << "duplicated " << result.records.size() << " records (factor " << factor << "), skipped " << skipped
      << " ineligible\n";
  return kSuccess;
}

// ---------------------------------------------------------------- render

int cmd_render(const std::string& in, const std::string& out_root, const std::string& format_name,
               const std::string& canvas, unsigned jobs, std::ostream& out) {
  const auto format = parse_image_format(format_name);
  ViewSpec view;
  std::tie(view.width, view.height) = parse_canvas(canvas);
  Manifest manifest = read_manifest(in);
  const fs::path root(out_root);
  render_records(manifest, root, format, view, jobs);
  write_manifest(root / "manifest.jsonl", manifest);
  out << "rendered " << manifest.records.size() << " records into " << (root / "images").string() << "\n";
  return kSuccess;
}

int dispatch(std::ostream& out, std::ostream& err, const std::function<int()>& action) {
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kFailure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const InfeasibleCell& e) {
    err << "infeasible: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out.flush();
    return kFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static-stability benchmark toolkit for stacked-block towers", "stacklab"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value config file");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a labeled tower dataset");
  generate->add_option("--dim", gen.dim, "Scene dimension (2 or 3)")->capture_default_str();
  generate->add_option("--heights", gen.heights, "Tower heights, comma-separated")->delimiter(',')->required();
  generate->add_option("--count", gen.count, "Samples per (height, label, difficulty) cell")->required();
  gen.seed_flag = generate->add_option("--seed", gen.seed, "Base seed (fallback: STACKLAB_SEED, then 0)");
  generate->add_option("--split-ratio", gen.split_ratio, "Fraction assigned to train")->capture_default_str();
  generate->add_option("--size-min", gen.size_min, "Lower extent bound: one value or width,depth,height")
      ->delimiter(',');
  generate->add_option("--size-max", gen.size_max, "Upper extent bound: one value or width,depth,height")
      ->delimiter(',');
  generate->add_option("--family", gen.family, "Body shapes: cuboid or cube")->capture_default_str();
  generate->add_option("--difficulties", gen.difficulties, "Difficulty cells to fill")->delimiter(',');
  generate->add_option("--budget", gen.budget, "Rejection-sampling draws per sample")->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_flag("--render", gen.render, "Render images for every sample");
  generate->add_option("--format", gen.format, "Image format: svg or ppm")->capture_default_str();
  generate->add_option("--canvas", gen.canvas, "Canvas size WIDTHxHEIGHT")->capture_default_str();
  generate->add_option("--jobs", gen.jobs, "Worker threads (0 = all cores)")->capture_default_str();

  std::string validate_in;
  auto* validate = app.add_subcommand("validate", "Re-check every record of a manifest");
  validate->add_option("--in,manifest", validate_in, "Manifest file")->required();

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Parse and score model responses against a manifest");
  score->add_option("--manifest", score_args.manifest, "Manifest file")->required();
  score->add_option("--responses", score_args.responses, "Responses file ({\"id\",\"response\"} lines)")->required();
  score->add_option("--out", score_args.out, "Prediction-set output file")->required();
  score->add_option("--model", score_args.model, "Model name tagged onto every prediction");
  score->add_option("--weights", score_args.weights, "Format and answer reward weights")->delimiter(',');

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Bias tables, trends and behavior comparisons");
  analyze->add_option("--predictions", analyze_args.predictions, "Prediction-set file(s)")->required();
  analyze->add_option("--group-by", analyze_args.group_by, "Group keys: height, difficulty, split, model, all")
      ->delimiter(',');
  analyze->add_option("--trend", analyze_args.trend, "Fit a T_pref trend over this key (height)");
  analyze->add_option("--annotations", analyze_args.annotations, "Cognitive-behavior annotations file");
  analyze->add_option("--out", analyze_args.out, "Report directory")->required();

  std::string dup_in, dup_out;
  int dup_factor = 2;
  auto* duplicate = app.add_subcommand("duplicate", "Duplicate-and-translate two-cube towers");
  duplicate->add_option("--in", dup_in, "Source manifest")->required();
  duplicate->add_option("--factor", dup_factor, "Cubes per column (2 or 3)")->capture_default_str();
  duplicate->add_option("--out", dup_out, "Output manifest file")->required();

  std::string render_in, render_out, render_format = "svg", render_canvas = "512x512";
  unsigned render_jobs = 0;
  auto* render = app.add_subcommand("render", "Render images for an existing manifest");
  render->add_option("--in", render_in, "Source manifest")->required();
  render->add_option("--out", render_out, "Output directory (manifest.jsonl and images/)")->required();
  render->add_option("--format", render_format, "Image format: svg or ppm")->capture_default_str();
  render->add_option("--canvas", render_canvas, "Canvas size WIDTHxHEIGHT")->capture_default_str();
  render->add_option("--jobs", render_jobs, "Worker threads (0 = all cores)")->capture_default_str();

  std::vector<std::string> argv_storage{"stacklab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  if (generate->parsed()) return dispatch(out, err, [&] { return cmd_generate(gen, out); });
  if (validate->parsed()) return dispatch(out, err, [&] { return cmd_validate(validate_in, out); });
  if (score->parsed()) return dispatch(out, err, [&] { return cmd_score(score_args, out); });
  if (analyze->parsed()) return dispatch(out, err, [&] { return cmd_analyze(analyze_args, out); });
  if (duplicate->parsed()) {
    return dispatch(out, err, [&] { return cmd_duplicate(dup_in, dup_factor, dup_out, out); });
  }
  if (render->parsed()) {
    return dispatch(out, err,
                    [&] { return cmd_render(render_in, render_out, render_format, render_canvas, render_jobs, out); });
  }
  err << "usage error: no subcommand\n";
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace stacklab::cli
