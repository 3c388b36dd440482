#include "stacklab/biasstats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "stacklab/errors.hpp"
#include "stacklab/io.hpp"
#include "stacklab/manifest.hpp"

namespace stacklab {

namespace {

std::optional<double> ratio(long num, long den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<long> as_integer(const std::string& s) {
  long value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

// Two-sided tail probability P(|T| >= |t|) for T ~ t(dof).
double two_sided_p(double t, double dof) {
  if (std::isinf(t)) return 0.0;
  return boost::math::ibeta(dof / 2, 0.5, dof / (dof + t * t));
}

bool negligible(double value, double scale) { return std::abs(value) <= 1e-12 * std::max(1.0, std::abs(scale)); }

struct LineFit {
  double slope;
  double intercept;
};

// Closed-form simple regression on centered sums.
LineFit simple_fit(const std::vector<std::pair<double, double>>& points) {
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

std::optional<double> ConfusionMatrix::recall() const { return ratio(tp, tp + fn); }
std::optional<double> ConfusionMatrix::specificity() const { return ratio(tn, tn + fp); }
std::optional<double> ConfusionMatrix::accuracy() const { return ratio(tp + tn, total()); }

ConfusionSummary confusion(const std::vector<const PredictionEntry*>& entries) {
  ConfusionSummary s;
  s.n = entries.size();
  for (const auto* e : entries) {
    if (e->pred == Answer::Invalid) {
      ++s.invalid;
      continue;
    }
    const bool gold_true = e->gold == Answer::True;
    const bool pred_true = e->pred == Answer::True;
    if (gold_true && pred_true) ++s.cm.tp;
    else if (gold_true) ++s.cm.fn;
    else if (pred_true) ++s.cm.fp;
    else ++s.cm.tn;
  }
  s.accuracy = s.cm.accuracy();
  s.invalid_rate = s.n == 0 ? 0.0 : static_cast<double>(s.invalid) / static_cast<double>(s.n);
  return s;
}

ConfusionSummary confusion(const PredictionSet& set) {
  std::vector<const PredictionEntry*> entries;
  entries.reserve(set.entries.size());
  for (const auto& e : set.entries) entries.push_back(&e);
  return confusion(entries);
}

double t_pref(const ConfusionMatrix& cm) {
  const auto recall = cm.recall();
  const auto specificity = cm.specificity();
  if (!recall) throw UndefinedPreference("undefined preference: no samples with gold answer True");
  if (!specificity) throw UndefinedPreference("undefined preference: no samples with gold answer False");
  if (*specificity == 0.0) {
    if (*recall > 0.0) return 1.0;
    throw UndefinedPreference("undefined preference: recall and specificity are both zero");
  }
  return std::tanh((*recall - *specificity) / *specificity);
}

GroupKey parse_group_key(std::string_view text) {
  if (text == "height") return GroupKey::Height;
  if (text == "difficulty") return GroupKey::Difficulty;
  if (text == "split") return GroupKey::Split;
  if (text == "model") return GroupKey::Model;
  if (text == "all") return GroupKey::All;
  throw UsageError("unknown group key '" + std::string(text) + "' (expected height, difficulty, split, model, all)");
}

std::string_view to_string(GroupKey key) {
  switch (key) {
    case GroupKey::Height: return "height";
    case GroupKey::Difficulty: return "difficulty";
    case GroupKey::Split: return "split";
    case GroupKey::Model: return "model";
    case GroupKey::All: return "all";
  }
  return "all";
}

GroupKeyFn key_function(GroupKey key) {
  switch (key) {
    case GroupKey::Height: return [](const PredictionEntry& e) { return std::to_string(e.height); };
    case GroupKey::Difficulty: return [](const PredictionEntry& e) { return std::string(to_string(e.difficulty)); };
    case GroupKey::Split: return [](const PredictionEntry& e) { return std::string(to_string(e.split)); };
    case GroupKey::Model: return [](const PredictionEntry& e) { return e.model.empty() ? std::string("model") : e.model; };
    case GroupKey::All: return [](const PredictionEntry&) { return std::string("all"); };
  }
  throw UsageError("unknown group key");
}

bool GroupLess::operator()(const std::string& a, const std::string& b) const {
  const auto ia = as_integer(a);
  const auto ib = as_integer(b);
  if (ia && ib) return *ia < *ib;
  if (ia != ib && (ia || ib)) return ia.has_value();
  return a < b;
}

GroupTable grouped_bias(const PredictionSet& set, const GroupKeyFn& key) {
  std::map<std::string, std::vector<const PredictionEntry*>, GroupLess> parts;
  for (const auto& e : set.entries) parts[key(e)].push_back(&e);
  GroupTable table;
  for (const auto& [group, entries] : parts) {
    GroupMetrics metrics;
    metrics.summary = confusion(entries);
    try {
      metrics.t_pref = t_pref(metrics.summary.cm);
    } catch (const UndefinedPreference& e) {
      metrics.note = e.what();
    }
    table.emplace(group, std::move(metrics));
  }
  return table;
}

GroupTable grouped_bias(const PredictionSet& set, GroupKey key) { return grouped_bias(set, key_function(key)); }

double student_t_cdf(double t, double dof) {
  if (!(dof > 0)) throw UsageError("degrees of freedom must be positive");
  if (std::isnan(t)) return t;
  const double tail = 0.5 * two_sided_p(t, dof);
  return t > 0 ? 1.0 - tail : tail;
}

double student_t_critical95(double dof) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), 0.975);
}

TrendFit ols_trend(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  const Eigen::Index n = x.size();
  if (y.size() != n) throw UsageError("ols_trend: x and y lengths differ");
  if (n < 3) throw UsageError("ols_trend: at least 3 points are required");
  if (!x.allFinite() || !y.allFinite()) throw UsageError("ols_trend: non-finite input");
  if ((x.array() == x(0)).all()) throw UsageError("ols_trend: degenerate x (all values equal)");

  TrendFit fit;
  fit.n = static_cast<long>(n);
  fit.method = TrendMethod::Ols;
  if ((y.array() == y(0)).all()) {
    fit.intercept = y(0);
    return fit;
  }

  Eigen::MatrixXd design(n, 2);
  design.col(0).setOnes();
  design.col(1) = x;
  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  fit.intercept = beta(0);
  fit.slope = beta(1);

  const Eigen::VectorXd residual = y - design * beta;
  const double rss = residual.squaredNorm();
  const double dof = static_cast<double>(n - 2);
  if (negligible(std::sqrt(rss / static_cast<double>(n)), y.cwiseAbs().maxCoeff())) {
    fit.p_value = 0.0;
    fit.ci95 = {fit.slope, fit.slope};
    fit.t_stat = std::copysign(std::numeric_limits<double>::infinity(), fit.slope);
    return fit;
  }
  const Eigen::Matrix2d gram = design.transpose() * design;
  fit.std_error = std::sqrt(rss / dof * gram.inverse()(1, 1));
  fit.t_stat = fit.slope / fit.std_error;
  fit.p_value = two_sided_p(fit.t_stat, dof);
  const double half = student_t_critical95(dof) * fit.std_error;
  fit.ci95 = {fit.slope - half, fit.slope + half};
  return fit;
}

TrendFit ols_trend(const std::vector<std::pair<double, double>>& points) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(points.size()));
  Eigen::VectorXd y(x.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = points[i].first;
    y(static_cast<Eigen::Index>(i)) = points[i].second;
  }
  return ols_trend(x, y);
}

GroupTrend group_slope_trend(const std::map<std::string, std::vector<std::pair<double, double>>>& groups) {
  if (groups.size() < 3) throw UsageError("group_slope_trend: at least 3 groups are required");
  GroupTrend out;
  long points = 0;
  for (const auto& [name, pts] : groups) {
    std::set<double> xs;
    for (const auto& p : pts) {
      if (!std::isfinite(p.first) || !std::isfinite(p.second)) {
        throw UsageError("group_slope_trend: non-finite point in group '" + name + "'");
      }
      xs.insert(p.first);
    }
    if (xs.size() < 2) throw UsageError("group_slope_trend: group '" + name + "' needs at least 2 distinct x");
    const auto line = simple_fit(pts);
    out.group_slopes[name] = line.slope;
    out.group_intercepts[name] = line.intercept;
    points += static_cast<long>(pts.size());
  }

  const double g = static_cast<double>(groups.size());
  double mean = 0, mean_intercept = 0;
  for (const auto& [name, s] : out.group_slopes) mean += s;
  for (const auto& [name, c] : out.group_intercepts) mean_intercept += c;
  mean /= g;
  mean_intercept /= g;
  double ss = 0;
  for (const auto& [name, s] : out.group_slopes) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (g - 1));

  TrendFit& fit = out.fit;
  fit.method = TrendMethod::TwoStage;
  fit.n = points;
  fit.slope = mean;
  fit.intercept = mean_intercept;
  if (negligible(sd, mean)) {
    const bool flat = negligible(mean, 0.0);
    fit.p_value = flat ? 1.0 : 0.0;
    fit.ci95 = {mean, mean};
    fit.t_stat = flat ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mean);
    return out;
  }
  const double dof = g - 1;
  fit.std_error = sd / std::sqrt(g);
  fit.t_stat = mean / fit.std_error;
  fit.p_value = two_sided_p(fit.t_stat, dof);
  const double half = student_t_critical95(dof) * fit.std_error;
  fit.ci95 = {mean - half, mean + half};
  return out;
}

std::string_view to_string(Behavior behavior) {
  switch (behavior) {
    case Behavior::Verification: return "Verification";
    case Behavior::Backtracking: return "Backtracking";
    case Behavior::SubgoalSetting: return "Subgoal Setting";
    case Behavior::BackwardChaining: return "Backward Chaining";
  }
  return "";
}

std::string_view json_key(Behavior behavior) {
  switch (behavior) {
    case Behavior::Verification: return "verification";
    case Behavior::Backtracking: return "backtracking";
    case Behavior::SubgoalSetting: return "subgoal_setting";
    case Behavior::BackwardChaining: return "backward_chaining";
  }
  return "";
}

std::array<BehaviorComparison, 4> behavior_compare(const std::vector<BehaviorAnnotation>& annotations) {
  std::array<long, 4> hits_correct{}, hits_incorrect{};
  long n_correct = 0, n_incorrect = 0;
  for (const auto& a : annotations) {
    auto& hits = a.correct ? hits_correct : hits_incorrect;
    (a.correct ? n_correct : n_incorrect)++;
    for (std::size_t b = 0; b < kBehaviors.size(); ++b) hits[b] += a.flags[b] ? 1 : 0;
  }
  if (n_correct == 0 || n_incorrect == 0) {
    throw UsageError("behavior_compare: need at least one correct and one incorrect annotation");
  }

  std::array<BehaviorComparison, 4> out{};
  const double n1 = static_cast<double>(n_correct);
  const double n2 = static_cast<double>(n_incorrect);
  for (std::size_t b = 0; b < kBehaviors.size(); ++b) {
    auto& c = out[b];
    c.behavior = kBehaviors[b];
    c.proportion_correct = static_cast<double>(hits_correct[b]) / n1;
    c.proportion_incorrect = static_cast<double>(hits_incorrect[b]) / n2;
    const double pooled = static_cast<double>(hits_correct[b] + hits_incorrect[b]) / (n1 + n2);
    const double se = std::sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2));
    if (se == 0.0) continue;  // both proportions are 0 or both are 1
    c.z = (c.proportion_correct - c.proportion_incorrect) / se;
    c.p_value = std::erfc(std::abs(c.z) / std::sqrt(2.0));
  }
  return out;
}

std::vector<BehaviorAnnotation> annotations_from_string(std::string_view text, const PredictionSet& predictions) {
  std::map<std::string, const PredictionEntry*> by_id;
  for (const auto& e : predictions.entries) by_id.emplace(e.sample_id, &e);

  std::vector<BehaviorAnnotation> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(lines[i]);
      BehaviorAnnotation a;
      a.sample_id = j.at("id").get<std::string>();
      const auto it = by_id.find(a.sample_id);
      if (it == by_id.end()) throw UsageError("annotation id '" + a.sample_id + "' is not in the prediction set");
      a.correct = j.contains("correct") ? j.at("correct").get<bool>()
                                        : (it->second->pred != Answer::Invalid && it->second->pred == it->second->gold);
      for (std::size_t b = 0; b < kBehaviors.size(); ++b) {
        a.flags[b] = j.value(std::string(json_key(kBehaviors[b])), false);
      }
      out.push_back(std::move(a));
    } catch (const Json::exception& e) {
      throw ParseError(i + 1, e.what());
    } catch (const UsageError& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return out;
}

}  // namespace stacklab
