#pragma once

// Bias and trend statistics over prediction sets: confusion matrices, the
// T_pref preference score, grouped bias tables, least-squares trends, a
// two-stage grouped slope estimator, and cognitive-behavior comparisons.

#include <Eigen/Core>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stacklab/evalharness.hpp"

namespace stacklab {

/// Positive class is "True" (stable).
struct ConfusionMatrix {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  long total() const { return tp + fp + tn + fn; }
  std::optional<double> recall() const;
  std::optional<double> specificity() const;
  std::optional<double> accuracy() const;
};

struct ConfusionSummary {
  ConfusionMatrix cm;
  std::optional<double> accuracy;
  std::size_t n = 0;        ///< all entries, valid or not
  std::size_t invalid = 0;
  double invalid_rate = 0;  ///< 0 for an empty set
};

ConfusionSummary confusion(const PredictionSet& set);
ConfusionSummary confusion(const std::vector<const PredictionEntry*>& entries);

/// tanh((Recall - Specificity) / Specificity). Specificity = 0 with
/// Recall > 0 saturates to +1. Throws UndefinedPreference when either rate is
/// undefined or both are zero.
double t_pref(const ConfusionMatrix& cm);

struct GroupMetrics {
  ConfusionSummary summary;
  std::optional<double> t_pref;  ///< absent when undefined for this group
  std::string note;              ///< why t_pref is absent
};

using GroupKeyFn = std::function<std::string(const PredictionEntry&)>;

enum class GroupKey { Height, Difficulty, Split, Model, All };

GroupKey parse_group_key(std::string_view text);  ///< throws UsageError
std::string_view to_string(GroupKey key);
GroupKeyFn key_function(GroupKey key);

/// Ordered group label -> metrics. Labels that are integers sort numerically.
struct GroupLess {
  bool operator()(const std::string& a, const std::string& b) const;
};
using GroupTable = std::map<std::string, GroupMetrics, GroupLess>;

GroupTable grouped_bias(const PredictionSet& set, const GroupKeyFn& key);
GroupTable grouped_bias(const PredictionSet& set, GroupKey key);

enum class TrendMethod { Ols, TwoStage };

struct TrendFit {
  double slope = 0;
  double intercept = 0;
  std::array<double, 2> ci95{0, 0};
  double p_value = 1;
  double std_error = 0;
  double t_stat = 0;
  long n = 0;
  TrendMethod method = TrendMethod::Ols;
};

/// Student-t CDF through the regularized incomplete beta function.
double student_t_cdf(double t, double dof);
/// Two-sided 97.5% quantile for the 95% interval.
double student_t_critical95(double dof);

/// Ordinary least squares of y on x with t-based slope inference
/// (n - 2 degrees of freedom). Requires n >= 3 and non-constant x.
TrendFit ols_trend(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);
TrendFit ols_trend(const std::vector<std::pair<double, double>>& points);

struct GroupTrend {
  TrendFit fit;
  std::map<std::string, double, GroupLess> group_slopes;
  std::map<std::string, double, GroupLess> group_intercepts;
};

/// Per-group OLS slopes, fixed effect = their mean, inference from the t
/// distribution over group slopes. Requires >= 3 groups, each with >= 2
/// distinct x.
GroupTrend group_slope_trend(const std::map<std::string, std::vector<std::pair<double, double>>>& groups);

enum class Behavior { Verification, Backtracking, SubgoalSetting, BackwardChaining };
inline constexpr std::array<Behavior, 4> kBehaviors{Behavior::Verification, Behavior::Backtracking,
                                                    Behavior::SubgoalSetting, Behavior::BackwardChaining};
std::string_view to_string(Behavior behavior);
std::string_view json_key(Behavior behavior);

struct BehaviorAnnotation {
  std::string sample_id;
  bool correct = false;
  std::array<bool, 4> flags{};  ///< indexed like kBehaviors
};

struct BehaviorComparison {
  Behavior behavior;
  double proportion_correct = 0;
  double proportion_incorrect = 0;
  double z = 0;
  double p_value = 1;
};

/// Pooled two-proportion z-test per behavior, correct vs incorrect responses.
std::array<BehaviorComparison, 4> behavior_compare(const std::vector<BehaviorAnnotation>& annotations);

/// Reads {"id", "correct"?, "verification", "backtracking", "subgoal_setting",
/// "backward_chaining"} lines. A missing "correct" is filled from `predictions`
/// (pred == gold); every id must join to `predictions`.
std::vector<BehaviorAnnotation> annotations_from_string(std::string_view text, const PredictionSet& predictions);

}  // namespace stacklab
