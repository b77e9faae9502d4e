#ifndef SPLITEDGE_DIRECT_HPP
#define SPLITEDGE_DIRECT_HPP

#include <Eigen/Core>
#include <functional>

namespace splitedge {

/// Classical DIRECT (DIviding RECTangles, Jones-Perttunen-Stuckman 1993)
/// minimizer over the unit box [0,1]^d. Potentially optimal rectangles are
/// picked by the lower-convex-hull rule over (size, value); the longest
/// dimensions are trisected, best child first.
struct DirectOptions {
  int max_evals = 100;
  /// Stop after this many consecutive evaluations without improving the
  /// best value (0 disables the stall test).
  int stall_evals = 20;
  /// Jones' epsilon: a hull rectangle must promise at least this relative
  /// improvement over the incumbent.
  double epsilon = 1e-4;
};

struct DirectResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  int evaluations = 0;
};

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

DirectResult direct_minimize(const ObjectiveFn& objective, int dim,
                             const DirectOptions& options = {});

}  // namespace splitedge

#endif
