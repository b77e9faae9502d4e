#include "splitedge/regret.hpp"

#include <cmath>
#include <limits>

namespace splitedge {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

RegretCurve compute_regret(const RunRecord& record, double optimum_utility, int n_init) {
  RegretCurve curve;
  curve.fit_start = n_init + 1;

  double running_best = -std::numeric_limits<double>::infinity();
  bool any_feasible = false;
  double cumulative = 0.0;
  std::vector<double> log_t, log_regret;

  for (std::size_t i = 0; i < record.iterations.size(); ++i) {
    const IterationLog& log = record.iterations[i];
    if (log.feasible) {
      any_feasible = true;
      running_best = std::max(running_best, log.utility);
    }
    const double simple =
        any_feasible ? std::max(0.0, optimum_utility - running_best) : optimum_utility;
    cumulative += optimum_utility - log.utility;

    const double iteration = static_cast<double>(i + 1);
    curve.simple.push_back(simple);
    curve.cumulative.push_back(cumulative);
    curve.mean_cumulative.push_back(cumulative / iteration);

    if (static_cast<int>(iteration) >= curve.fit_start && curve.mean_cumulative.back() > 0.0) {
      log_t.push_back(std::log(iteration));
      log_regret.push_back(std::log(curve.mean_cumulative.back()));
    }
  }

  curve.decay_exponent = least_squares_slope(log_t, log_regret);
  return curve;
}

}  // namespace splitedge
