#ifndef SPLITEDGE_REGRET_HPP
#define SPLITEDGE_REGRET_HPP

#include <vector>

#include "splitedge/optimizer.hpp"

namespace splitedge {

/// Per-iteration regret statistics against the known global optimum.
/// `simple[t]` = optimum - best feasible utility seen through iteration t;
/// `cumulative[t]` = sum of per-step gaps optimum - U(x_i);
/// `mean_cumulative[t]` = cumulative[t]/(t+1). The decay exponent is the
/// log-log least-squares slope of mean cumulative regret versus iteration,
/// fitted after the warmup window.
struct RegretCurve {
  std::vector<double> simple;
  std::vector<double> cumulative;
  std::vector<double> mean_cumulative;
  double decay_exponent = 0.0;
  int fit_start = 0;  // first 1-based iteration included in the fit
};

RegretCurve compute_regret(const RunRecord& record, double optimum_utility, int n_init);

/// Slope of least-squares line y = a + b x; NaN with fewer than two points.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace splitedge

#endif
