#ifndef SPLITEDGE_CMA_ES_HPP
#define SPLITEDGE_CMA_ES_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>

namespace splitedge {

/// (mu/mu_w, lambda) CMA-ES minimizer on the box [0,1]^d with standard
/// Hansen self-adaptation (CSA step-size control, rank-1 + rank-mu
/// covariance updates). Out-of-box samples are clamped; the update uses the
/// repaired points.
struct CmaOptions {
  int population = 10;
  int max_evals = 300;
  int stall_evals = 20;  // 0 disables
  double sigma0 = 0.3;
  std::uint64_t seed = 0;
};

struct CmaResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  int evaluations = 0;
};

CmaResult cma_minimize(const std::function<double(const Eigen::VectorXd&)>& objective, int dim,
                       const CmaOptions& options = {});

}  // namespace splitedge

#endif
