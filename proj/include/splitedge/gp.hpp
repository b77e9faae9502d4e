#ifndef SPLITEDGE_GP_HPP
#define SPLITEDGE_GP_HPP

#include <Eigen/Core>
#include <vector>

namespace splitedge {

/// Point in the normalized decision square: p = power, l = relaxed layer,
/// both in [0,1].
struct NormalizedInput {
  double p = 0.0;
  double l = 0.0;

  Eigen::Vector2d vec() const { return {p, l}; }
};

inline double squared_distance(const NormalizedInput& a, const NormalizedInput& b) {
  const double dp = a.p - b.p;
  const double dl = a.l - b.l;
  return dp * dp + dl * dl;
}

/// Isotropic Matern 5/2 hyperparameters (no ARD) plus the diagonal nugget.
struct GpHyperparams {
  double lengthscale = 0.5;
  double signal_var = 1.0;
  double jitter = 1e-8;
};

struct GpDataset {
  std::vector<NormalizedInput> inputs;
  std::vector<double> targets;

  void add(const NormalizedInput& x, double y) {
    inputs.push_back(x);
    targets.push_back(y);
  }
  std::size_t size() const { return inputs.size(); }
};

/// Fitted zero-mean GP: Cholesky factor of (K + jitter*I) and the
/// precomputed solve against the raw targets.
struct GpModel {
  std::vector<NormalizedInput> inputs;
  Eigen::VectorXd targets;
  GpHyperparams hyper;
  Eigen::MatrixXd chol_lower;
  Eigen::VectorXd alpha;
  double log_marginal = 0.0;

  std::size_t size() const { return inputs.size(); }
};

struct GpFitOptions {
  double lengthscale_min = 0.05;
  double lengthscale_max = 2.0;
  double signal_var_min = 0.01;
  double signal_var_max = 4.0;
  int grid_points = 20;
  int refine_passes = 2;
  int refine_steps = 10;
  double jitter = 1e-8;
  double jitter_max = 1e-4;
};

double matern52(const NormalizedInput& x, const NormalizedInput& y, const GpHyperparams& hyper);

/// d/dx of matern52(x, y); zero at x == y.
Eigen::Vector2d matern52_grad(const NormalizedInput& x, const NormalizedInput& y,
                              const GpHyperparams& hyper);

/// Log marginal likelihood of the dataset under fixed hyperparameters.
/// Returns -inf when the Gram matrix fails to factorize.
double log_marginal_likelihood(const GpDataset& dataset, const GpHyperparams& hyper);

/// Maximizes the marginal likelihood over a log-spaced (lengthscale,
/// signal variance) grid, then refines each coordinate by golden-section
/// passes. Exact duplicate inputs are merged first (latest target wins).
/// Deterministic for a given dataset. Throws SingularGramError if no
/// jitter level in [options.jitter, options.jitter_max] factorizes.
GpModel fit(const GpDataset& dataset, const GpFitOptions& options = {});

/// Posterior (mean, variance) at a query point; variance clamped at 0.
std::pair<double, double> posterior(const GpModel& model, const NormalizedInput& x);

/// Analytic gradient of the posterior mean.
Eigen::Vector2d posterior_mean_grad(const GpModel& model, const NormalizedInput& x);

}  // namespace splitedge

#endif
