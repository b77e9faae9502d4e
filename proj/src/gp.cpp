#include "splitedge/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "splitedge/errors.hpp"

namespace splitedge {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873;

Eigen::MatrixXd gram_matrix(const std::vector<NormalizedInput>& inputs,
                            const GpHyperparams& hyper) {
  const Eigen::Index n = static_cast<Eigen::Index>(inputs.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = matern52(inputs[i], inputs[j], hyper);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }
  return gram;
}

struct Factorization {
  Eigen::MatrixXd chol_lower;
  Eigen::VectorXd alpha;
  double log_marginal;
  double jitter_used;
};

/// Cholesky of (K + jitter*I), escalating jitter x10 up to jitter_max.
std::optional<Factorization> factorize(const std::vector<NormalizedInput>& inputs,
                                       const Eigen::VectorXd& targets,
                                       const GpHyperparams& hyper, double jitter_start,
                                       double jitter_max) {
  const Eigen::Index n = static_cast<Eigen::Index>(inputs.size());
  const Eigen::MatrixXd gram = gram_matrix(inputs, hyper);
  for (double jitter = jitter_start; jitter <= jitter_max * (1.0 + 1e-12); jitter *= 10.0) {
    Eigen::MatrixXd regularized = gram;
    regularized.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(regularized);
    if (llt.info() != Eigen::Success) continue;

    Factorization result;
    result.chol_lower = llt.matrixL();
    result.alpha = llt.solve(targets);
    const double log_det = 2.0 * result.chol_lower.diagonal().array().log().sum();
    result.log_marginal = -0.5 * targets.dot(result.alpha) - 0.5 * log_det -
                          0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    result.jitter_used = jitter;
    return result;
  }
  return std::nullopt;
}

/// Exact-duplicate inputs collapse to the most recent observation.
GpDataset deduplicate(const GpDataset& dataset) {
  GpDataset merged;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    bool replaced = false;
    for (std::size_t j = 0; j < merged.size(); ++j) {
      if (merged.inputs[j].p == dataset.inputs[i].p && merged.inputs[j].l == dataset.inputs[i].l) {
        merged.targets[j] = dataset.targets[i];
        replaced = true;
        break;
      }
    }
    if (!replaced) merged.add(dataset.inputs[i], dataset.targets[i]);
  }
  return merged;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> values(static_cast<std::size_t>(n));
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
    values[static_cast<std::size_t>(i)] = std::exp(log_lo + t * (log_hi - log_lo));
  }
  return values;
}

/// Golden-section maximization over [lo, hi]; deterministic fixed-step.
double golden_max(double lo, double hi, int steps, const std::function<double(double)>& f) {
  constexpr double inv_phi = 0.61803398874989484820;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < steps; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

double matern52(const NormalizedInput& x, const NormalizedInput& y, const GpHyperparams& hyper) {
  const double r = std::sqrt(squared_distance(x, y));
  const double s = kSqrt5 * r / hyper.lengthscale;
  return hyper.signal_var * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Eigen::Vector2d matern52_grad(const NormalizedInput& x, const NormalizedInput& y,
                              const GpHyperparams& hyper) {
  // dk/dr = -sigma^2 * (5 r / (3 l^2)) * (1 + sqrt5 r / l) * exp(-sqrt5 r / l),
  // and grad_x r = (x - y)/r, so the 1/r cancels and the gradient is smooth
  // through r = 0.
  const double r = std::sqrt(squared_distance(x, y));
  const double ell = hyper.lengthscale;
  const double s = kSqrt5 * r / ell;
  const double scale = -hyper.signal_var * (5.0 / (3.0 * ell * ell)) * (1.0 + s) * std::exp(-s);
  return scale * (x.vec() - y.vec());
}

double log_marginal_likelihood(const GpDataset& dataset, const GpHyperparams& hyper) {
  Eigen::VectorXd targets =
      Eigen::Map<const Eigen::VectorXd>(dataset.targets.data(),
                                        static_cast<Eigen::Index>(dataset.targets.size()));
  const auto factor = factorize(dataset.inputs, targets, hyper, hyper.jitter, hyper.jitter);
  return factor ? factor->log_marginal : -std::numeric_limits<double>::infinity();
}

GpModel fit(const GpDataset& dataset, const GpFitOptions& options) {
  if (dataset.size() == 0) throw std::invalid_argument("gp fit: empty dataset");
  const GpDataset data = deduplicate(dataset);
  const Eigen::VectorXd targets =
      Eigen::Map<const Eigen::VectorXd>(data.targets.data(),
                                        static_cast<Eigen::Index>(data.targets.size()));
  if (!targets.allFinite()) throw std::invalid_argument("gp fit: non-finite target");

  const auto score = [&](double lengthscale, double signal_var) {
    GpHyperparams hyper{lengthscale, signal_var, options.jitter};
    const auto factor = factorize(data.inputs, targets, hyper, options.jitter, options.jitter_max);
    return factor ? factor->log_marginal : -std::numeric_limits<double>::infinity();
  };

  double best_ell = 0.0, best_var = 0.0;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (double ell : log_grid(options.lengthscale_min, options.lengthscale_max, options.grid_points)) {
    for (double var : log_grid(options.signal_var_min, options.signal_var_max, options.grid_points)) {
      const double lml = score(ell, var);
      if (lml > best_lml) {
        best_lml = lml;
        best_ell = ell;
        best_var = var;
      }
    }
  }
  if (!std::isfinite(best_lml)) {
    throw SingularGramError("gp fit: no hyperparameter candidate factorized");
  }

  // Coordinate refinement in log space, one grid cell wide around the best.
  const double ell_cell = std::log(options.lengthscale_max / options.lengthscale_min) /
                          std::max(1, options.grid_points - 1);
  const double var_cell = std::log(options.signal_var_max / options.signal_var_min) /
                          std::max(1, options.grid_points - 1);
  for (int pass = 0; pass < options.refine_passes; ++pass) {
    best_ell = std::exp(golden_max(
        std::max(std::log(options.lengthscale_min), std::log(best_ell) - ell_cell),
        std::min(std::log(options.lengthscale_max), std::log(best_ell) + ell_cell),
        options.refine_steps, [&](double le) { return score(std::exp(le), best_var); }));
    best_var = std::exp(golden_max(
        std::max(std::log(options.signal_var_min), std::log(best_var) - var_cell),
        std::min(std::log(options.signal_var_max), std::log(best_var) + var_cell),
        options.refine_steps, [&](double lv) { return score(best_ell, std::exp(lv)); }));
  }

  GpHyperparams hyper{best_ell, best_var, options.jitter};
  auto factor = factorize(data.inputs, targets, hyper, options.jitter, options.jitter_max);
  if (!factor) throw SingularGramError("gp fit: refined hyperparameters failed to factorize");

  GpModel model;
  model.inputs = data.inputs;
  model.targets = targets;
  hyper.jitter = factor->jitter_used;
  model.hyper = hyper;
  model.chol_lower = std::move(factor->chol_lower);
  model.alpha = std::move(factor->alpha);
  model.log_marginal = factor->log_marginal;
  return model;
}

std::pair<double, double> posterior(const GpModel& model, const NormalizedInput& x) {
  const Eigen::Index n = static_cast<Eigen::Index>(model.size());
  Eigen::VectorXd k_vec(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k_vec[i] = matern52(x, model.inputs[static_cast<std::size_t>(i)], model.hyper);
  }
  const double mean = k_vec.dot(model.alpha);
  const Eigen::VectorXd v =
      model.chol_lower.triangularView<Eigen::Lower>().solve(k_vec);
  const double variance = model.hyper.signal_var - v.squaredNorm();
  return {mean, std::max(0.0, variance)};
}

Eigen::Vector2d posterior_mean_grad(const GpModel& model, const NormalizedInput& x) {
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < model.size(); ++i) {
    grad += model.alpha[static_cast<Eigen::Index>(i)] * matern52_grad(x, model.inputs[i], model.hyper);
  }
  return grad;
}

}  // namespace splitedge
