#include "splitedge/cma_es.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "splitedge/rng.hpp"

namespace splitedge {

CmaResult cma_minimize(const std::function<double(const Eigen::VectorXd&)>& objective, int dim,
                       const CmaOptions& options) {
  const int lambda = std::max(2, options.population);
  const int mu = lambda / 2;
  const double n = dim;

  // Logarithmic recombination weights (Hansen's tutorial defaults).
  Eigen::VectorXd weights(mu);
  for (int i = 0; i < mu; ++i) {
    weights[i] = std::log(mu + 0.5) - std::log(i + 1.0);
  }
  weights /= weights.sum();
  const double mu_eff = 1.0 / weights.squaredNorm();

  const double c_sigma = (mu_eff + 2.0) / (n + mu_eff + 5.0);
  const double d_sigma =
      1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (n + 1.0)) - 1.0) + c_sigma;
  const double c_c = (4.0 + mu_eff / n) / (n + 4.0 + 2.0 * mu_eff / n);
  const double c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + mu_eff);
  const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                              ((n + 2.0) * (n + 2.0) + mu_eff));
  const double chi_n = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  Eigen::VectorXd mean = Eigen::VectorXd::Constant(dim, 0.5);
  double sigma = options.sigma0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd path_sigma = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd path_c = Eigen::VectorXd::Zero(dim);

  Xoshiro256StarStar rng(options.seed);
  CmaResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  result.best_x = mean;
  int since_improvement = 0;
  int generation = 0;

  while (result.evaluations < options.max_evals) {
    // Eigendecomposition for sampling and for the inverse-sqrt step used by
    // the sigma path. Refreshing every generation is cheap at d = 2.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(cov);
    Eigen::VectorXd eigenvalues = eigen.eigenvalues().cwiseMax(1e-20);
    const Eigen::MatrixXd& basis = eigen.eigenvectors();
    const Eigen::VectorXd scales = eigenvalues.cwiseSqrt();
    const Eigen::MatrixXd cov_inv_sqrt =
        basis * scales.cwiseInverse().asDiagonal() * basis.transpose();

    struct Sample {
      Eigen::VectorXd x;
      Eigen::VectorXd step;  // (x - mean)/sigma after boundary repair
      double value;
    };
    std::vector<Sample> samples;
    samples.reserve(lambda);
    bool stopped = false;
    for (int k = 0; k < lambda; ++k) {
      if (result.evaluations >= options.max_evals) {
        stopped = true;
        break;
      }
      Eigen::VectorXd z(dim);
      for (int d = 0; d < dim; ++d) z[d] = rng.gaussian();
      Eigen::VectorXd x = mean + sigma * (basis * (scales.asDiagonal() * z));
      for (int d = 0; d < dim; ++d) x[d] = std::clamp(x[d], 0.0, 1.0);

      Sample sample;
      sample.x = x;
      sample.step = (x - mean) / sigma;
      sample.value = objective(x);
      ++result.evaluations;
      if (sample.value < result.best_value) {
        result.best_value = sample.value;
        result.best_x = x;
        since_improvement = 0;
      } else {
        ++since_improvement;
      }
      samples.push_back(std::move(sample));
      if (options.stall_evals > 0 && since_improvement >= options.stall_evals) {
        stopped = true;
        break;
      }
    }
    if (static_cast<int>(samples.size()) < mu || stopped) break;

    std::vector<int> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return samples[a].value < samples[b].value; });

    Eigen::VectorXd mean_step = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < mu; ++i) mean_step += weights[i] * samples[order[i]].step;
    mean += sigma * mean_step;
    for (int d = 0; d < dim; ++d) mean[d] = std::clamp(mean[d], 0.0, 1.0);

    ++generation;
    path_sigma = (1.0 - c_sigma) * path_sigma +
                 std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * (cov_inv_sqrt * mean_step);
    const double expected_decay =
        std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * generation));
    const bool h_sigma =
        path_sigma.norm() / expected_decay < (1.4 + 2.0 / (n + 1.0)) * chi_n;
    path_c = (1.0 - c_c) * path_c +
             (h_sigma ? std::sqrt(c_c * (2.0 - c_c) * mu_eff) : 0.0) * mean_step;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < mu; ++i) {
      rank_mu += weights[i] * samples[order[i]].step * samples[order[i]].step.transpose();
    }
    const double h_correction = h_sigma ? 0.0 : c_1 * c_c * (2.0 - c_c);
    cov = (1.0 - c_1 - c_mu + h_correction) * cov +
          c_1 * (path_c * path_c.transpose()) + c_mu * rank_mu;

    sigma *= std::exp((c_sigma / d_sigma) * (path_sigma.norm() / chi_n - 1.0));
    sigma = std::clamp(sigma, 1e-12, 1.0);
  }

  return result;
}

}  // namespace splitedge
