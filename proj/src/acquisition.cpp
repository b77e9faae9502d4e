#include "splitedge/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace splitedge {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double std_dev, double best_feasible, EiForm form) {
  const double delta = mean - best_feasible;
  if (form == EiForm::mean_hinge || std_dev <= 0.0) return std::max(0.0, delta);
  const double z = delta / std_dev;
  return delta * normal_cdf(z) + std_dev * normal_pdf(z);
}

double upper_confidence_bound(double mean, double std_dev, double beta) {
  return mean + beta * std_dev;
}

double constraint_penalty(const CostBreakdown& cost, const Budget& budget) {
  const double energy_excess = std::max(0.0, cost.total_energy_j() - budget.e_max_j);
  const double delay_excess = std::max(0.0, cost.total_delay_s() - budget.tau_max_s);
  return energy_excess + delay_excess;
}

ScheduledWeights schedule_weights(const AcquisitionWeights& weights, int iteration, int total,
                                  int n_init) {
  const double raw = total > 1 ? static_cast<double>(iteration - n_init) / (total - 1) : 1.0;
  const double t = std::clamp(raw, 0.0, 1.0);
  ScheduledWeights sched;
  sched.base = weights.base_start * std::pow(weights.base_end / weights.base_start, t);
  sched.grad = weights.grad_start * std::pow(weights.grad_end / weights.grad_start, t);
  return sched;
}

double hybrid_score(const NormalizedInput& x, const GpModel& model, const ScheduledWeights& sched,
                    const AcquisitionWeights& weights, double best_feasible, double penalty_value,
                    EiForm form) {
  const auto [mean, variance] = posterior(model, x);
  const double std_dev = std::sqrt(variance);
  const double ei = expected_improvement(mean, std_dev, best_feasible, form);
  const double ucb = upper_confidence_bound(mean, std_dev, weights.ucb_beta);
  const double grad_norm = posterior_mean_grad(model, x).norm();
  return sched.base * (ei + ucb) - sched.grad * grad_norm - weights.penalty * penalty_value;
}

namespace {

struct Candidate {
  NormalizedInput x;
  double score = -std::numeric_limits<double>::infinity();
  double penalty = std::numeric_limits<double>::infinity();
  int layer = 0;

  /// Score descending, then penalty / layer / power ascending.
  bool beats(const Candidate& other) const {
    if (score != other.score) return score > other.score;
    if (penalty != other.penalty) return penalty < other.penalty;
    if (layer != other.layer) return layer < other.layer;
    return x.p < other.x.p;
  }
};

}  // namespace

NormalizedInput maximize_acquisition(const GpModel& model, const ScheduledWeights& sched,
                                     const AcquisitionConfig& config, const DecisionSpace& space,
                                     const Budget& budget, const CostFn& cost_fn,
                                     double best_feasible) {
  const int n_power = std::max(1, config.power_grid_points);

  const auto assess = [&](const NormalizedInput& x) {
    Candidate candidate;
    candidate.x = x;
    const SplitConfig configuration = space.denormalize(x);
    candidate.layer = configuration.layer;
    candidate.penalty = constraint_penalty(cost_fn(configuration), budget);
    candidate.score = hybrid_score(x, model, sched, config.weights, best_feasible,
                                   candidate.penalty, config.ei_form);
    return candidate;
  };

  Candidate best;
  for (int li = 0; li < space.layers; ++li) {
    const double l_norm = space.layers == 1 ? 0.0 : static_cast<double>(li) / (space.layers - 1);
    for (int pi = 0; pi < n_power; ++pi) {
      const double p_norm = n_power == 1 ? 0.5 : static_cast<double>(pi) / (n_power - 1);
      const Candidate candidate = assess({p_norm, l_norm});
      if (candidate.beats(best)) best = candidate;
    }
  }

  // Refine power within one grid step of the winner, layer held fixed.
  if (config.power_refine_steps > 0 && n_power > 1) {
    constexpr double inv_phi = 0.61803398874989484820;
    const double step = 1.0 / (n_power - 1);
    double lo = std::max(0.0, best.x.p - step);
    double hi = std::min(1.0, best.x.p + step);
    Candidate c = assess({lo + (1.0 - inv_phi) * (hi - lo), best.x.l});
    Candidate d = assess({lo + inv_phi * (hi - lo), best.x.l});
    for (int i = 0; i < config.power_refine_steps; ++i) {
      if (c.beats(d)) {
        hi = d.x.p;
        d = c;
        c = assess({lo + (1.0 - inv_phi) * (hi - lo), best.x.l});
      } else {
        lo = c.x.p;
        c = d;
        d = assess({lo + inv_phi * (hi - lo), best.x.l});
      }
    }
    const Candidate& refined = c.beats(d) ? c : d;
    if (refined.beats(best)) best = refined;
  }

  return best.x;
}

}  // namespace splitedge
