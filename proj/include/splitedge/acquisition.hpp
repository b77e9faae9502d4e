#ifndef SPLITEDGE_ACQUISITION_HPP
#define SPLITEDGE_ACQUISITION_HPP

#include <functional>

#include "splitedge/gp.hpp"
#include "splitedge/problem.hpp"
#include "splitedge/system_model.hpp"

namespace splitedge {

/// Weight constants for the hybrid acquisition. A single base weight drives
/// both EI and UCB; base and gradient weights decay exponentially over the
/// run while the penalty weight stays constant.
struct AcquisitionWeights {
  double base_start = 1.0;
  double base_end = 0.1;
  double grad_start = 0.5;
  double grad_end = 0.05;
  double penalty = 10.0;
  double ucb_beta = 2.0;
};

/// Standard EI integrates improvement over the posterior; mean_hinge is the
/// literal hinge max(0, mean - best) with no variance contribution.
enum class EiForm { standard, mean_hinge };

struct ScheduledWeights {
  double base = 1.0;
  double grad = 0.5;
};

/// Standard normal pdf / cdf.
double normal_pdf(double z);
double normal_cdf(double z);

/// Closed-form expected improvement over best_feasible; std = 0 degenerates
/// to the hinge.
double expected_improvement(double mean, double std_dev, double best_feasible,
                            EiForm form = EiForm::standard);

double upper_confidence_bound(double mean, double std_dev, double beta);

/// ReLU(energy excess) + ReLU(delay excess) in raw joules/seconds.
double constraint_penalty(const CostBreakdown& cost, const Budget& budget);

/// Exponential interpolation between start and end weights at normalized
/// progress t = clamp((n - n_init)/(total - 1), 0, 1).
ScheduledWeights schedule_weights(const AcquisitionWeights& weights, int iteration, int total,
                                  int n_init);

/// The hybrid score: sched.base*(EI + UCB) - sched.grad*|grad mu| -
/// weights.penalty * penalty_value. GP terms are evaluated at the continuous
/// x; penalty_value must come from the analytic cost of the denormalized,
/// layer-rounded configuration.
double hybrid_score(const NormalizedInput& x, const GpModel& model, const ScheduledWeights& sched,
                    const AcquisitionWeights& weights, double best_feasible, double penalty_value,
                    EiForm form = EiForm::standard);

struct AcquisitionConfig {
  AcquisitionWeights weights;
  EiForm ei_form = EiForm::standard;
  int power_grid_points = 64;
  int power_refine_steps = 24;
};

/// Evaluates the analytic cost of a (denormalized) candidate configuration.
using CostFn = std::function<CostBreakdown(const SplitConfig&)>;

/// Argmax of the hybrid score over a candidate set of one point per integer
/// layer times a dense power grid, then golden-section refinement in the
/// power coordinate only (the layer is intrinsically discrete). Ties break
/// toward lowest penalty, then lowest layer, then lowest power, making the
/// result deterministic and independent of evaluation order.
NormalizedInput maximize_acquisition(const GpModel& model, const ScheduledWeights& sched,
                                     const AcquisitionConfig& config, const DecisionSpace& space,
                                     const Budget& budget, const CostFn& cost_fn,
                                     double best_feasible);

}  // namespace splitedge

#endif
