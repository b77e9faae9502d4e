#ifndef SPLITEDGE_UTILITY_ORACLE_HPP
#define SPLITEDGE_UTILITY_ORACLE_HPP

#include <Eigen/Core>
#include <filesystem>

#include "splitedge/system_model.hpp"

namespace splitedge {

/// Synthetic stand-in for inference accuracy. `base_accuracy[l-1]` is the
/// accuracy when the whole network completes under a split at layer l;
/// deadline overruns skip tail layers and pay `truncation_penalty_per_layer`
/// each, never dropping below `floor`.
struct UtilitySurface {
  Eigen::VectorXd base_accuracy;
  double truncation_penalty_per_layer = 0.002;
  double floor = 0.0;

  int layers() const { return static_cast<int>(base_accuracy.size()); }
};

UtilitySurface make_utility_surface(Eigen::VectorXd base_accuracy,
                                    double truncation_penalty_per_layer, double floor);

/// Counts oracle calls against a hard cap. Every algorithm in this project
/// is charged through the same ledger, so reported evaluation counts are
/// comparable by construction.
struct EvalLedger {
  long count = 0;
  long cap = 0;

  long remaining() const { return cap - count; }
};

/// Black-box utility with deadline-truncation semantics:
///   - within both budgets: base_accuracy[layer]
///   - energy overrun: floor (the device browns out; no partial credit)
///   - delay overrun: skip ceil(overrun_fraction * L) tail layers where
///     overrun_fraction = (tau - tau_max)/tau, then subtract the per-layer
///     penalty and clamp at floor.
/// Charges one call to the ledger; throws BudgetExhaustedError at the cap.
double utility(const SplitConfig& config, const CostBreakdown& cost,
               const UtilitySurface& surface, const Budget& budget, EvalLedger& ledger);

/// Number of tail layers lost to a deadline overrun (0 when on time).
int truncated_layers(const CostBreakdown& cost, const Budget& budget, int total_layers);

/// Reads the `layer_index,base_accuracy` schema.
UtilitySurface load_surface(const std::filesystem::path& path,
                            double truncation_penalty_per_layer, double floor);

void save_surface(const UtilitySurface& surface, const std::filesystem::path& path);

}  // namespace splitedge

#endif
