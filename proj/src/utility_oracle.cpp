#include "splitedge/utility_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "splitedge/csv.hpp"
#include "splitedge/errors.hpp"

namespace splitedge {

UtilitySurface make_utility_surface(Eigen::VectorXd base_accuracy,
                                    double truncation_penalty_per_layer, double floor) {
  if (base_accuracy.size() < 1) throw std::invalid_argument("utility surface: no layers");
  if ((base_accuracy.array() < 0.0).any() || (base_accuracy.array() > 1.0).any()) {
    throw std::invalid_argument("utility surface: accuracies must lie in [0,1]");
  }
  if (floor < 0.0 || floor > base_accuracy.minCoeff()) {
    throw std::invalid_argument("utility surface: floor must not exceed any base accuracy");
  }
  if (truncation_penalty_per_layer < 0.0) {
    throw std::invalid_argument("utility surface: negative truncation penalty");
  }
  UtilitySurface surface;
  surface.base_accuracy = std::move(base_accuracy);
  surface.truncation_penalty_per_layer = truncation_penalty_per_layer;
  surface.floor = floor;
  return surface;
}

int truncated_layers(const CostBreakdown& cost, const Budget& budget, int total_layers) {
  const double tau = cost.total_delay_s();
  if (tau <= budget.tau_max_s) return 0;
  if (std::isinf(tau)) return total_layers;
  const double overrun_fraction = (tau - budget.tau_max_s) / tau;
  const int skipped = static_cast<int>(std::ceil(overrun_fraction * total_layers));
  return std::clamp(skipped, 0, total_layers);
}

double utility(const SplitConfig& config, const CostBreakdown& cost,
               const UtilitySurface& surface, const Budget& budget, EvalLedger& ledger) {
  if (ledger.count >= ledger.cap) {
    throw BudgetExhaustedError("oracle ledger cap reached (" + std::to_string(ledger.cap) + ")");
  }
  ++ledger.count;

  const double base = surface.base_accuracy[config.layer - 1];
  if (cost.total_energy_j() > budget.e_max_j) return surface.floor;
  const int skipped = truncated_layers(cost, budget, surface.layers());
  if (skipped == 0) return base;
  // Every layer skipped means no inference completed at all.
  if (skipped >= surface.layers()) return surface.floor;
  return std::max(surface.floor, base - surface.truncation_penalty_per_layer * skipped);
}

UtilitySurface load_surface(const std::filesystem::path& path,
                            double truncation_penalty_per_layer, double floor) {
  const auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "layer_index" ||
      rows[0][1] != "base_accuracy") {
    throw ParseError("surface " + path.string() + ": expected header 'layer_index,base_accuracy'");
  }
  Eigen::VectorXd base(static_cast<Eigen::Index>(rows.size()) - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::string context = "surface " + path.string() + " row " + std::to_string(i);
    if (rows[i].size() != 2) throw ParseError(context + ": expected 2 fields");
    const long index = csv::to_long(rows[i][0], context);
    if (index != static_cast<long>(i)) throw ParseError(context + ": layer_index must run 1..L");
    base[static_cast<Eigen::Index>(i) - 1] = csv::to_double(rows[i][1], context);
  }
  return make_utility_surface(std::move(base), truncation_penalty_per_layer, floor);
}

void save_surface(const UtilitySurface& surface, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "layer_index,base_accuracy\n";
  for (int l = 1; l <= surface.layers(); ++l) {
    out << l << ',' << csv::format_double(surface.base_accuracy[l - 1]) << '\n';
  }
  csv::write_file(path, out.str());
}

}  // namespace splitedge
