#include "splitedge/direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace splitedge {

namespace {

struct Rect {
  Eigen::VectorXd center;
  Eigen::VectorXi levels;  // trisection count per dimension
  double value = 0.0;
  double half_diagonal = 0.0;
  long id = 0;
};

double half_diagonal_of(const Eigen::VectorXi& levels) {
  double sum = 0.0;
  for (Eigen::Index d = 0; d < levels.size(); ++d) {
    const double side = std::pow(3.0, -levels[d]);
    sum += side * side;
  }
  return 0.5 * std::sqrt(sum);
}

}  // namespace

DirectResult direct_minimize(const ObjectiveFn& objective, int dim, const DirectOptions& options) {
  DirectResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  result.best_x = Eigen::VectorXd::Constant(dim, 0.5);

  int since_improvement = 0;
  bool out_of_budget = false;

  const auto evaluate = [&](const Eigen::VectorXd& x) {
    const double value = objective(x);
    ++result.evaluations;
    if (value < result.best_value) {
      result.best_value = value;
      result.best_x = x;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (result.evaluations >= options.max_evals) out_of_budget = true;
    return value;
  };

  const auto stalled = [&] {
    return options.stall_evals > 0 && since_improvement >= options.stall_evals;
  };

  std::vector<Rect> rects;
  long next_id = 0;
  {
    Rect root;
    root.center = Eigen::VectorXd::Constant(dim, 0.5);
    root.levels = Eigen::VectorXi::Zero(dim);
    root.value = evaluate(root.center);
    root.half_diagonal = half_diagonal_of(root.levels);
    root.id = next_id++;
    rects.push_back(std::move(root));
  }

  while (!out_of_budget && !stalled()) {
    // Best rectangle in each size class; older rectangle wins ties.
    std::map<double, std::size_t> class_best;
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const auto [it, inserted] = class_best.try_emplace(rects[i].half_diagonal, i);
      if (!inserted) {
        const Rect& incumbent = rects[it->second];
        if (rects[i].value < incumbent.value ||
            (rects[i].value == incumbent.value && rects[i].id < incumbent.id)) {
          it->second = i;
        }
      }
    }

    // Lower convex hull over (size, value), sizes ascending.
    std::vector<std::size_t> hull;
    for (const auto& [size, index] : class_best) {
      while (hull.size() >= 2) {
        const Rect& a = rects[hull[hull.size() - 2]];
        const Rect& b = rects[hull[hull.size() - 1]];
        const Rect& c = rects[index];
        const double cross = (b.half_diagonal - a.half_diagonal) * (c.value - a.value) -
                             (c.half_diagonal - a.half_diagonal) * (b.value - a.value);
        if (cross <= 0.0) {
          hull.pop_back();
        } else {
          break;
        }
      }
      hull.push_back(index);
    }

    // Jones' epsilon test: each hull rectangle (except the largest, which
    // anchors global search) must be able to improve on the incumbent.
    std::vector<std::size_t> selected;
    const double threshold = result.best_value - options.epsilon * std::abs(result.best_value);
    for (std::size_t h = 0; h < hull.size(); ++h) {
      const Rect& r = rects[hull[h]];
      if (h + 1 == hull.size()) {
        selected.push_back(hull[h]);
        continue;
      }
      const Rect& right = rects[hull[h + 1]];
      const double slope = (right.value - r.value) / (right.half_diagonal - r.half_diagonal);
      if (r.value - slope * r.half_diagonal <= threshold) selected.push_back(hull[h]);
    }

    for (std::size_t index : selected) {
      if (out_of_budget || stalled()) break;

      // Copy: dividing mutates `rects` and would invalidate a reference.
      Rect parent = rects[index];
      const int min_level = parent.levels.minCoeff();
      const double delta = std::pow(3.0, -(min_level + 1));

      struct Probe {
        int dim;
        double lower_value;
        double upper_value;
        double best() const { return std::min(lower_value, upper_value); }
      };
      std::vector<Probe> probes;
      for (int d = 0; d < dim && !out_of_budget; ++d) {
        if (parent.levels[d] != min_level) continue;
        Eigen::VectorXd lower = parent.center;
        Eigen::VectorXd upper = parent.center;
        lower[d] -= delta;
        upper[d] += delta;
        Probe probe{d, 0.0, 0.0};
        probe.lower_value = evaluate(lower);
        if (out_of_budget) break;
        probe.upper_value = evaluate(upper);
        probes.push_back(probe);
      }
      if (probes.empty()) continue;

      std::stable_sort(probes.begin(), probes.end(),
                       [](const Probe& a, const Probe& b) { return a.best() < b.best(); });

      // Trisect along the most promising dimension first; the center child
      // is then re-split along the remaining long dimensions.
      for (const Probe& probe : probes) {
        rects[index].levels[probe.dim] += 1;
        rects[index].half_diagonal = half_diagonal_of(rects[index].levels);

        Rect lower_child = rects[index];
        lower_child.center[probe.dim] -= delta;
        lower_child.value = probe.lower_value;
        lower_child.id = next_id++;

        Rect upper_child = rects[index];
        upper_child.center[probe.dim] += delta;
        upper_child.value = probe.upper_value;
        upper_child.id = next_id++;

        rects.push_back(std::move(lower_child));
        rects.push_back(std::move(upper_child));
      }
    }
  }

  return result;
}

}  // namespace splitedge
