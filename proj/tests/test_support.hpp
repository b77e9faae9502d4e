#ifndef SPLITEDGE_TEST_SUPPORT_HPP
#define SPLITEDGE_TEST_SUPPORT_HPP

#include <filesystem>

#include "splitedge/problem.hpp"

namespace splitedge::testing {

inline std::filesystem::path repo_root() { return SPLITEDGE_REPO_ROOT; }

/// Five-layer hand-enumerable problem. Unit-ish numbers: one second of
/// device compute per layer, rates of 1.0, ~1.585, 2.0, ~2.322 Mbit/s at
/// the four toy power levels, 0.1 J device energy per layer.
inline ProblemBundle toy_bundle() {
  ProblemBundle bundle;
  Eigen::VectorXd macs(5), bits(5);
  macs << 1e9, 1e9, 1e9, 1e9, 1e9;
  bits << 8e6, 4e6, 2e6, 1e6, 5e5;
  bundle.profile = make_layer_profile(macs, bits, 1.6e7);

  bundle.device = DeviceSpec{1e9, 1e-28, 1.0, 0.1, 0.4};
  bundle.server = ServerSpec{2e9, 1.0};
  bundle.radio = RadioSpec{1e6, -100.0};  // N0*B = 1e-7 W
  bundle.budget = Budget{1.0, 6.0};

  Eigen::VectorXd base(5);
  base << 0.6, 0.7, 0.8, 0.7, 0.6;
  bundle.surface = make_utility_surface(base, 0.05, 0.2);

  bundle.trace.gains_db = {-60.0};  // gain 1e-6
  bundle.trace.source = TraceSource::synthetic;
  return bundle;
}

/// The bundled desk-scale benchmark: synthetic VGG19-shaped profile,
/// triangular utility ramp peaking at layer 7, outdoor trace (frame 0 at
/// exactly -96.2 dB), paper-style device/radio constants and 5 J / 5 s caps.
inline ProblemBundle bundled_benchmark() {
  ProblemBundle bundle;
  bundle.profile = load_profile(repo_root() / "profiles/vgg19_synthetic.csv");
  bundle.surface = load_surface(repo_root() / "surfaces/vgg19_synthetic.csv", 0.002, 0.0);
  bundle.trace = load_trace(repo_root() / "traces/outdoor_blockage.csv");
  bundle.device = DeviceSpec{};
  bundle.server = ServerSpec{};
  bundle.radio = RadioSpec{};
  bundle.budget = Budget{};
  return bundle;
}

}  // namespace splitedge::testing

#endif
