#ifndef SPLITEDGE_SYSTEM_MODEL_HPP
#define SPLITEDGE_SYSTEM_MODEL_HPP

#include <Eigen/Core>
#include <filesystem>
#include <utility>

namespace splitedge {

/// Decision vector: split after layer `layer` (1-based), transmit at `power_w`.
struct SplitConfig {
  int layer = 1;
  double power_w = 0.0;
};

/// Per-layer compute load (MAC counts) and activation payload sizes.
/// `cum_macs[i]` caches the MACs of layers 1..i+1 so cost queries are O(1).
struct LayerProfile {
  Eigen::VectorXd macs;
  Eigen::VectorXd activation_bits;
  double input_bits = 0.0;
  Eigen::VectorXd cum_macs;

  int layers() const { return static_cast<int>(macs.size()); }
  double total_macs() const { return cum_macs.size() > 0 ? cum_macs[cum_macs.size() - 1] : 0.0; }
  /// MACs executed on-device when splitting after `layer` (1-based).
  double device_macs(int layer) const { return cum_macs[layer - 1]; }
};

/// Validates invariants and precomputes prefix sums.
LayerProfile make_layer_profile(Eigen::VectorXd macs, Eigen::VectorXd activation_bits,
                                double input_bits);

struct DeviceSpec {
  double freq_hz = 1.8e9;    // CPU frequency f
  double kappa = 1e-29;      // energy coefficient, J*s^2/op
  double eta = 1.0;          // ops per cycle
  double p_min_w = 0.1;
  double p_max_w = 0.5;
};

struct ServerSpec {
  double freq_hz = 4.5e9;
  double eta = 1.0;
};

struct RadioSpec {
  double bandwidth_hz = 240000.0 * 256.0 * 0.8;
  double noise_psd_dbm_hz = -147.0;
};

struct Budget {
  double e_max_j = 5.0;
  double tau_max_s = 5.0;
};

struct CostBreakdown {
  double e_compute_j = 0.0;
  double e_transmit_j = 0.0;
  double tau_device_s = 0.0;
  double tau_transmit_s = 0.0;
  double tau_server_s = 0.0;
  bool feasible = false;

  double total_energy_j() const { return e_compute_j + e_transmit_j; }
  double total_delay_s() const { return tau_device_s + tau_transmit_s + tau_server_s; }
};

void validate(const DeviceSpec& device);
void validate(const ServerSpec& server);
void validate(const RadioSpec& radio);
void validate(const Budget& budget);
void validate(const SplitConfig& config, const LayerProfile& profile, const DeviceSpec& device);

/// dBm/Hz -> W/Hz.
double noise_watts_per_hz(double noise_psd_dbm_hz);

/// Shannon rate B*log2(1 + P*|h|^2 / (N0*B)) in bits/s. Zero received power
/// gives rate 0.
double achievable_rate(double power_w, double gain_linear, const RadioSpec& radio);

/// Uplink airtime for the split-layer activation payload. Throws
/// ZeroRateError when the rate is zero; callers that must not throw use
/// evaluate_cost, which maps that case to an infeasible +inf delay.
double transmission_delay(const SplitConfig& config, double gain_linear,
                          const LayerProfile& profile, const RadioSpec& radio);

/// Radiated energy over the airtime, P_t * tau_t.
double transmission_energy(const SplitConfig& config, double tau_transmit_s);

/// Device-side energy: sum over local layers of kappa * alpha_i * f^2.
double local_compute_energy(const SplitConfig& config, const LayerProfile& profile,
                            const DeviceSpec& device);

/// (device delay, server delay): prefix/suffix MAC sums over f*eta.
std::pair<double, double> compute_delays(const SplitConfig& config, const LayerProfile& profile,
                                         const DeviceSpec& device, const ServerSpec& server);

/// Full cost assembly plus feasibility against both budget caps.
CostBreakdown evaluate_cost(const SplitConfig& config, double gain_linear,
                            const LayerProfile& profile, const DeviceSpec& device,
                            const ServerSpec& server, const RadioSpec& radio,
                            const Budget& budget);

/// Reads the profile schema: header `layer_index,macs,activation_bits`, one
/// metadata row `input,0,<input_bits>`, then rows 1..L.
LayerProfile load_profile(const std::filesystem::path& path);

void save_profile(const LayerProfile& profile, const std::filesystem::path& path);

}  // namespace splitedge

#endif
