#include "splitedge/system_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "splitedge/csv.hpp"
#include "splitedge/errors.hpp"

namespace splitedge {

LayerProfile make_layer_profile(Eigen::VectorXd macs, Eigen::VectorXd activation_bits,
                                double input_bits) {
  if (macs.size() < 1 || macs.size() != activation_bits.size()) {
    throw std::invalid_argument("layer profile: macs/activation_bits must have equal length >= 1");
  }
  if ((macs.array() < 0.0).any()) {
    throw std::invalid_argument("layer profile: negative MAC count");
  }
  if ((activation_bits.array() <= 0.0).any() || input_bits <= 0.0) {
    throw std::invalid_argument("layer profile: payload sizes must be positive");
  }
  LayerProfile profile;
  profile.macs = std::move(macs);
  profile.activation_bits = std::move(activation_bits);
  profile.input_bits = input_bits;
  profile.cum_macs.resize(profile.macs.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < profile.macs.size(); ++i) {
    acc += profile.macs[i];
    profile.cum_macs[i] = acc;
  }
  return profile;
}

void validate(const DeviceSpec& device) {
  if (device.freq_hz <= 0 || device.kappa <= 0 || device.eta <= 0) {
    throw std::invalid_argument("device spec: freq, kappa, eta must be positive");
  }
  if (device.p_min_w <= 0 || device.p_min_w >= device.p_max_w) {
    throw std::invalid_argument("device spec: need 0 < p_min < p_max");
  }
}

void validate(const ServerSpec& server) {
  if (server.freq_hz <= 0 || server.eta <= 0) {
    throw std::invalid_argument("server spec: freq, eta must be positive");
  }
}

void validate(const RadioSpec& radio) {
  if (radio.bandwidth_hz <= 0) {
    throw std::invalid_argument("radio spec: bandwidth must be positive");
  }
}

void validate(const Budget& budget) {
  if (budget.e_max_j <= 0 || budget.tau_max_s <= 0) {
    throw std::invalid_argument("budget: caps must be positive");
  }
}

void validate(const SplitConfig& config, const LayerProfile& profile, const DeviceSpec& device) {
  if (config.layer < 1 || config.layer > profile.layers()) {
    throw std::invalid_argument("split config: layer out of range");
  }
  if (config.power_w < device.p_min_w || config.power_w > device.p_max_w) {
    throw std::invalid_argument("split config: power out of range");
  }
}

double noise_watts_per_hz(double noise_psd_dbm_hz) {
  return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0);
}

double achievable_rate(double power_w, double gain_linear, const RadioSpec& radio) {
  const double received_w = power_w * gain_linear;
  if (received_w <= 0.0) return 0.0;
  const double noise_w = noise_watts_per_hz(radio.noise_psd_dbm_hz) * radio.bandwidth_hz;
  return radio.bandwidth_hz * std::log2(1.0 + received_w / noise_w);
}

double transmission_delay(const SplitConfig& config, double gain_linear,
                          const LayerProfile& profile, const RadioSpec& radio) {
  const double rate = achievable_rate(config.power_w, gain_linear, radio);
  if (rate <= 0.0) {
    throw ZeroRateError("achievable rate is zero; link cannot carry the payload");
  }
  return profile.activation_bits[config.layer - 1] / rate;
}

double transmission_energy(const SplitConfig& config, double tau_transmit_s) {
  return config.power_w * tau_transmit_s;
}

double local_compute_energy(const SplitConfig& config, const LayerProfile& profile,
                            const DeviceSpec& device) {
  return device.kappa * profile.device_macs(config.layer) * device.freq_hz * device.freq_hz;
}

std::pair<double, double> compute_delays(const SplitConfig& config, const LayerProfile& profile,
                                         const DeviceSpec& device, const ServerSpec& server) {
  const double device_macs = profile.device_macs(config.layer);
  const double server_macs = profile.total_macs() - device_macs;
  const double tau_device = device_macs / (device.freq_hz * device.eta);
  const double tau_server = server_macs / (server.freq_hz * server.eta);
  return {tau_device, tau_server};
}

CostBreakdown evaluate_cost(const SplitConfig& config, double gain_linear,
                            const LayerProfile& profile, const DeviceSpec& device,
                            const ServerSpec& server, const RadioSpec& radio,
                            const Budget& budget) {
  CostBreakdown cost;
  const auto [tau_device, tau_server] = compute_delays(config, profile, device, server);
  cost.tau_device_s = tau_device;
  cost.tau_server_s = tau_server;
  cost.e_compute_j = local_compute_energy(config, profile, device);

  const double rate = achievable_rate(config.power_w, gain_linear, radio);
  if (rate > 0.0) {
    cost.tau_transmit_s = profile.activation_bits[config.layer - 1] / rate;
    cost.e_transmit_j = transmission_energy(config, cost.tau_transmit_s);
  } else {
    // Dead link: record an infinite airtime so the config scores as
    // infeasible instead of erroring out of an optimizer loop.
    cost.tau_transmit_s = std::numeric_limits<double>::infinity();
    cost.e_transmit_j = std::numeric_limits<double>::infinity();
  }

  cost.feasible = cost.total_energy_j() <= budget.e_max_j &&
                  cost.total_delay_s() <= budget.tau_max_s;
  return cost;
}

LayerProfile load_profile(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "layer_index" ||
      rows[0][1] != "macs" || rows[0][2] != "activation_bits") {
    throw ParseError("profile " + path.string() +
                     ": expected header 'layer_index,macs,activation_bits'");
  }
  if (rows.size() < 3 || rows[1][0] != "input") {
    throw ParseError("profile " + path.string() +
                     ": expected metadata row 'input,0,<input_bits>' before layer rows");
  }
  const double input_bits = csv::to_double(rows[1][2], "profile input row");

  const Eigen::Index n_layers = static_cast<Eigen::Index>(rows.size()) - 2;
  Eigen::VectorXd macs(n_layers);
  Eigen::VectorXd bits(n_layers);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const std::string context = "profile " + path.string() + " row " + std::to_string(i);
    if (rows[i].size() != 3) throw ParseError(context + ": expected 3 fields");
    const long index = csv::to_long(rows[i][0], context);
    if (index != static_cast<long>(i) - 1) throw ParseError(context + ": layer_index must run 1..L");
    macs[static_cast<Eigen::Index>(i) - 2] = csv::to_double(rows[i][1], context);
    bits[static_cast<Eigen::Index>(i) - 2] = csv::to_double(rows[i][2], context);
  }
  return make_layer_profile(std::move(macs), std::move(bits), input_bits);
}

void save_profile(const LayerProfile& profile, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "layer_index,macs,activation_bits\n";
  out << "input,0," << csv::format_double(profile.input_bits) << '\n';
  for (int l = 1; l <= profile.layers(); ++l) {
    out << l << ',' << csv::format_double(profile.macs[l - 1]) << ','
        << csv::format_double(profile.activation_bits[l - 1]) << '\n';
  }
  csv::write_file(path, out.str());
}

}  // namespace splitedge
