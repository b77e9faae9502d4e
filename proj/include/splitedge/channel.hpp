#ifndef SPLITEDGE_CHANNEL_HPP
#define SPLITEDGE_CHANNEL_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace splitedge {

enum class TraceSource { file, synthetic };

/// Immutable per-task channel gain sequence, stored in dB.
struct ChannelTrace {
  std::vector<double> gains_db;
  TraceSource source = TraceSource::file;
  std::optional<std::uint64_t> seed;

  std::size_t size() const { return gains_db.size(); }
};

double db_to_linear(double db);
double linear_to_db(double linear);

/// Reads a `frame,gain_db` CSV. Frames must be 0..N-1 in order.
/// Throws ParseError / EmptyTraceError.
ChannelTrace load_trace(const std::filesystem::path& path);

/// Gaussian shadowing around a mean gain, with Bernoulli blockage dips.
/// Per frame (in draw order): gain = mean + N(0, fading_scale_db)
/// - [U < blockage_prob] * blockage_extra_db. Uses xoshiro256**, so a seed
/// reproduces the exact trace everywhere.
ChannelTrace synth_trace(int n_frames, double mean_gain_db, double fading_scale_db,
                         double blockage_prob, double blockage_extra_db, std::uint64_t seed);

/// Linear power gain for a task; the trace wraps cyclically.
double gain_at(const ChannelTrace& trace, std::size_t task_index);

/// Writes the trace in the `frame,gain_db` schema.
void save_trace(const ChannelTrace& trace, const std::filesystem::path& path);

}  // namespace splitedge

#endif
