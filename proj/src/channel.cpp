#include "splitedge/channel.hpp"

#include <cmath>
#include <sstream>

#include "splitedge/csv.hpp"
#include "splitedge/errors.hpp"
#include "splitedge/rng.hpp"

namespace splitedge {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

ChannelTrace load_trace(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw EmptyTraceError("trace file is empty: " + path.string());
  if (rows[0].size() != 2 || rows[0][0] != "frame" || rows[0][1] != "gain_db") {
    throw ParseError("trace " + path.string() + ": expected header 'frame,gain_db'");
  }
  if (rows.size() == 1) throw EmptyTraceError("trace has no frames: " + path.string());

  ChannelTrace trace;
  trace.source = TraceSource::file;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string context = "trace " + path.string() + " row " + std::to_string(i);
    if (row.size() != 2) throw ParseError(context + ": expected 2 fields");
    const long frame = csv::to_long(row[0], context);
    if (frame != static_cast<long>(i - 1)) {
      throw ParseError(context + ": frame index must run 0..N-1 in order");
    }
    const double gain_db = csv::to_double(row[1], context);
    if (!std::isfinite(gain_db)) throw ParseError(context + ": gain must be finite");
    trace.gains_db.push_back(gain_db);
  }
  return trace;
}

ChannelTrace synth_trace(int n_frames, double mean_gain_db, double fading_scale_db,
                         double blockage_prob, double blockage_extra_db, std::uint64_t seed) {
  if (n_frames < 1) throw std::invalid_argument("synth_trace: need at least one frame");
  if (blockage_prob < 0.0 || blockage_prob > 1.0) {
    throw std::invalid_argument("synth_trace: blockage_prob outside [0,1]");
  }
  ChannelTrace trace;
  trace.source = TraceSource::synthetic;
  trace.seed = seed;
  trace.gains_db.reserve(static_cast<std::size_t>(n_frames));
  Xoshiro256StarStar rng(seed);
  for (int i = 0; i < n_frames; ++i) {
    const double fade = rng.gaussian() * fading_scale_db;
    const bool blocked = rng.uniform() < blockage_prob;
    trace.gains_db.push_back(mean_gain_db + fade - (blocked ? blockage_extra_db : 0.0));
  }
  return trace;
}

double gain_at(const ChannelTrace& trace, std::size_t task_index) {
  return db_to_linear(trace.gains_db[task_index % trace.gains_db.size()]);
}

void save_trace(const ChannelTrace& trace, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "frame,gain_db\n";
  for (std::size_t i = 0; i < trace.gains_db.size(); ++i) {
    out << i << ',' << csv::format_double(trace.gains_db[i]) << '\n';
  }
  csv::write_file(path, out.str());
}

}  // namespace splitedge
