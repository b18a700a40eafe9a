#include "switchover/trajectory.hpp"

#include <cmath>

#include "switchover/action.hpp"
#include "switchover/error.hpp"

namespace switchover {

cplx displacement(const FieldConfig& cfg, double p, cplx t_s, cplx t) {
  return p * (t - t_s) + potential_integral(cfg, t) - potential_integral(cfg, t_s);
}

TrajectoryRecord trajectory(const SaddlePoint& s, const FieldConfig& cfg, double p,
                            std::optional<double> end, int samples) {
  validate(cfg);
  if (samples < 2) throw InvalidArgument("trajectory needs at least two samples");
  const double t0 = s.t.real();
  const double t_end = end.value_or(t0 + 2.0 * cfg.period());
  if (!(t_end > t0)) throw InvalidArgument("trajectory must end after Re t_s");
  TrajectoryRecord r;
  r.label = s.label;
  r.p = p;
  r.t_s = s.t;
  r.t_grid.resize(static_cast<std::size_t>(samples));
  r.x.resize(r.t_grid.size());
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? t_end : t0 + (t_end - t0) * i / (samples - 1);
    r.t_grid[static_cast<std::size_t>(i)] = t;
    r.x[static_cast<std::size_t>(i)] = displacement(cfg, p, s.t, t);
  }
  r.x_exit_complex = r.x.front();
  r.x_exit = r.x_exit_complex.real();
  return r;
}

TrajectoryBand trajectory_band(const std::vector<SaddlePoint>& start, Label label,
                               const FieldConfig& cfg, double p_from,
                               const std::vector<double>& ps, std::optional<double> t_end,
                               int samples) {
  TrajectoryBand band;
  band.label = label;
  std::size_t col = start.size();
  for (std::size_t k = 0; k < start.size(); ++k)
    if (start[k].label == label) col = k;
  if (col == start.size()) throw InvalidArgument(std::string("no saddle labelled ") + label_char(label));

  const SaddleTrack track = track_in_p(cfg, start, p_from, ps);
  for (std::size_t i = 0; i < track.nodes.size(); ++i) {
    const auto& node = track.nodes[i];
    if (node.ambiguous || col >= node.saddles.size() || !node.saddles[col]) {
      band.truncated = true;
      band.diagnostic = "continuation of orbit " + std::string(1, label_char(label)) +
                        " lost at p = " + std::to_string(node.p);
      break;
    }
    band.members.push_back(trajectory(*node.saddles[col], cfg, node.p, t_end, samples));
  }
  return band;
}

}  // namespace switchover
