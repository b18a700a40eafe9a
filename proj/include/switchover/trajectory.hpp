#pragma once

// Displacement x(t) = int_{t_s}^t (p + A) dt' along the two-legged path:
// straight down from t_s to Re t_s, then along the real axis.

#include <optional>
#include <string>
#include <vector>

#include "switchover/saddles.hpp"

namespace switchover {

struct TrajectoryRecord {
  Label label = Label::unassigned;
  double p = 0.0;
  cplx t_s;
  std::vector<double> t_grid;  // real times, a.u., from Re t_s
  std::vector<cplx> x;         // Re x is the physical coordinate
  double x_exit = 0.0;         // Re x(Re t_s)
  cplx x_exit_complex;
};

/// Closed-form x at any complex t (the integrand is entire, so the path does not matter).
cplx displacement(const FieldConfig& cfg, double p, cplx t_s, cplx t);

/// Leg 2 runs to t_end (default Re t_s + 2T) with `samples` points.
TrajectoryRecord trajectory(const SaddlePoint& s, const FieldConfig& cfg, double p,
                            std::optional<double> t_end = std::nullopt, int samples = 801);

struct TrajectoryBand {
  Label label = Label::unassigned;
  std::vector<TrajectoryRecord> members;  // in the order of ps
  bool truncated = false;                 // continuation failed before the last p
  std::string diagnostic;
};

/// Trajectories of one labelled orbit for each p in `ps`, the saddle carried
/// from `start` (at p_from) by continuation in p.
TrajectoryBand trajectory_band(const std::vector<SaddlePoint>& start, Label label,
                               const FieldConfig& cfg, double p_from,
                               const std::vector<double>& ps,
                               std::optional<double> t_end = std::nullopt,
                               int samples = 801);

}  // namespace switchover
