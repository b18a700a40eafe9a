#pragma once

// Adaptive 16-point Gauss-Legendre along straight segments in the complex plane.

#include <functional>
#include <vector>

#include "switchover/field.hpp"

namespace switchover {

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error = 0.0;  // sum of |coarse - refined| over accepted panels
  double l1 = 0.0;     // estimate of int |f| |dz|
  bool converged = true;
  long evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;   // relative to the L1 estimate of the whole path
  double max_panel = 0.05; // initial panel length, in the path's own units
  int max_depth = 30;
};

using ComplexFunction = std::function<cplx(cplx)>;

/// Integral of f along the polyline through `points` (piecewise linear).
QuadratureResult integrate_polyline(const ComplexFunction& f, const std::vector<cplx>& points,
                                    const QuadratureOptions& opt = {});

QuadratureResult integrate_segment(const ComplexFunction& f, cplx a, cplx b,
                                   const QuadratureOptions& opt = {});

}  // namespace switchover
