#include "switchover/quadrature.hpp"

#include <array>
#include <cmath>

namespace switchover {

namespace {

// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr std::array<double, 8> gl_x = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> gl_w = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

struct Panel {
  cplx value;
  double l1;
};

Panel gauss16(const ComplexFunction& f, cplx a, cplx b, long& evals) {
  const cplx mid = 0.5 * (a + b);
  const cplx half = 0.5 * (b - a);
  const double len = std::abs(half);
  cplx sum{0.0, 0.0};
  double l1 = 0.0;
  for (std::size_t i = 0; i < gl_x.size(); ++i) {
    const cplx f1 = f(mid + gl_x[i] * half);
    const cplx f2 = f(mid - gl_x[i] * half);
    sum += gl_w[i] * (f1 + f2);
    l1 += gl_w[i] * (std::abs(f1) + std::abs(f2));
  }
  evals += 16;
  return {sum * half, l1 * len};
}

void adapt(const ComplexFunction& f, cplx a, cplx b, const Panel& whole, double density,
           int depth, const QuadratureOptions& opt, QuadratureResult& out) {
  const cplx m = 0.5 * (a + b);
  const Panel left = gauss16(f, a, m, out.evaluations);
  const Panel right = gauss16(f, m, b, out.evaluations);
  const cplx refined = left.value + right.value;
  const double err = std::abs(refined - whole.value);
  const double tol = density * std::abs(b - a);
  if (err <= tol || depth >= opt.max_depth || !std::isfinite(err)) {
    if (!(err <= tol)) out.converged = false;
    out.value += refined;
    out.error += err;
    return;
  }
  adapt(f, a, m, left, density, depth + 1, opt, out);
  adapt(f, m, b, right, density, depth + 1, opt, out);
}

}  // namespace

QuadratureResult integrate_polyline(const ComplexFunction& f, const std::vector<cplx>& points,
                                    const QuadratureOptions& opt) {
  QuadratureResult out;
  if (points.size() < 2) return out;

  // First pass: fixed panels give the L1 scale that sets the tolerance.
  struct Item {
    cplx a, b;
    Panel p;
  };
  std::vector<Item> items;
  double length = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const cplx a = points[k], b = points[k + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    const int n = std::max(1, static_cast<int>(std::ceil(len / opt.max_panel)));
    for (int j = 0; j < n; ++j) {
      const cplx pa = a + (b - a) * (static_cast<double>(j) / n);
      const cplx pb = (j + 1 == n) ? b : a + (b - a) * (static_cast<double>(j + 1) / n);
      items.push_back({pa, pb, gauss16(f, pa, pb, out.evaluations)});
    }
    length += len;
  }
  double l1 = 0.0;
  for (auto& it : items) l1 += it.p.l1;
  out.l1 = l1;
  if (length == 0.0) return out;
  const double density = opt.rel_tol * l1 / length;
  for (auto& it : items) adapt(f, it.a, it.b, it.p, density, 0, opt, out);
  return out;
}

QuadratureResult integrate_segment(const ComplexFunction& f, cplx a, cplx b,
                                   const QuadratureOptions& opt) {
  return integrate_polyline(f, {a, b}, opt);
}

}  // namespace switchover
