#include "switchover/contour.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "switchover/amplitude.hpp"
#include "switchover/error.hpp"

namespace switchover {

const char* path_end_name(PathEnd e) {
  switch (e) {
    case PathEnd::valley: return "valley";
    case PathEnd::hill: return "hill";
    case PathEnd::real_axis: return "real_axis";
    case PathEnd::stokes: return "stokes";
    case PathEnd::step_limit: return "step_limit";
    case PathEnd::level_lost: return "level_lost";
  }
  return "?";
}

namespace {

constexpr cplx I{0.0, 1.0};

cplx S_u(const FieldConfig& cfg, double p, cplx u) { return action(cfg, p, u / cfg.omega); }

// dS/du
cplx dS_u(const FieldConfig& cfg, double p, cplx u) {
  return action_first_derivative(cfg, p, u / cfg.omega) / cfg.omega;
}

// Unit direction of steepest ascent (sign > 0) or descent (sign < 0) of Im S.
cplx flow(const FieldConfig& cfg, double p, cplx u, double sign) {
  const cplx d = sign * I * std::conj(dS_u(cfg, p, u));
  const double a = std::abs(d);
  return a > 0.0 ? d / a : cplx(0.0, 0.0);
}

void project(const FieldConfig& cfg, double p, cplx& u, double level) {
  for (int k = 0; k < 3; ++k) {
    const cplx g = std::conj(dS_u(cfg, p, u));
    const double g2 = std::norm(g);
    if (g2 == 0.0) return;
    const double r = S_u(cfg, p, u).real() - level;
    u -= r * g / g2;
    if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(level))) return;
  }
}

double max_saddle_im_action(const FieldConfig& cfg, double p, const std::vector<SaddlePoint>& s) {
  double m = -std::numeric_limits<double>::infinity();
  for (auto& x : s) m = std::max(m, action(cfg, p, x.t).imag());
  return m;
}

}  // namespace

std::array<cplx, 2> descent_directions(const SaddlePoint& s, const FieldConfig& cfg, double p) {
  const cplx s2 = action_second_derivative(cfg, p, s.t);
  if (std::abs(s2) < 1e-9) throw DegenerateSaddle("S'' vanishes at the saddle; no Gaussian direction");
  // S'' e^{2 i phi} = i |S''|
  cplx d = std::sqrt(I * std::abs(s2) / s2);
  if (d.real() < 0.0 || (d.real() == 0.0 && d.imag() < 0.0)) d = -d;
  return {d, -d};
}

TracedPath trace_level_set(const FieldConfig& cfg, double p,
                           const std::vector<SaddlePoint>& saddles, int exclude, cplx u0,
                           cplx direction, TraceMode mode, double limit,
                           const TraceOptions& opt) {
  const double w = cfg.omega;
  const double sign = mode == TraceMode::descent ? 1.0 : -1.0;
  TracedPath tp;
  const cplx s0 = S_u(cfg, p, u0);
  const double level = s0.real();
  const double scale = std::max(1.0, std::abs(s0));
  tp.level = level;
  tp.points.push_back(u0);

  cplx u = u0 + opt.h_min * direction;
  project(cfg, p, u, level);
  for (int step = 0; step < opt.max_steps; ++step) {
    const cplx s = S_u(cfg, p, u);
    const double err = std::abs(s.real() - level);
    tp.max_level_error = std::max(tp.max_level_error, err);
    tp.points.push_back(u);
    if (!(err <= opt.level_tol * scale)) {
      tp.end = PathEnd::level_lost;
      return tp;
    }
    if (mode == TraceMode::descent && s.imag() >= limit) {
      tp.end = PathEnd::valley;
      tp.sector = valley_sector(cfg, p, u);
      return tp;
    }
    if (mode == TraceMode::dual) {
      if (u.imag() <= 0.0) {
        tp.end = PathEnd::real_axis;
        return tp;
      }
      if (s.imag() <= limit) {
        tp.end = PathEnd::hill;
        return tp;
      }
    }

    double dist = std::numeric_limits<double>::infinity();
    int nearest = -1;
    for (std::size_t j = 0; j < saddles.size(); ++j) {
      if (static_cast<int>(j) == exclude) continue;
      const double d = periodic_distance(u, saddles[j].wt(w));
      if (d < dist) {
        dist = d;
        nearest = static_cast<int>(j);
      }
    }
    if (dist < opt.stokes_radius) {
      tp.end = PathEnd::stokes;
      tp.stokes_with = nearest;
      tp.stokes_shift =
          std::lround((u.real() - saddles[nearest].wt(w).real()) / (2.0 * pi));
      return tp;
    }
    double h = std::clamp(0.3 * dist, opt.h_min, opt.h_max);
    if (dist < opt.h_min / 0.3) h = 0.5 * dist;

    const cplx d0 = flow(cfg, p, u, sign);
    const cplx d1 = flow(cfg, p, u + 0.5 * h * d0, sign);
    u += h * d1;
    project(cfg, p, u, level);
    if (std::abs(u.imag()) > 1e3 || std::abs(u.real() - u0.real()) > 2.0 * pi * opt.lateral_periods) break;
  }
  tp.end = PathEnd::step_limit;
  return tp;
}

TracedPath trace_descent_path(const FieldConfig& cfg, double p,
                              const std::vector<SaddlePoint>& saddles, int index,
                              cplx direction, TraceMode mode, const TraceOptions& opt) {
  const SaddlePoint& s = saddles.at(static_cast<std::size_t>(index));
  const double ims = action(cfg, p, s.t).imag();
  const double limit = mode == TraceMode::descent
                           ? std::max(ims + opt.depth, max_saddle_im_action(cfg, p, saddles) +
                                                           opt.ceiling_margin)
                           : ims - opt.depth;
  return trace_level_set(cfg, p, saddles, index, s.wt(cfg.omega), direction, mode, limit, opt);
}

// ---------------------------------------------------------------------------
// Valleys

double ValleyGeometry::centre(long m) const { return (0.5 * pi + pi * m - phase) / n; }

ValleyGeometry valley_geometry(const FieldConfig& cfg) {
  ValleyGeometry g;
  const double e[2] = {cfg.E1(), cfg.E2()};
  const int ns[2] = {cfg.n1, cfg.n2};
  const double ph[2] = {0.0, cfg.phi2};
  int best = -1;
  for (int j = 0; j < 2; ++j) {
    if (!(std::abs(e[j]) > 1e-14 * cfg.E0)) continue;
    if (best < 0 || ns[j] > ns[best]) best = j;
  }
  if (best < 0 || cfg.E0 == 0.0) {
    g.free_field = true;
    return g;
  }
  g.n = ns[best];
  g.phase = ph[best];
  return g;
}

double dominance_height(const FieldConfig& cfg, double p, double x) {
  const ValleyGeometry g = valley_geometry(cfg);
  if (g.free_field) return 0.0;
  const auto terms = potential_terms(cfg);
  const double e[2] = {cfg.E1(), cfg.E2()};
  double a_hi = 0.0, a_lo = 0.0;
  int n_lo = 0;
  for (int j = 0; j < 2; ++j) {
    const int n = j == 0 ? cfg.n1 : cfg.n2;
    const bool on = std::abs(e[j]) > 1e-14 * cfg.E0;
    if (!on) continue;
    if (n == g.n) {
      a_hi = std::abs(terms[j].a);
    } else {
      a_lo = std::abs(terms[j].a);
      n_lo = n;
    }
  }
  const double n = g.n;
  double y = 0.5;
  if (a_lo > 0.0) y = std::max(y, std::log(100.0 * a_lo / a_hi) / (n - n_lo));
  if (p != 0.0) y = std::max(y, std::log(800.0 * std::abs(p) / a_hi) / n);
  const double rate = cfg.Ip + 0.5 * p * p + 0.25 * (a_hi * a_hi + a_lo * a_lo);
  for (int it = 0; it < 3; ++it) {
    const double span = std::abs(x) + 10.0 + y;
    y = std::max(y, std::log(800.0 * n * rate * span / (a_hi * a_hi)) / (2.0 * n));
  }
  y += 0.5;
  return std::min(y, std::min(60.0, 300.0 / n));
}

std::vector<cplx> ascend(const FieldConfig& cfg, double p, cplx u, double height) {
  std::vector<cplx> pts{u};
  const double h = 0.1;
  for (int k = 0; k < 100000 && u.imag() < height; ++k) {
    const cplx d0 = flow(cfg, p, u, 1.0);
    const cplx d1 = flow(cfg, p, u + 0.5 * h * d0, 1.0);
    if (d1 == cplx(0.0, 0.0)) break;
    u += h * d1;
    pts.push_back(u);
  }
  return pts;
}

long valley_sector(const FieldConfig& cfg, double p, cplx u) {
  const ValleyGeometry g = valley_geometry(cfg);
  if (g.free_field) return 0;
  const double y = dominance_height(cfg, p, u.real());
  const cplx top = ascend(cfg, p, u, y).back();
  return std::lround((g.n * top.real() + g.phase - 0.5 * pi) / pi);
}

// ---------------------------------------------------------------------------
// Chain

std::vector<Label> ContourChain::contributing_labels() const {
  std::vector<Label> out;
  for (int i : contributing) out.push_back(saddles[static_cast<std::size_t>(i)].label);
  return out;
}

std::vector<cplx> ContourChain::polyline() const {
  std::vector<cplx> out;
  for (auto& s : segments) {
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k == 0 && !out.empty() && out.back() == s.points[0]) continue;
      out.push_back(s.points[k]);
    }
  }
  return out;
}

namespace {

// Valley-to-valley connection through one or more saddles, in its base copy.
struct Edge {
  long from = 0, to = 0;
  std::vector<cplx> points;
  std::vector<int> saddles;
  std::vector<long> shifts;
  std::vector<cplx> directions;  // leaving direction in the from -> to orientation
  bool stokes = false;
};

std::vector<cplx> reversed(std::vector<cplx> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::vector<cplx> shifted(std::vector<cplx> v, double dx) {
  for (auto& z : v) z += dx;
  return v;
}

void append(std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k == 0 && !a.empty() && a.back() == b[0]) continue;
    a.push_back(b[k]);
  }
}

std::vector<cplx> valley_arc(const FieldConfig& cfg, double p, cplx a, cplx b) {
  if (a == b) return {a};
  const double y = std::max({a.imag(), b.imag(), dominance_height(cfg, p, a.real()),
                             dominance_height(cfg, p, b.real())});
  std::vector<cplx> up = ascend(cfg, p, a, y);
  std::vector<cplx> down = reversed(ascend(cfg, p, b, y));
  append(up, down);
  return up;
}

struct Step {
  int edge;
  long shift;
  bool forward;
};

bool bfs(const std::vector<Edge>& edges, long m_from, long m_to, long period, std::vector<Step>& out) {
  const long lo = std::min(m_from, m_to) - period;
  const long hi = std::max(m_from, m_to) + period;
  std::map<long, std::pair<long, Step>> prev;
  std::deque<long> q{m_from};
  prev[m_from] = {m_from, Step{-1, 0, true}};
  while (!q.empty()) {
    const long m = q.front();
    q.pop_front();
    if (m == m_to) break;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (int dirn = 0; dirn < 2; ++dirn) {
        const long a = dirn == 0 ? edges[e].from : edges[e].to;
        const long b = dirn == 0 ? edges[e].to : edges[e].from;
        const long diff = m - a;
        if (diff % period != 0) continue;
        const long shift = diff / period;
        const long next = b + shift * period;
        if (next < lo || next > hi || prev.count(next)) continue;
        prev[next] = {m, Step{static_cast<int>(e), shift, dirn == 0}};
        q.push_back(next);
      }
    }
  }
  if (!prev.count(m_to)) return false;
  out.clear();
  for (long m = m_to; m != m_from; m = prev[m].first) out.push_back(prev[m].second);
  std::reverse(out.begin(), out.end());
  return true;
}

}  // namespace

ContourChain build_contour(const FieldConfig& cfg, double p, const ContourOptions& opt) {
  auto found = find_saddles(cfg, p);
  return build_contour(cfg, p, found.saddles, opt);
}

ContourChain build_contour(const FieldConfig& cfg, double p, std::vector<SaddlePoint> saddles,
                           const ContourOptions& opt) {
  validate(cfg);
  ContourChain chain;
  const double w = cfg.omega;
  const double a = window_start;
  const double period = 2.0 * pi;
  for (auto& s : saddles) {
    s.contributes = false;
    s.traversal = 0.0;
    s.period_shift = 0;
  }
  chain.saddles = saddles;
  const ValleyGeometry geo = valley_geometry(cfg);

  if (geo.free_field) {
    // S = (Ip + p^2/2) t: one valley filling the upper half plane.
    const double rate = cfg.Ip + 0.5 * p * p;
    const double H = opt.trace.depth * w / rate;
    chain.segments.push_back({SegmentKind::left_end, {cplx(a, 0.0), cplx(a, H)}});
    chain.segments.push_back({SegmentKind::valley_arc, {cplx(a, H), cplx(a + period, H)}});
    chain.segments.push_back({SegmentKind::right_end, {cplx(a + period, H), cplx(a + period, 0.0)}});
    return chain;
  }

  for (std::size_t i = 0; i < saddles.size(); ++i)
    for (std::size_t j = i + 1; j < saddles.size(); ++j)
      if (periodic_distance(saddles[i].wt(w), saddles[j].wt(w)) < opt.guard) {
        chain.saddles[i].degenerate = chain.saddles[j].degenerate = true;
        chain.degenerate = true;
      }

  const long per = geo.sectors_per_period();
  std::ostringstream diag;
  diag.precision(6);

  // Descent paths of every order-1 saddle.
  struct SaddlePaths {
    bool ok = false;
    std::array<cplx, 2> dir{};
    std::array<TracedPath, 2> path;
  };
  std::vector<SaddlePaths> sp(saddles.size());
  for (std::size_t i = 0; i < saddles.size(); ++i) {
    const cplx u = saddles[i].wt(w);
    diag << "saddle " << i << " (" << label_char(saddles[i].label) << ") wt = " << u.real()
         << (u.imag() < 0 ? " - " : " + ") << std::abs(u.imag()) << "i:";
    try {
      sp[i].dir = descent_directions(saddles[i], cfg, p);
    } catch (const DegenerateSaddle&) {
      chain.saddles[i].degenerate = true;
      chain.degenerate = true;
      diag << " degenerate\n";
      continue;
    }
    sp[i].ok = true;
    for (int k = 0; k < 2; ++k) {
      sp[i].path[k] = trace_descent_path(cfg, p, saddles, static_cast<int>(i), sp[i].dir[k],
                                         TraceMode::descent, opt.trace);
      const auto& tp = sp[i].path[k];
      diag << ' ' << path_end_name(tp.end);
      if (tp.end == PathEnd::valley) diag << '(' << tp.sector << ')';
      if (tp.end == PathEnd::stokes) diag << "(saddle " << tp.stokes_with << ')';
    }
    diag << '\n';
  }

  // Left end: from the real axis at the window start up into a valley.
  const double top = std::max(max_saddle_im_action(cfg, p, saddles) + opt.trace.ceiling_margin,
                              opt.trace.depth);
  const cplx ua(a, 0.0);
  TracedPath left = trace_level_set(cfg, p, saddles, -1, ua, flow(cfg, p, ua, 1.0),
                                    TraceMode::descent, top, opt.trace);
  if (left.end == PathEnd::stokes) {
    const int j = left.stokes_with;
    const long sh = left.stokes_shift;
    chain.stokes = chain.degenerate = true;
    chain.notes.push_back("left end path runs into a saddle");
    if (!sp[static_cast<std::size_t>(j)].ok || sp[static_cast<std::size_t>(j)].path[0].end != PathEnd::valley)
      throw TopologyError("left end path ends at a saddle without a clean descent path\n" + diag.str());
    append(left.points, shifted(sp[static_cast<std::size_t>(j)].path[0].points, sh * period));
    left.sector = sp[static_cast<std::size_t>(j)].path[0].sector + sh * per;
    left.end = PathEnd::valley;
  }
  if (left.end != PathEnd::valley)
    throw TopologyError(std::string("left end path did not reach a valley (") +
                        path_end_name(left.end) + ")\n" + diag.str());
  chain.sector_left = left.sector;
  chain.sector_right = left.sector + per;
  diag << "end sectors " << chain.sector_left << " -> " << chain.sector_right << '\n';

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < saddles.size(); ++i) {
    if (!sp[i].ok) continue;
    const auto& p0 = sp[i].path[0];
    const auto& p1 = sp[i].path[1];
    if (p0.end != PathEnd::valley || p1.end != PathEnd::valley) continue;
    if (p0.sector == p1.sector) continue;
    Edge e;
    e.from = p0.sector;
    e.to = p1.sector;
    e.points = reversed(p0.points);
    append(e.points, p1.points);
    e.saddles = {static_cast<int>(i)};
    e.shifts = {0};
    e.directions = {sp[i].dir[1]};
    edges.push_back(e);
  }

  std::vector<Step> steps;
  bool found = bfs(edges, chain.sector_left, chain.sector_right, per, steps);
  if (!found) {
    // Fall back on paths that run into another saddle.
    for (std::size_t i = 0; i < saddles.size(); ++i) {
      if (!sp[i].ok) continue;
      for (int k = 0; k < 2; ++k) {
        const auto& hit = sp[i].path[k];
        const auto& other = sp[i].path[1 - k];
        if (hit.end != PathEnd::stokes || other.end != PathEnd::valley) continue;
        const auto j = static_cast<std::size_t>(hit.stokes_with);
        if (!sp[j].ok) continue;
        for (int q = 0; q < 2; ++q) {
          const auto& cont = sp[j].path[q];
          if (cont.end != PathEnd::valley) continue;
          Edge e;
          e.stokes = true;
          e.from = other.sector;
          e.to = cont.sector + hit.stokes_shift * per;
          if (e.from == e.to) continue;
          e.points = reversed(other.points);
          append(e.points, hit.points);
          append(e.points, shifted(cont.points, hit.stokes_shift * period));
          e.saddles = {static_cast<int>(i), static_cast<int>(j)};
          e.shifts = {0, hit.stokes_shift};
          e.directions = {sp[i].dir[k], sp[j].dir[q]};
          edges.push_back(e);
        }
      }
    }
    found = bfs(edges, chain.sector_left, chain.sector_right, per, steps);
    if (found) {
      chain.stokes = chain.degenerate = true;
      chain.notes.push_back("chain uses a Stokes connection");
    }
  }
  if (!found)
    throw TopologyError("no chain of descent paths joins valley " +
                        std::to_string(chain.sector_left) + " to valley " +
                        std::to_string(chain.sector_right) + "\n" + diag.str());

  // Assemble.
  chain.segments.push_back({SegmentKind::left_end, left.points});
  cplx cur = left.points.back();
  for (const Step& st : steps) {
    const Edge& e = edges[static_cast<std::size_t>(st.edge)];
    std::vector<cplx> pts = shifted(e.points, st.shift * period);
    if (!st.forward) pts = reversed(pts);
    chain.segments.push_back({SegmentKind::valley_arc, valley_arc(cfg, p, cur, pts.front())});
    const std::size_t n = e.saddles.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = st.forward ? k : n - 1 - k;
      const auto si = static_cast<std::size_t>(e.saddles[idx]);
      SaddlePoint& s = chain.saddles[si];
      if (s.contributes) {
        chain.notes.push_back("saddle visited twice");
        continue;
      }
      s.contributes = true;
      s.traversal = st.forward ? e.directions[idx] : -e.directions[idx];
      s.period_shift = e.shifts[idx] + st.shift;
      chain.contributing.push_back(static_cast<int>(si));
    }
    if (e.stokes) chain.degenerate = true;
    chain.segments.push_back({SegmentKind::saddle_path, pts, e.saddles.front()});
    cur = pts.back();
  }
  std::vector<cplx> right = reversed(shifted(left.points, period));
  right.back() = cplx(a + period, 0.0);
  chain.segments.push_back({SegmentKind::valley_arc, valley_arc(cfg, p, cur, right.front())});
  chain.segments.push_back({SegmentKind::right_end, right});
  chain.start = ua;
  chain.end = right.back();
  return chain;
}

bool dual_path_reaches_real_axis(const FieldConfig& cfg, double p,
                                 const std::vector<SaddlePoint>& saddles, int index,
                                 const TraceOptions& opt) {
  const auto d = descent_directions(saddles.at(static_cast<std::size_t>(index)), cfg, p);
  for (cplx dir : d) {
    const auto tp = trace_descent_path(cfg, p, saddles, index, I * dir, TraceMode::dual, opt);
    if (tp.end == PathEnd::real_axis) return true;
  }
  return false;
}

cplx integrand(const FieldConfig& cfg, double p, cplx t) {
  return prefactor(p + vector_potential(cfg, t), cfg.Ip) * std::exp(I * action(cfg, p, t));
}

ContourIntegral contour_quadrature(const ContourChain& chain, const FieldConfig& cfg, double p,
                                   const QuadratureOptions& opt) {
  const double w = cfg.omega;
  auto g = [&](cplx u) { return integrand(cfg, p, u / w) / w; };
  ContourIntegral out;
  for (const auto& seg : chain.segments) {
    const auto r = integrate_polyline(g, seg.points, opt);
    out.total += r.value;
    if (seg.kind != SegmentKind::left_end && seg.kind != SegmentKind::right_end)
      out.interior += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
  }
  return out;
}

std::vector<LandscapePoint> action_landscape(const FieldConfig& cfg, double p, int nx, int ny,
                                             double im_max) {
  if (nx < 2 || ny < 2) throw InvalidArgument("landscape grid needs at least 2 x 2 points");
  std::vector<LandscapePoint> out;
  out.reserve(static_cast<std::size_t>(nx) * ny);
  for (int k = 0; k < ny; ++k) {
    const double y = im_max * k / (ny - 1);
    for (int j = 0; j < nx; ++j) {
      const double x = window_start + 2.0 * pi * j / nx;
      const cplx s = action(cfg, p, cplx(x, y) / cfg.omega);
      out.push_back({x, y, s.imag(), s.real()});
    }
  }
  return out;
}

}  // namespace switchover
