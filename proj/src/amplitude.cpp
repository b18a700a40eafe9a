#include "switchover/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "switchover/error.hpp"

namespace switchover {

namespace {
constexpr cplx I{0.0, 1.0};

bool excluded(const std::vector<Label>& ex, Label l) {
  return std::find(ex.begin(), ex.end(), l) != ex.end();
}
}  // namespace

cplx prefactor(cplx /*k*/, double Ip) {
  return I * std::pow(2.0 * Ip, 0.25) / std::sqrt(pi);
}

OrbitAmplitude spm_contribution(const SaddlePoint& s, const FieldConfig& cfg, double p,
                                double reference_shift) {
  if (!s.contributes || s.traversal == cplx(0.0, 0.0))
    throw InvalidArgument("saddle is not on the integration contour");
  const cplx t = s.t + static_cast<double>(s.period_shift) * cfg.period();
  const cplx s2 = action_second_derivative(cfg, p, t);
  if (std::abs(s2) < 1e-9)
    throw DegenerateSaddle("S'' vanishes at the saddle; the Gaussian approximation does not exist");
  OrbitAmplitude o;
  o.label = s.label;
  o.p = p;
  o.t = t;
  o.degenerate_flag = s.degenerate;
  const cplx dir = s.traversal / std::abs(s.traversal);
  o.psi = dir * std::sqrt(2.0 * pi / std::abs(s2)) * prefactor(p + vector_potential(cfg, t), cfg.Ip) *
          std::exp(I * (action(cfg, p, t) + reference_shift));
  return o;
}

SpmResult spm_amplitude(const FieldConfig& cfg, double p, std::vector<SaddlePoint> saddles,
                        const SpmOptions& opt) {
  SpmResult r;
  r.chain = build_contour(cfg, p, std::move(saddles), opt.contour);
  r.degenerate = r.chain.degenerate;
  for (int i : r.chain.contributing) {
    const SaddlePoint& s = r.chain.saddles[static_cast<std::size_t>(i)];
    if (excluded(opt.exclude, s.label)) continue;
    OrbitAmplitude o = spm_contribution(s, cfg, p, opt.reference_shift);
    r.degenerate = r.degenerate || o.degenerate_flag;
    r.total += o.psi;
    r.orbits.push_back(o);
  }
  return r;
}

SpmResult spm_amplitude(const FieldConfig& cfg, double p, const SpmOptions& opt) {
  std::vector<SaddlePoint> s =
      opt.label ? labelled_saddles(cfg, p) : find_saddles(cfg, p).saddles;
  return spm_amplitude(cfg, p, std::move(s), opt);
}

QuadratureResult direct_amplitude(const FieldConfig& cfg, double p, const QuadratureOptions& opt) {
  validate(cfg);
  const double w = cfg.omega;
  auto g = [&](cplx u) { return integrand(cfg, p, u / w) / w; };
  return integrate_segment(g, cplx(window_start, 0.0), cplx(window_start + 2.0 * pi, 0.0), opt);
}

PeriodicAmplitude periodic_amplitude(const FieldConfig& cfg, double p, const QuadratureOptions& opt) {
  validate(cfg);
  const double w = cfg.omega;
  auto g = [&](cplx u) { return integrand(cfg, p, u / w) / w; };
  PeriodicAmplitude out;
  const auto win = direct_amplitude(cfg, p, opt);
  out.window = win.value;

  // Runge-Kutta gradient line of Im S from the window start until the
  // integrand is below 1e-17 of its value on the real axis.
  std::vector<cplx> pts{cplx(window_start, 0.0)};
  cplx u = pts.front();
  const double h = 0.01;
  auto dir = [&](cplx z) {
    const cplx d = I * std::conj(action_first_derivative(cfg, p, z / w));
    return d / std::abs(d);
  };
  for (int k = 0; k < 1000000; ++k) {
    if (action(cfg, p, u / w).imag() > 40.0) break;
    const cplx k1 = dir(u);
    const cplx k2 = dir(u + 0.5 * h * k1);
    const cplx k3 = dir(u + 0.5 * h * k2);
    const cplx k4 = dir(u + h * k3);
    u += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    pts.push_back(u);
  }
  const auto v = integrate_polyline(g, pts, opt);
  out.boundary = v.value;
  const cplx phase = std::exp(I * cycle_action(cfg, p));
  out.value = out.window - (1.0 - phase) * out.boundary;
  out.error = win.error + 2.0 * v.error;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

SpectrumTable spectrum(const FieldConfig& cfg, const std::vector<double>& p_grid,
                       const SpectrumOptions& opt) {
  validate(cfg);
  if (p_grid.empty()) throw InvalidArgument("empty momentum grid");
  for (double p : p_grid)
    if (!std::isfinite(p)) throw InvalidArgument("momentum grid must be finite");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (!(p_grid[i] > p_grid[i - 1])) throw InvalidArgument("momentum grid must be strictly increasing");

  SpectrumTable tab;
  tab.cfg = cfg;
  tab.p = p_grid;
  const std::size_t n = p_grid.size();
  tab.total.assign(n, 0.0);
  tab.degenerate.assign(n, false);
  tab.flagged.assign(n, false);
  tab.contributing.assign(n, "");

  if (cfg.E0 == 0.0) {
    tab.labels = {Label::A, Label::B, Label::C, Label::D};
    tab.psi.assign(n, std::vector<std::optional<cplx>>(4));
    tab.notes.push_back("no field: no saddle points, every amplitude vanishes");
    return tab;
  }

  // Labels at the grid point nearest p = 0, then continuation both ways.
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(p_grid[i]) < std::abs(p_grid[i0])) i0 = i;
  const auto start = labelled_saddles(cfg, p_grid[i0], opt.track, opt.track.im_cap);
  std::vector<double> fwd(p_grid.begin() + static_cast<long>(i0), p_grid.end());
  std::vector<double> bwd(p_grid.begin(), p_grid.begin() + static_cast<long>(i0) + 1);
  std::reverse(bwd.begin(), bwd.end());
  SaddleTrack tf = track_in_p(cfg, start, p_grid[i0], fwd, opt.track);
  SaddleTrack tb = track_in_p(cfg, start, p_grid[i0], bwd, opt.track);

  // Both tracks share the starting tracks; any extra tracks get their own columns.
  tab.labels = tf.labels;
  const std::size_t base = start.size();
  for (std::size_t k = base; k < tb.labels.size(); ++k) tab.labels.push_back(tb.labels[k]);
  std::vector<std::vector<std::optional<SaddlePoint>>> node(n);
  std::vector<bool> ambiguous(n, false);
  for (std::size_t k = 0; k < fwd.size(); ++k) {
    auto s = tf.nodes[k].saddles;
    s.resize(tab.labels.size());
    node[i0 + k] = s;
    ambiguous[i0 + k] = tf.nodes[k].ambiguous;
  }
  for (std::size_t k = 1; k < bwd.size(); ++k) {
    std::vector<std::optional<SaddlePoint>> s(tab.labels.size());
    const auto& src = tb.nodes[k].saddles;
    for (std::size_t j = 0; j < src.size(); ++j) {
      const std::size_t col = j < base ? j : j - base + tf.labels.size();
      s[col] = src[j];
    }
    node[i0 - k] = s;
    ambiguous[i0 - k] = tb.nodes[k].ambiguous;
  }
  for (auto& w : tf.warnings) tab.notes.push_back(w);
  for (auto& w : tb.warnings) tab.notes.push_back(w);

  const std::size_t cols = tab.labels.size();
  tab.psi.assign(n, std::vector<std::optional<cplx>>(cols));
  std::vector<std::string> errors(n);
  detail::parallel_for(n, [&](std::size_t i) {
    std::vector<SaddlePoint> list;
    std::vector<std::size_t> column;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& s = node[i][c];
      if (s && s->wt(cfg.omega).imag() < opt.im_cap) {
        list.push_back(*s);
        column.push_back(c);
      }
    }
    tab.flagged[i] = ambiguous[i];
    try {
      const ContourChain chain = build_contour(cfg, p_grid[i], list, opt.contour);
      tab.degenerate[i] = chain.degenerate;
      for (int j : chain.contributing) {
        const SaddlePoint& s = chain.saddles[static_cast<std::size_t>(j)];
        tab.contributing[i] += label_char(s.label);
        if (excluded(opt.exclude, s.label)) continue;
        const OrbitAmplitude o = spm_contribution(s, cfg, p_grid[i]);
        tab.psi[i][column[static_cast<std::size_t>(j)]] = o.psi;
        tab.total[i] += o.psi;
        tab.degenerate[i] = tab.degenerate[i] || o.degenerate_flag;
      }
    } catch (const Error& e) {
      tab.flagged[i] = true;
      tab.psi[i].assign(cols, std::nullopt);
      tab.total[i] = 0.0;
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i].empty()) continue;
    std::ostringstream m;
    m << "p = " << p_grid[i] << ": " << errors[i].substr(0, errors[i].find('\n'));
    tab.notes.push_back(m.str());
  }
  return tab;
}

OrbitYield orbit_yield(const SpectrumTable& tab, Label label) {
  OrbitYield y;
  y.label = label;
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < tab.labels.size(); ++c)
    if (tab.labels[c] == label) cols.push_back(c);
  std::vector<double> xs, fs;
  for (std::size_t i = 0; i < tab.p.size(); ++i) {
    if (tab.degenerate[i] || tab.flagged[i]) {
      ++y.excluded;
      continue;
    }
    double f = 0.0;
    for (std::size_t c : cols)
      if (tab.psi[i][c]) f += std::norm(*tab.psi[i][c]);
    xs.push_back(tab.p[i]);
    fs.push_back(f);
  }
  for (std::size_t i = 1; i < xs.size(); ++i) y.value += 0.5 * (fs[i] + fs[i - 1]) * (xs[i] - xs[i - 1]);
  y.low_confidence = y.excluded > 0.05 * static_cast<double>(tab.p.size());
  return y;
}

std::pair<double, double> spectral_range(const FieldConfig& cfg, const YieldOptions& opt) {
  double lo = opt.p_min, hi = opt.p_max;
  if (!opt.auto_range) return {lo, hi};
  auto mag = [&](double p) {
    try {
      SpmOptions so;
      so.label = false;
      so.contour = opt.spectrum.contour;
      return std::abs(spm_amplitude(cfg, p, so).total);
    } catch (const Error&) {
      return 0.0;
    }
  };
  std::vector<double> scan = linspace(lo, hi, 41);
  std::vector<double> vals(scan.size());
  detail::parallel_for(scan.size(), [&](std::size_t i) { vals[i] = mag(scan[i]); });
  double peak = *std::max_element(vals.begin(), vals.end());
  double flo = vals.front(), fhi = vals.back();
  while ((flo > opt.edge_ratio * peak && lo > -opt.range_limit) ||
         (fhi > opt.edge_ratio * peak && hi < opt.range_limit)) {
    if (flo > opt.edge_ratio * peak && lo > -opt.range_limit) {
      lo -= 1.0;
      for (double q = lo; q < lo + 1.0 - 1e-12; q += 0.1) {
        const double v = mag(q);
        peak = std::max(peak, v);
        if (q == lo) flo = v;
      }
    }
    if (fhi > opt.edge_ratio * peak && hi < opt.range_limit) {
      hi += 1.0;
      for (double q = hi; q > hi - 1.0 + 1e-12; q -= 0.1) {
        const double v = mag(q);
        peak = std::max(peak, v);
        if (q == hi) fhi = v;
      }
    }
  }
  return {lo, hi};
}

std::vector<YieldRow> yield_vs_gamma(double Ip, double I0, const std::vector<double>& gammas,
                                     double theta, const YieldOptions& opt, const FieldConfig& base) {
  if (!(Ip > 0.0) || !(I0 > 0.0)) throw InvalidArgument("Ip and I0 must be positive");
  std::vector<YieldRow> rows;
  for (double g : gammas) {
    if (!(g > 0.0)) throw InvalidArgument("gamma must be positive");
    FieldConfig cfg = base;
    cfg.Ip = Ip;
    cfg.E0 = std::sqrt(I0);
    cfg.theta = theta;
    cfg.omega = omega_for_gamma(g, Ip, I0, theta, cfg.n1, cfg.n2);
    YieldRow row;
    row.gamma = g;
    row.omega = cfg.omega;
    std::tie(row.p_min, row.p_max) = spectral_range(cfg, opt);
    const auto tab = spectrum(cfg, linspace(row.p_min, row.p_max, opt.p_count), opt.spectrum);
    double sum = 0.0;
    for (Label l : {Label::A, Label::B, Label::C, Label::D}) {
      row.yields.push_back(orbit_yield(tab, l));
      sum += row.yields.back().value;
    }
    for (auto& y : row.yields) row.relative.push_back(sum > 0.0 ? y.value / sum : 0.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace switchover
