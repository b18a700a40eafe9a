#include "switchover/saddles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "switchover/error.hpp"

namespace switchover {

char label_char(Label l) {
  switch (l) {
    case Label::A: return 'A';
    case Label::B: return 'B';
    case Label::C: return 'C';
    case Label::D: return 'D';
    default: return '?';
  }
}

Label label_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Label::A;
    case 'B': case 'b': return Label::B;
    case 'C': case 'c': return Label::C;
    case 'D': case 'd': return Label::D;
    default: break;
  }
  throw InvalidArgument(std::string("unknown orbit label '") + c + "'");
}

double wrap_to_window(double x) {
  const double period = 2.0 * pi;
  double r = x - period * std::floor((x - window_start) / period);
  if (r >= window_start + period) r -= period;
  return r;
}

double periodic_distance(cplx a, cplx b) {
  double dx = std::remainder(a.real() - b.real(), 2.0 * pi);
  return std::hypot(dx, a.imag() - b.imag());
}

namespace {

Branch branch_at(const FieldConfig& cfg, double p, cplx t) {
  return (p + vector_potential(cfg, t)).imag() > 0.0 ? Branch::plus : Branch::minus;
}

}  // namespace

std::optional<SaddlePoint> refine_saddle(const FieldConfig& cfg, double p, cplx t0,
                                         const SaddleSearchOptions& opt) {
  const double w = cfg.omega;
  cplx u = t0 * w;
  auto residual = [&](cplx uu) { return action_first_derivative(cfg, p, uu / w); };
  cplx f = residual(u);
  bool converged = false;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const cplx fp = action_second_derivative(cfg, p, u / w) / w;
    if (std::abs(fp) == 0.0 || !std::isfinite(std::abs(fp))) return std::nullopt;
    const cplx du = -f / fp;
    double lam = 1.0;
    cplx un = u + du;
    cplx fn = residual(un);
    int h = 0;
    while (!(std::abs(fn) < std::abs(f)) && h < opt.max_halvings) {
      lam *= 0.5;
      un = u + lam * du;
      fn = residual(un);
      ++h;
    }
    if (!(std::abs(fn) < std::abs(f))) {
      // no decrease: either already at the root to rounding, or stuck
      converged = std::abs(f) < opt.residual_tolerance;
      break;
    }
    u = un;
    f = fn;
    if (std::abs(u.imag()) > 40.0) return std::nullopt;
    if (std::abs(lam * du) < opt.step_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged || !(std::abs(f) < opt.residual_tolerance)) return std::nullopt;
  if (!(u.imag() > 0.0)) return std::nullopt;

  SaddlePoint s;
  s.t = cplx(wrap_to_window(u.real()), u.imag()) / w;
  s.residual = std::abs(action_first_derivative(cfg, p, s.t));
  s.branch = branch_at(cfg, p, s.t);
  return s;
}

SaddleSearch find_saddles(const FieldConfig& cfg, double p, const SaddleSearchOptions& opt) {
  validate(cfg);
  SaddleSearch out;
  const double w = cfg.omega;
  for (int j = 0; j < opt.grid_re; ++j) {
    for (int k = 0; k < opt.grid_im; ++k) {
      const double x = window_start + (j + 0.5) * 2.0 * pi / opt.grid_re;
      const double y = (k + 0.5) * opt.im_cap / opt.grid_im;
      ++out.seeds;
      auto s = refine_saddle(cfg, p, cplx(x, y) / w, opt);
      if (!s) continue;
      ++out.converged;
      const cplx u = s->wt(w);
      if (!(u.imag() < opt.im_cap)) continue;
      bool merged = false;
      for (auto& q : out.saddles) {
        if (periodic_distance(q.wt(w), u) < opt.dedup) {
          if (s->residual < q.residual) q = *s;
          merged = true;
          break;
        }
      }
      if (!merged) out.saddles.push_back(*s);
    }
  }
  std::sort(out.saddles.begin(), out.saddles.end(),
            [](const SaddlePoint& a, const SaddlePoint& b) {
              if (a.t.real() != b.t.real()) return a.t.real() < b.t.real();
              return a.t.imag() < b.t.imag();
            });
  if (out.converged == 0) {
    std::ostringstream m;
    m << "Newton iteration on S' did not converge from any of " << out.seeds << " seeds";
    out.diagnostic = m.str();
  }
  return out;
}

std::vector<cplx> analytic_saddles_monochromatic(double E, double omega, double Ip, double p,
                                                 int harmonic, double im_cap) {
  if (!(omega > 0.0) || !(Ip > 0.0) || harmonic < 1)
    throw InvalidArgument("analytic saddles need omega > 0, Ip > 0 and harmonic >= 1");
  std::vector<cplx> out;
  if (E == 0.0) return out;
  const double n = harmonic;
  const double kappa = std::sqrt(2.0 * Ip);
  // A = -(E / (n w)) sin(n w t); p + A = +-i kappa  =>  sin(n w t) = (p -+ i kappa) n w / E
  for (double sgn : {1.0, -1.0}) {
    const cplx z = cplx(p, -sgn * kappa) * n * omega / E;
    const cplx w0 = std::asin(z);
    for (cplx w : {w0, pi - w0}) {
      for (int k = -2 * harmonic - 1; k <= 2 * harmonic + 1; ++k) {
        const cplx u = (w + 2.0 * pi * k) / n;
        if (!(u.imag() > 0.0 && u.imag() < im_cap)) continue;
        const cplx c(wrap_to_window(u.real()), u.imag());
        bool dup = false;
        for (auto& q : out) dup = dup || periodic_distance(q, c) < 1e-9;
        if (!dup) out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return out;
}

// ---------------------------------------------------------------------------
// Continuation

namespace {

struct Endpoint {
  FieldConfig cfg;
  double p;
};

Endpoint interpolate(const Endpoint& a, const Endpoint& b, double s) {
  Endpoint e = a;
  e.cfg.theta = a.cfg.theta + s * (b.cfg.theta - a.cfg.theta);
  e.cfg.omega = a.cfg.omega + s * (b.cfg.omega - a.cfg.omega);
  e.cfg.E0 = a.cfg.E0 + s * (b.cfg.E0 - a.cfg.E0);
  e.p = a.p + s * (b.p - a.p);
  if (s == 1.0) e = b;
  return e;
}

double min_separation(const std::vector<cplx>& u, std::size_t* ia = nullptr,
                      std::size_t* ib = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const double d = periodic_distance(u[i], u[j]);
      if (d < best) {
        best = d;
        if (ia) *ia = i;
        if (ib) *ib = j;
      }
    }
  return best;
}

// Injective matching of present tracks to new roots minimising total distance.
struct Match {
  std::vector<int> root_of_track;  // -1: track ends
  double cost = 0.0;
  bool tie = false;
};

class Matcher {
 public:
  Matcher(const std::vector<cplx>& old_u, const std::vector<cplx>& new_u,
          const std::vector<int>& order)
      : old_(old_u), new_(new_u), order_(order) {}

  Match run() {
    const std::size_t need = std::min(old_.size(), new_.size());
    std::vector<int> cur(old_.size(), -1);
    std::vector<bool> used(new_.size(), false);
    if (old_.size() <= 9 && new_.size() <= 9) {
      search(0, 0.0, need, 0, cur, used);
    } else {
      greedy();
    }
    Match m;
    m.root_of_track = best_;
    m.cost = best_cost_;
    m.tie = tie_;
    return m;
  }

 private:
  static constexpr double tie_tol = 1e-9;

  // Lexicographic key used to break exact ties: in label order, earlier labels
  // take the root with smaller Im(wt), then smaller Re(wt).
  bool prefer(const std::vector<int>& a, const std::vector<int>& b) const {
    for (int k : order_) {
      const int ra = a[k], rb = b[k];
      if (ra == rb) continue;
      if (ra < 0) return false;
      if (rb < 0) return true;
      const double ya = new_[ra].imag(), yb = new_[rb].imag();
      if (std::abs(ya - yb) > 1e-9) return ya < yb;
      return new_[ra].real() < new_[rb].real();
    }
    return false;
  }

  void consider(const std::vector<int>& cur, double cost) {
    if (best_.empty() || cost < best_cost_ - tie_tol) {
      tie_ = false;
      best_ = cur;
      best_cost_ = cost;
    } else if (std::abs(cost - best_cost_) <= tie_tol) {
      tie_ = true;
      if (prefer(cur, best_)) {
        best_ = cur;
        best_cost_ = std::min(cost, best_cost_);
      }
    }
  }

  void search(std::size_t i, double cost, std::size_t need, std::size_t matched,
              std::vector<int>& cur, std::vector<bool>& used) {
    if (!best_.empty() && cost > best_cost_ + tie_tol) return;
    if (i == old_.size()) {
      if (matched == need) consider(cur, cost);
      return;
    }
    const std::size_t remaining = old_.size() - i;
    for (std::size_t r = 0; r < new_.size(); ++r) {
      if (used[r]) continue;
      used[r] = true;
      cur[i] = static_cast<int>(r);
      search(i + 1, cost + periodic_distance(old_[i], new_[r]), need, matched + 1, cur, used);
      used[r] = false;
      cur[i] = -1;
    }
    if (remaining > need - matched) search(i + 1, cost, need, matched, cur, used);
  }

  void greedy() {
    best_.assign(old_.size(), -1);
    std::vector<bool> used(new_.size(), false);
    best_cost_ = 0.0;
    for (std::size_t i = 0; i < old_.size(); ++i) {
      int bi = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < new_.size(); ++r) {
        if (used[r]) continue;
        const double d = periodic_distance(old_[i], new_[r]);
        if (d < bd) { bd = d; bi = static_cast<int>(r); }
      }
      if (bi >= 0) { used[bi] = true; best_[i] = bi; best_cost_ += bd; }
    }
  }

  const std::vector<cplx>& old_;
  const std::vector<cplx>& new_;
  std::vector<int> order_;
  std::vector<int> best_;
  double best_cost_ = 0.0;
  bool tie_ = false;
};

int label_rank(Label l) { return static_cast<int>(l); }

class Tracker {
 public:
  Tracker(const TrackOptions& opt, std::vector<Label> labels,
          std::vector<std::optional<SaddlePoint>> start, std::vector<std::string>* warnings)
      : opt_(opt), labels_(std::move(labels)), cur_(std::move(start)), warnings_(warnings) {}

  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<std::optional<SaddlePoint>>& current() const { return cur_; }

  void advance(const Endpoint& a, const Endpoint& b) {
    const double dth = std::abs(b.cfg.theta - a.cfg.theta) / opt_.max_theta_step;
    const double dp = std::abs(b.p - a.p) / opt_.max_p_step;
    const double dw = std::abs(b.cfg.omega - a.cfg.omega) / (0.05 * a.cfg.omega);
    const double de = a.cfg.E0 > 0 ? std::abs(b.cfg.E0 - a.cfg.E0) / (0.05 * a.cfg.E0) : 0.0;
    const int n = std::max(1, static_cast<int>(std::ceil(std::max({dth, dp, dw, de}))));
    const double h0 = 1.0 / n;
    double s = 0.0, h = h0;
    while (s < 1.0 - 1e-15) {
      h = std::min(h, 1.0 - s);
      int halvings = 0;
      for (;;) {
        const double sn = (s + h >= 1.0 - 1e-15) ? 1.0 : s + h;
        const Endpoint e = interpolate(a, b, sn);
        auto roots = find_roots(e, sn == 1.0);
        Outcome o = match(roots, e);
        const bool may_halve = halvings < opt_.max_halvings;
        // Inside the guard the spacing collapses like a square root, so the
        // displacement test cannot be met; there the tie-break decides.
        if (o.close) {
          if (may_halve && h > h0 / 64.0) { h *= 0.5; ++halvings; continue; }
          o.ok = true;
        } else if (!o.ok && may_halve) {
          h *= 0.5; ++halvings; continue;
        }
        if (!o.ok) {
          std::ostringstream m;
          m << "ambiguous continuation accepted at theta=" << deg(e.cfg.theta)
            << " deg, p=" << e.p;
          warn(m.str());
          ambiguous_ = true;
        }
        apply(o, roots);
        s = sn;
        break;
      }
      h = std::min(2.0 * h, h0);
    }
  }

  // Mark saddles closer than the guard to any other present saddle.
  void flag_degenerate(double omega) {
    for (auto& s : cur_) if (s) s->degenerate = false;
    for (std::size_t i = 0; i < cur_.size(); ++i)
      for (std::size_t j = i + 1; j < cur_.size(); ++j) {
        if (!cur_[i] || !cur_[j]) continue;
        if (periodic_distance(cur_[i]->wt(omega), cur_[j]->wt(omega)) < opt_.guard) {
          cur_[i]->degenerate = true;
          cur_[j]->degenerate = true;
        }
      }
  }

 private:
  struct Outcome {
    Match m;
    bool ok = true;
    bool close = false;
  };

  // Newton from the current positions; the seed grid is used at the end of
  // every interval and whenever the local solves do not give distinct roots.
  std::vector<SaddlePoint> find_roots(const Endpoint& e, bool full) {
    SaddleSearchOptions so;
    so.im_cap = opt_.im_cap;
    const double w = e.cfg.omega;
    if (!full) {
      std::vector<SaddlePoint> roots;
      bool good = true;
      for (auto& c : cur_) {
        if (!c) continue;
        auto r = refine_saddle(e.cfg, e.p, c->t * omega_ / w, so);
        if (!r) { good = false; break; }
        if (!(r->wt(w).imag() < opt_.im_cap)) continue;
        for (auto& q : roots)
          if (periodic_distance(q.wt(w), r->wt(w)) < so.dedup) good = false;
        if (!good) break;
        roots.push_back(*r);
      }
      if (good) return roots;
    }
    return find_saddles(e.cfg, e.p, so).saddles;
  }

  Outcome match(const std::vector<SaddlePoint>& roots, const Endpoint& e) {
    const double w = e.cfg.omega;
    std::vector<cplx> old_u, new_u;
    std::vector<int> present;
    for (std::size_t i = 0; i < cur_.size(); ++i)
      if (cur_[i]) {
        present.push_back(static_cast<int>(i));
        old_u.push_back(cur_[i]->t * omega_);
      }
    for (auto& r : roots) new_u.push_back(r.wt(w));

    std::vector<int> order(present.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return label_rank(labels_[present[x]]) < label_rank(labels_[present[y]]);
    });

    Outcome o;
    Matcher mm(old_u, new_u, order);
    Match local = mm.run();
    o.m.tie = local.tie;
    o.m.cost = local.cost;
    o.m.root_of_track.assign(cur_.size(), -1);
    for (std::size_t k = 0; k < present.size(); ++k)
      o.m.root_of_track[present[k]] = local.root_of_track[k];

    o.close = min_separation(new_u) < opt_.guard;
    // Each move must be small compared to the spacing of the new roots,
    // otherwise nearest continuation is not trustworthy.
    for (std::size_t k = 0; k < present.size(); ++k) {
      const int r = local.root_of_track[k];
      if (r < 0) {
        // only tracks close to the cap may disappear
        if (old_u[k].imag() < opt_.im_cap - 1.0) o.ok = false;
        continue;
      }
      double spacing = std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < new_u.size(); ++q)
        if (static_cast<int>(q) != r) spacing = std::min(spacing, periodic_distance(new_u[r], new_u[q]));
      if (periodic_distance(old_u[k], new_u[r]) > 0.3 * spacing) o.ok = false;
    }
    std::vector<bool> used(new_u.size(), false);
    for (int r : local.root_of_track) if (r >= 0) used[r] = true;
    for (std::size_t q = 0; q < new_u.size(); ++q)
      if (!used[q] && new_u[q].imag() < opt_.im_cap - 1.0 && !present.empty()) o.ok = false;
    pending_omega_ = w;
    return o;
  }

  void apply(const Outcome& o, const std::vector<SaddlePoint>& roots) {
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < cur_.size(); ++i) {
      const int r = o.m.root_of_track[i];
      if (r >= 0) {
        SaddlePoint s = roots[r];
        s.label = labels_[i];
        cur_[i] = s;
        used[r] = true;
      } else {
        cur_[i].reset();
      }
    }
    for (std::size_t q = 0; q < roots.size(); ++q) {
      if (used[q]) continue;
      labels_.push_back(Label::unassigned);
      cur_.push_back(roots[q]);
    }
    omega_ = pending_omega_;
  }

  void warn(const std::string& m) {
    if (warnings_) warnings_->push_back(m);
  }

 public:
  void set_omega(double w) { omega_ = w; }
  bool take_ambiguous() {
    const bool a = ambiguous_;
    ambiguous_ = false;
    return a;
  }

 private:
  const TrackOptions& opt_;
  std::vector<Label> labels_;
  std::vector<std::optional<SaddlePoint>> cur_;
  std::vector<std::string>* warnings_;
  double omega_ = 1.0;
  double pending_omega_ = 1.0;
  bool ambiguous_ = false;
};

constexpr double theta_top = 89.5 * pi / 180.0;

// Labelled set at (theta_top, p = 0) followed along theta and then p.
Tracker start_tracker(const FieldConfig& cfg, const TrackOptions& opt,
                      std::vector<std::string>* warnings) {
  FieldConfig top = cfg.with_theta(theta_top);
  SaddleSearchOptions so;
  so.im_cap = opt.im_cap;
  auto roots = find_saddles(top, 0.0, so).saddles;  // sorted by Re(wt) from -pi/2
  if (roots.empty())
    throw NumericalError("no saddle points found at the reference configuration");
  std::vector<Label> labels;
  std::vector<std::optional<SaddlePoint>> start;
  const Label order[] = {Label::A, Label::B, Label::C, Label::D};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Label l = i < 4 ? order[i] : Label::unassigned;
    roots[i].label = l;
    labels.push_back(l);
    start.push_back(roots[i]);
  }
  Tracker tr(opt, labels, start, warnings);
  tr.set_omega(cfg.omega);
  return tr;
}

std::vector<SaddlePoint> present_saddles(const Tracker& tr, double omega, double im_cap) {
  std::vector<SaddlePoint> out;
  for (auto& s : tr.current())
    if (s && s->wt(omega).imag() < im_cap) out.push_back(*s);
  std::stable_sort(out.begin(), out.end(), [](const SaddlePoint& a, const SaddlePoint& b) {
    if (a.label != b.label) return label_rank(a.label) < label_rank(b.label);
    return a.t.real() < b.t.real();
  });
  return out;
}

}  // namespace

std::vector<SaddlePoint> labelled_saddles(const FieldConfig& cfg, double p,
                                          const TrackOptions& opt, double im_cap) {
  validate(cfg);
  if (cfg.E0 == 0.0) return {};
  std::vector<std::string> warnings;
  Tracker tr = start_tracker(cfg, opt, &warnings);
  Endpoint a{cfg.with_theta(theta_top), 0.0};
  Endpoint b{cfg, 0.0};
  if (cfg.theta != theta_top) tr.advance(a, b);
  if (p != 0.0) tr.advance(b, Endpoint{cfg, p});
  tr.flag_degenerate(cfg.omega);
  return present_saddles(tr, cfg.omega, im_cap);
}

SaddleTrack track_saddles(const std::vector<FieldConfig>& sweep, double p,
                          const TrackOptions& opt) {
  if (sweep.empty()) throw InvalidArgument("empty sweep");
  for (auto& c : sweep) validate(c);
  for (auto& c : sweep)
    if (c.E0 == 0.0) throw NumericalError("no saddle points: S' = Ip + p^2/2 > 0 without a field");

  const bool reversed = sweep.back().theta > sweep.front().theta;
  std::vector<FieldConfig> order(sweep);
  if (reversed) std::reverse(order.begin(), order.end());

  SaddleTrack out;
  auto start = labelled_saddles(order.front(), p, opt, opt.im_cap);
  if (start.empty()) throw NumericalError("no saddle points at the start of the sweep");
  std::vector<Label> labels;
  std::vector<std::optional<SaddlePoint>> cur;
  for (auto& s : start) {
    labels.push_back(s.label);
    cur.push_back(s);
  }
  Tracker tr(opt, labels, cur, &out.warnings);
  tr.set_omega(order.front().omega);
  tr.flag_degenerate(order.front().omega);
  out.nodes.push_back(TrackNode{order.front(), p, tr.current(), tr.take_ambiguous()});
  for (std::size_t k = 1; k < order.size(); ++k) {
    tr.advance(Endpoint{order[k - 1], p}, Endpoint{order[k], p});
    tr.flag_degenerate(order[k].omega);
    out.nodes.push_back(TrackNode{order[k], p, tr.current(), tr.take_ambiguous()});
  }
  out.labels = tr.labels();
  for (auto& n : out.nodes) n.saddles.resize(out.labels.size());
  if (reversed) std::reverse(out.nodes.begin(), out.nodes.end());
  return out;
}

SaddleTrack track_in_p(const FieldConfig& cfg, const std::vector<SaddlePoint>& start,
                       double p_from, const std::vector<double>& ps, const TrackOptions& opt) {
  validate(cfg);
  SaddleTrack out;
  std::vector<Label> labels;
  std::vector<std::optional<SaddlePoint>> cur;
  for (auto& s : start) {
    labels.push_back(s.label);
    cur.push_back(s);
  }
  Tracker tr(opt, labels, cur, &out.warnings);
  tr.set_omega(cfg.omega);
  double prev = p_from;
  for (double p : ps) {
    if (p != prev) tr.advance(Endpoint{cfg, prev}, Endpoint{cfg, p});
    tr.flag_degenerate(cfg.omega);
    out.nodes.push_back(TrackNode{cfg, p, tr.current(), tr.take_ambiguous()});
    prev = p;
  }
  out.labels = tr.labels();
  for (auto& n : out.nodes) n.saddles.resize(out.labels.size());
  return out;
}

// ---------------------------------------------------------------------------
// Coalescence

namespace {

struct CoalescenceEval {
  Eigen::Vector4d F;
  Eigen::Matrix<double, 4, 3> J;
};

CoalescenceEval coalescence_system(const FieldConfig& base, double p, const Eigen::Vector3d& x) {
  FieldConfig cfg = base.with_theta(x(2));
  const double w = cfg.omega;
  const cplx u(x(0), x(1));
  const cplx t = u / w;
  const cplx v = p + vector_potential(cfg, t);
  const cplx e = electric_field(cfg, t);
  const cplx s1 = cfg.Ip + 0.5 * v * v;
  const cplx s2 = -v * e;
  const cplx s3 = e * e - v * field_derivative(cfg, t);

  const double k1 = cfg.n1 * w, k2 = cfg.n2 * w;
  const double st = std::sin(x(2)), ct = std::cos(x(2));
  const cplx dA = cfg.E0 * st / k1 * std::sin(k1 * t) + cfg.E0 * ct / k2 * std::sin(k2 * t + cfg.phi2);
  const cplx dE = -cfg.E0 * st * std::cos(k1 * t) - cfg.E0 * ct * std::cos(k2 * t + cfg.phi2);
  const cplx ds1_dth = v * dA;
  const cplx ds2_dth = -dA * e - v * dE;

  CoalescenceEval r;
  r.F << s1.real(), s1.imag(), s2.real(), s2.imag();
  const cplx d1u = s2 / w, d2u = s3 / w;
  const cplx d1y = cplx(0, 1) * d1u, d2y = cplx(0, 1) * d2u;
  r.J << d1u.real(), d1y.real(), ds1_dth.real(),
         d1u.imag(), d1y.imag(), ds1_dth.imag(),
         d2u.real(), d2y.real(), ds2_dth.real(),
         d2u.imag(), d2y.imag(), ds2_dth.imag();
  return r;
}

double sup(const Eigen::Vector4d& f) {
  return std::max(std::hypot(f(0), f(1)), std::hypot(f(2), f(3)));
}

}  // namespace

CoalescencePoint find_coalescence(const FieldConfig& base, double p, const CoalescenceOptions& opt,
                                  std::optional<cplx> seed_t, std::optional<double> seed_theta) {
  if (p != 0.0)
    throw InvalidArgument("coalescence search is implemented for p = 0 only");
  validate(base.with_theta(0.25 * pi));
  if (base.E0 == 0.0) throw InvalidArgument("coalescence needs a non-zero field");

  Eigen::Vector3d x;
  if (seed_t && seed_theta) {
    x << (*seed_t * base.omega).real(), (*seed_t * base.omega).imag(), *seed_theta;
  } else {
    std::vector<FieldConfig> sweep;
    const double lo = 0.5 * pi / 180.0;
    for (double th = theta_top; th > lo; th -= opt.theta_step) sweep.push_back(base.with_theta(th));
    sweep.push_back(base.with_theta(lo));
    TrackOptions to;
    SaddleTrack tr = track_saddles(sweep, p, to);
    double best = std::numeric_limits<double>::infinity();
    const TrackNode* node = nullptr;
    std::size_t bi = 0, bj = 0;
    for (std::size_t k = 1; k + 1 < tr.nodes.size(); ++k) {
      const auto& n = tr.nodes[k];
      for (std::size_t i = 0; i < n.saddles.size(); ++i)
        for (std::size_t j = i + 1; j < n.saddles.size(); ++j) {
          if (!n.saddles[i] || !n.saddles[j]) continue;
          if (n.saddles[i]->branch != n.saddles[j]->branch) continue;
          const double d = periodic_distance(n.saddles[i]->wt(n.cfg.omega), n.saddles[j]->wt(n.cfg.omega));
          if (d < best) {
            best = d;
            node = &n;
            bi = i;
            bj = j;
          }
        }
    }
    if (!node)
      throw NumericalError("no pair of same-branch saddles approaches along the theta sweep");
    const cplx ua = node->saddles[bi]->wt(node->cfg.omega);
    cplx ub = node->saddles[bj]->wt(node->cfg.omega);
    ub -= 2.0 * pi * std::round((ub.real() - ua.real()) / (2.0 * pi));
    const cplx mid = 0.5 * (ua + ub);
    x << mid.real(), mid.imag(), node->cfg.theta;
  }

  CoalescenceEval ev = coalescence_system(base, p, x);
  double f = sup(ev.F);
  int it = 0;
  for (; it < opt.max_iterations && f > opt.tolerance; ++it) {
    Eigen::Vector3d dx = ev.J.colPivHouseholderQr().solve(-ev.F);
    double lam = 1.0;
    Eigen::Vector3d xn = x + dx;
    CoalescenceEval en = coalescence_system(base, p, xn);
    int h = 0;
    while (!(sup(en.F) < f) && h < 30) {
      lam *= 0.5;
      xn = x + lam * dx;
      en = coalescence_system(base, p, xn);
      ++h;
    }
    if (!(sup(en.F) < f)) break;
    x = xn;
    ev = en;
    f = sup(ev.F);
    if ((lam * dx).norm() < 1e-15) break;
  }
  if (!(f < 1e-9)) {
    std::ostringstream m;
    m.precision(12);
    m << "coalescence Newton did not converge: residual " << f << " at wt = " << x(0) << " + "
      << x(1) << "i, theta = " << deg(x(2)) << " deg";
    throw NumericalError(m.str());
  }
  if (!(x(2) > 0.0 && x(2) < 0.5 * pi)) throw NumericalError("coalescence angle outside (0, 90) deg");

  CoalescencePoint c;
  c.theta_star = x(2);
  c.R_star = std::tan(x(2));
  c.t_star = cplx(wrap_to_window(x(0)), x(1)) / base.omega;
  c.gamma = keldysh_gamma(base.with_theta(x(2)));
  c.residual = f;
  c.iterations = it;
  return c;
}

std::vector<RStarRow> rstar_curve(const std::vector<double>& gammas, double Ip, double I0,
                                  const FieldConfig& base) {
  std::vector<RStarRow> rows;
  for (double g : gammas) {
    FieldConfig cfg = base;
    cfg.Ip = Ip;
    cfg.E0 = std::sqrt(I0);
    cfg.omega = omega_for_gamma(g, Ip, I0, 0.25 * pi, cfg.n1, cfg.n2);
    RStarRow r;
    r.gamma = g;
    r.omega = cfg.omega;
    r.point = find_coalescence(cfg, 0.0);
    r.small_gamma_asymptote = 1.0 - std::cbrt(135.0 / 32.0) * std::pow(g, 1.5);
    r.large_gamma_asymptote = 1.0 / (4.0 * g);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace switchover
