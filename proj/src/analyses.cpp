#include "switchover/analyses.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "switchover/error.hpp"
#include "switchover/trajectory.hpp"

namespace switchover {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr Label abcd[] = {Label::A, Label::B, Label::C, Label::D};
const char* version = "1.0.0";

std::string lc(Label l) { return std::string(1, label_char(l)); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

void describe(Table& t, const RunConfig& rc, const FieldConfig& f) {
  t.add_meta("version", version);
  t.add_meta("intensity_au", f.E0 * f.E0);
  t.add_meta("intensity_wcm2", f.E0 * f.E0 * units::intensity_au_in_wcm2);
  t.add_meta("omega_au", f.omega);
  t.add_meta("wavelength_nm", units::nm_times_omega_au / f.omega);
  t.add_meta("theta_deg", deg(f.theta));
  t.add_meta("phi2_rad", f.phi2);
  t.add_meta("orders", std::to_string(f.n1) + "," + std::to_string(f.n2));
  t.add_meta("ip_au", f.Ip);
  t.add_meta("p_grid", format_double(rc.p_min) + " " + format_double(rc.p_max) + " " +
                           std::to_string(rc.p_count));
  std::string ex;
  for (Label l : rc.exclude) ex += label_char(l);
  t.add_meta("exclude", ex.empty() ? "none" : ex);
  t.add_meta("saddle_tolerance", "Newton |S'| < 1e-10, |d wt| < 1e-12");
  t.add_meta("coalescence_guard_wt", 0.05);
  t.add_meta("action_reference", "S(p,0) = 0, integrand P exp(+iS)");
}

std::optional<SaddlePoint> find_label(const std::vector<SaddlePoint>& v, Label l) {
  for (const auto& s : v)
    if (s.label == l) return s;
  return std::nullopt;
}

}  // namespace

std::vector<double> default_yield_gammas() { return {0.3, 0.5, 0.675, 1.0, 1.5}; }
std::vector<double> default_rstar_gammas() { return {0.05, 0.08, 0.15, 0.3, 0.5, 0.675, 1.0, 2.0, 5.0}; }
std::vector<double> default_thetas_deg() {
  std::vector<double> v;
  for (int k = 0; k <= 45; ++k) v.push_back(2.0 * k);
  return v;
}

void validate(const RunConfig& rc) {
  validate(rc.field);
  if (!(rc.field.E0 > 0.0)) throw InvalidArgument("intensity must be positive");
  if (!(rc.field.Ip > 0.0)) throw InvalidArgument("ionisation potential must be positive");
  if (rc.field.theta < 0.0 || rc.field.theta > 0.5 * pi + 1e-12)
    throw InvalidArgument("theta must lie in [0, 90] degrees");
  if (!std::isfinite(rc.p_min) || !std::isfinite(rc.p_max) || !(rc.p_max > rc.p_min))
    throw InvalidArgument("need p_min < p_max");
  if (rc.p_count < 2) throw InvalidArgument("p_count must be at least 2");
  if (rc.grid_res < 2) throw InvalidArgument("grid_res must be at least 2");
  for (double g : rc.gammas)
    if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("gamma values must be positive");
  for (double th : rc.thetas_deg)
    if (!(th >= 0.0 && th <= 90.0)) throw InvalidArgument("theta values must lie in [0, 90] degrees");
}

std::vector<Table> run_landscape(const RunConfig& rc) {
  validate(rc);
  const FieldConfig& f = rc.field;
  const double p = 0.0;

  Table land("landscape");
  describe(land, rc, f);
  land.add_meta("p_au", p);
  for (auto* c : {"re_wt", "im_wt"}) land.add_column(c, "rad");
  land.add_column("imS");
  land.add_column("reS");
  land.add_meta("grid", std::to_string(rc.grid_res) + "x" + std::to_string(std::max(2, rc.grid_res / 2)));
  for (const auto& q : action_landscape(f, p, rc.grid_res, std::max(2, rc.grid_res / 2)))
    land.add_row({q.re_wt, q.im_wt, q.im_S, q.re_S});

  const auto saddles = labelled_saddles(f, p);
  const ContourChain chain = build_contour(f, p, saddles);

  Table sad("saddles");
  describe(sad, rc, f);
  sad.add_meta("p_au", p);
  std::string contributing;
  for (Label l : chain.contributing_labels()) contributing += label_char(l);
  sad.add_meta("contributing", contributing);
  sad.add_meta("n_contributing", static_cast<double>(chain.contributing.size()));
  sad.add_column("label");
  sad.add_column("re_wt", "rad");
  sad.add_column("im_wt", "rad");
  sad.add_column("im_S");
  sad.add_column("re_S");
  sad.add_column("residual");
  sad.add_column("contributes");
  sad.add_column("degenerate");
  for (const auto& s : chain.saddles) {
    const cplx u = s.wt(f.omega);
    const cplx S = action(f, p, s.t);
    sad.add_row({lc(s.label), u.real(), u.imag(), S.imag(), S.real(), s.residual,
                 std::int64_t{s.contributes}, std::int64_t{s.degenerate}});
  }

  Table con("contour");
  describe(con, rc, f);
  con.add_meta("p_au", p);
  con.add_meta("contributing", contributing);
  for (const auto& n : chain.notes) con.add_meta("note", n);
  con.add_column("segment");
  con.add_column("kind");
  con.add_column("saddle");
  con.add_column("re_wt", "rad");
  con.add_column("im_wt", "rad");
  static const char* kinds[] = {"left_end", "saddle_path", "valley_arc", "right_end"};
  for (std::size_t k = 0; k < chain.segments.size(); ++k) {
    const auto& seg = chain.segments[k];
    const std::string who =
        seg.saddle >= 0 ? lc(chain.saddles[static_cast<std::size_t>(seg.saddle)].label) : "-";
    for (cplx u : seg.points)
      con.add_row({static_cast<std::int64_t>(k), kinds[static_cast<int>(seg.kind)], who, u.real(), u.imag()});
  }
  return {land, sad, con};
}

std::vector<Table> run_switchover(const RunConfig& rc) {
  validate(rc);
  const std::vector<double> thetas = rc.thetas_deg.empty() ? default_thetas_deg() : rc.thetas_deg;
  std::vector<FieldConfig> sweep;
  for (double th : thetas) sweep.push_back(rc.field.with_theta(rad(th)));
  const double p = 0.0;
  const SaddleTrack track = track_saddles(sweep, p);

  Table t("switchover");
  describe(t, rc, rc.field);
  t.add_meta("theta_list_deg", join(thetas));
  t.add_meta("p_au", p);
  t.add_column("theta_deg", "deg");
  t.add_column("ratio");
  t.add_column("n_saddles");
  t.add_column("n_contributing");
  t.add_column("contributing");
  t.add_column("degenerate");
  for (Label l : abcd) {
    t.add_column("re_wt_" + lc(l), "rad");
    t.add_column("im_wt_" + lc(l), "rad");
    t.add_column("contrib_" + lc(l));
  }

  std::vector<std::vector<Cell>> rows(sweep.size());
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const FieldConfig& f = sweep[i];
    std::vector<SaddlePoint> present;
    for (const auto& s : track.nodes[i].saddles)
      if (s && s->wt(f.omega).imag() < 3.0) present.push_back(*s);
    const ContourChain chain = build_contour(f, p, present);
    std::string contributing;
    for (Label l : chain.contributing_labels()) contributing += label_char(l);
    std::vector<Cell> row{thetas[i], std::tan(f.theta), static_cast<std::int64_t>(chain.saddles.size()),
                          static_cast<std::int64_t>(chain.contributing.size()), contributing,
                          std::int64_t{chain.degenerate}};
    for (Label l : abcd) {
      const auto s = find_label(chain.saddles, l);
      if (s) {
        const cplx u = s->wt(f.omega);
        row.insert(row.end(), {u.real(), u.imag(), std::int64_t{s->contributes}});
      } else {
        row.insert(row.end(), {nan, nan, std::int64_t{0}});
      }
    }
    rows[i] = std::move(row);
    for (const auto& n : chain.notes) t.add_meta("note", "theta " + format_double(thetas[i]) + ": " + n);
  }
  for (const auto& w : track.warnings) t.add_meta("warning", w);

  if (thetas.size() > 1) {
    // Only report the coalescence when the sweep brackets it.
    const CoalescencePoint c = find_coalescence(rc.field.with_theta(rad(45.0)), p);
    double lo = thetas.front(), hi = thetas.front();
    for (double th : thetas) {
      lo = std::min(lo, th);
      hi = std::max(hi, th);
    }
    const double ts = deg(c.theta_star);
    if (ts >= lo && ts <= hi) {
      t.add_meta("theta_star_deg", ts);
      t.add_meta("R_star", c.R_star);
      t.add_meta("re_wt_star", (c.t_star * rc.field.omega).real());
      t.add_meta("im_wt_star", (c.t_star * rc.field.omega).imag());
      t.add_meta("coalescence_residual", c.residual);
    }
  }
  for (auto& r : rows) t.add_row(std::move(r));
  return {t};
}

std::vector<Table> run_spectrum(const RunConfig& rc) {
  validate(rc);
  SpectrumOptions opt;
  opt.exclude = rc.exclude;
  const SpectrumTable s = spectrum(rc.field, linspace(rc.p_min, rc.p_max, rc.p_count), opt);

  Table t("spectrum");
  describe(t, rc, rc.field);
  for (const auto& n : s.notes) t.add_meta("note", n);
  t.add_column("p", "au");
  t.add_column("abs_total");
  t.add_column("re_total");
  t.add_column("im_total");
  for (Label l : abcd) {
    t.add_column("abs_" + lc(l));
    t.add_column("re_" + lc(l));
    t.add_column("im_" + lc(l));
  }
  t.add_column("contributing");
  t.add_column("degenerate");
  t.add_column("flagged");
  for (std::size_t i = 0; i < s.p.size(); ++i) {
    std::vector<Cell> row{s.p[i], std::abs(s.total[i]), s.total[i].real(), s.total[i].imag()};
    for (Label l : abcd) {
      std::optional<cplx> v;
      for (std::size_t c = 0; c < s.labels.size(); ++c)
        if (s.labels[c] == l && s.psi[i][c]) v = v.value_or(0.0) + *s.psi[i][c];
      if (v)
        row.insert(row.end(), {std::abs(*v), v->real(), v->imag()});
      else
        row.insert(row.end(), {0.0, 0.0, 0.0});
    }
    row.insert(row.end(), {s.contributing[i], std::int64_t{s.degenerate[i]}, std::int64_t{s.flagged[i]}});
    t.add_row(std::move(row));
  }
  for (Label l : abcd) {
    const OrbitYield y = orbit_yield(s, l);
    t.add_meta("yield_" + lc(l), y.value);
    if (y.low_confidence) t.add_meta("low_confidence_" + lc(l), "1");
  }
  return {t};
}

std::vector<Table> run_yields(const RunConfig& rc) {
  validate(rc);
  const std::vector<double> gammas = rc.gammas.empty() ? default_yield_gammas() : rc.gammas;
  YieldOptions opt;
  opt.p_min = rc.p_min;
  opt.p_max = rc.p_max;
  opt.p_count = rc.p_count;
  opt.spectrum.exclude = rc.exclude;
  const auto rows = yield_vs_gamma(rc.field.Ip, rc.intensity_au(), gammas, rc.field.theta, opt, rc.field);

  Table t("yields");
  describe(t, rc, rc.field);
  t.add_meta("gamma_list", join(gammas));
  t.add_meta("gamma_realised_by", "omega at fixed Ip and intensity");
  t.add_meta("edge_ratio", opt.edge_ratio);
  t.add_column("gamma");
  t.add_column("omega", "au");
  t.add_column("wavelength", "nm");
  t.add_column("p_min", "au");
  t.add_column("p_max", "au");
  for (Label l : abcd) t.add_column("Y_" + lc(l));
  for (Label l : abcd) t.add_column("rel_" + lc(l));
  t.add_column("excluded_points");
  t.add_column("low_confidence");
  for (const auto& r : rows) {
    std::vector<Cell> row{r.gamma, r.omega, units::nm_times_omega_au / r.omega, r.p_min, r.p_max};
    std::int64_t excluded = 0, low = 0;
    for (const auto& y : r.yields) {
      row.push_back(y.value);
      excluded = std::max<std::int64_t>(excluded, y.excluded);
      low = low || y.low_confidence;
    }
    for (double v : r.relative) row.push_back(v);
    row.insert(row.end(), {excluded, low});
    t.add_row(std::move(row));
  }
  return {t};
}

std::vector<Table> run_rstar(const RunConfig& rc) {
  validate(rc);
  const std::vector<double> gammas = rc.gammas.empty() ? default_rstar_gammas() : rc.gammas;
  const auto rows = rstar_curve(gammas, rc.field.Ip, rc.intensity_au(), rc.field);

  Table t("rstar");
  describe(t, rc, rc.field);
  t.add_meta("gamma_list", join(gammas));
  t.add_meta("gamma_definition", "4 omega sqrt(Ip / (5 I0)), equal amplitudes");
  t.add_column("gamma");
  t.add_column("omega", "au");
  t.add_column("wavelength", "nm");
  t.add_column("theta_star", "deg");
  t.add_column("R_star");
  t.add_column("re_wt_star", "rad");
  t.add_column("im_wt_star", "rad");
  t.add_column("small_gamma_asymptote");
  t.add_column("large_gamma_asymptote");
  t.add_column("residual");
  for (const auto& r : rows) {
    const cplx u = r.point.t_star * r.omega;
    t.add_row({r.gamma, r.omega, units::nm_times_omega_au / r.omega, deg(r.point.theta_star), r.point.R_star,
               u.real(), u.imag(), r.small_gamma_asymptote, r.large_gamma_asymptote, r.point.residual});
  }
  return {t};
}

std::vector<Table> run_trajectories(const RunConfig& rc) {
  validate(rc);
  const FieldConfig& f = rc.field;
  const auto start = labelled_saddles(f, 0.0);
  const std::vector<double> band_p{-0.04, -0.02, 0.0, 0.02, 0.04};
  constexpr int samples = 801;

  Table t("trajectories");
  describe(t, rc, f);
  t.add_meta("band_p_au", join(band_p));
  t.add_column("wt", "rad");
  t.add_column("re_x", "au");
  t.add_column("im_x", "au");
  t.add_column("label");
  t.add_column("p", "au");

  Table ex("tunnel_exits");
  describe(ex, rc, f);
  ex.add_column("label");
  ex.add_column("p", "au");
  ex.add_column("re_wt_s", "rad");
  ex.add_column("im_wt_s", "rad");
  ex.add_column("x_exit", "au");
  ex.add_column("im_x_exit", "au");

  for (const auto& s : start) {
    if (s.label == Label::unassigned) continue;
    const TrajectoryBand band = trajectory_band(start, s.label, f, 0.0, band_p, std::nullopt, samples);
    if (band.truncated) t.add_meta("warning", band.diagnostic);
    for (const auto& r : band.members) {
      for (std::size_t i = 0; i < r.t_grid.size(); ++i)
        t.add_row({r.t_grid[i] * f.omega, r.x[i].real(), r.x[i].imag(), lc(r.label), r.p});
      const cplx u = r.t_s * f.omega;
      ex.add_row({lc(r.label), r.p, u.real(), u.imag(), r.x_exit, r.x_exit_complex.imag()});
    }
  }
  return {t, ex};
}

}  // namespace switchover
