// Acceptance suite: one line per criterion, exit status = number of failures.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "switchover/amplitude.hpp"
#include "switchover/trajectory.hpp"

using namespace switchover;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const SaddlePoint* with_label(const std::vector<SaddlePoint>& v, Label l) {
  for (auto& s : v)
    if (s.label == l) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------

Outcome monochromatic() {
  double worst = 0.0;
  bool counts = true;
  for (double th : {0.0, 90.0}) {
    const FieldConfig c = reference_scenario(rad(th));
    const double E = th == 0.0 ? c.E0 : -c.E0;
    const int n = th == 0.0 ? 1 : 2;
    for (double p : {0.0, 0.3, -0.3}) {
      const auto found = find_saddles(c, p).saddles;
      const auto exact = analytic_saddles_monochromatic(E, c.omega, c.Ip, p, n);
      counts = counts && found.size() == exact.size() && !exact.empty();
      for (cplx u : exact) {
        double best = 1e300;
        for (auto& s : found) best = std::min(best, periodic_distance(s.wt(c.omega), u));
        worst = std::max(worst, best);
      }
    }
  }
  return {counts && worst < 1e-10, fmt("max |d wt| = %.2e", worst)};
}

Outcome coalescence() {
  const auto cp = find_coalescence(reference_scenario(rad(45)), 0.0);
  const double th = deg(cp.theta_star);
  const bool ok_th = std::abs(th - 19.0) <= 0.5;
  const bool ok_r = std::abs(cp.R_star - 0.36) <= 0.01;
  return {ok_th && ok_r, fmt("theta* = %.4f deg (%s), R* = %.5f (%s), residual %.1e", th, ok_th ? "ok" : "out",
                             cp.R_star, ok_r ? "ok" : "out of 0.36 +- 0.01", cp.residual)};
}

Outcome zero_field_saddle() {
  const FieldConfig c = reference_scenario(rad(45));
  const auto s = labelled_saddles(c, 0.0);
  const SaddlePoint* b = with_label(s, Label::B);
  if (!b) return {false, "no B saddle"};
  const cplx u = b->wt(c.omega);
  const double e0 = std::abs(electric_field(c, 0.0));
  const bool ok = std::abs(u.real()) < 0.02 && std::abs(u.imag() - 1.1) <= 0.05 &&
                  e0 <= 4.0 * std::numeric_limits<double>::epsilon() * c.E0;
  return {ok, fmt("B at wt = %.5f%+.5fi, |E(0)| = %.1e", u.real(), u.imag(), e0)};
}

Outcome keldysh() {
  const double g = keldysh_gamma(reference_scenario(rad(45)));
  return {std::abs(g - 0.675) <= 0.005, fmt("gamma = %.5f", g)};
}

Outcome contributing_switch() {
  std::string d;
  bool ok = true;
  for (double th : {8.0, 15.0, 25.0, 45.0, 80.0}) {
    const FieldConfig c = reference_scenario(rad(th));
    const auto chain = build_contour(c, 0.0, labelled_saddles(c, 0.0));
    std::string set;
    for (Label l : chain.contributing_labels()) set += label_char(l);
    const std::size_t want = th < 20.0 ? 2 : 4;
    ok = ok && chain.contributing.size() == want;
    d += fmt("%g:%s ", th, set.c_str());
  }
  return {ok, d};
}

Outcome deformation() {
  const std::vector<std::pair<double, double>> samples = {
      {0, 0},     {5, -0.8},  {8, 0},    {12, 0.5},  {15, 0},    {17, -0.3}, {18.5, 0},
      {19, 0},    {19.5, 0},  {20, 0.2}, {22, -1.5}, {25, 0},    {30, 1.0},  {35, -0.4},
      {45, 0},    {45, 1.5},  {60, -1},  {70, 0.3},  {80, 0},    {90, -0.6}};
  double worst = 0.0;
  for (auto [th, p] : samples) {
    const FieldConfig c = reference_scenario(rad(th));
    const auto chain = build_contour(c, p);
    const cplx total = contour_quadrature(chain, c, p).total;
    const cplx direct = direct_amplitude(c, p).value;
    worst = std::max(worst, std::abs(total - direct) / std::abs(direct));
  }
  // and the real-axis value itself against the independent quadrature
  const cplx ind = oracle::window_amplitude(oracle::reference(45), 0.0);
  const double cross = std::abs(direct_amplitude(reference_scenario(rad(45)), 0.0).value - ind) / std::abs(ind);
  return {worst < 1e-6 && cross < 1e-6, fmt("%zu samples, max rel = %.1e; real axis vs independent %.1e",
                                          samples.size(), worst, cross)};
}

Outcome spm_accuracy() {
  const FieldConfig c = reference_scenario(rad(45));
  auto err = [](const FieldConfig& f, double p, bool& degenerate) {
    const auto spm = spm_amplitude(f, p);
    degenerate = spm.degenerate;
    const auto ref = periodic_amplitude(f, p);
    return std::abs(std::abs(spm.total) - std::abs(ref.value)) / std::abs(ref.value);
  };
  bool ok = true;
  std::string d;
  for (double p : {-0.5, 0.0, 0.5}) {
    bool deg = false;
    const double e = err(c, p, deg);
    if (!deg) ok = ok && e < 0.15;
    d += fmt("p=%g:%.2f%% ", p, 100 * e);
  }
  // monotone along the wavelength sweep: worst error over the three momenta
  double prev = 1e300;
  for (double g : {0.68, 0.5, 0.3}) {
    FieldConfig h = c;
    h.omega = omega_for_gamma(g, c.Ip, c.E0 * c.E0, c.theta, 1, 2);
    double worst = 0.0;
    for (double p : {-0.5, 0.0, 0.5}) {
      bool deg = false;
      worst = std::max(worst, err(h, p, deg));
    }
    ok = ok && worst < prev;
    d += fmt("g=%g:%.2f%% ", g, 100 * worst);
    prev = worst;
  }
  return {ok, d};
}

std::vector<YieldRow> yield_rows;

const std::vector<YieldRow>& yields() {
  if (yield_rows.empty()) {
    const FieldConfig c = reference_scenario(rad(45));
    yield_rows = yield_vs_gamma(c.Ip, c.E0 * c.E0, {0.3, 0.5, 0.675, 1.0, 1.5});
  }
  return yield_rows;
}

Outcome yield_order() {
  const YieldRow& r = yields()[2];
  const double A = r.yields[0].value, B = r.yields[1].value, C = r.yields[2].value, D = r.yields[3].value;
  const double asym = std::abs(A - C) / std::max(A, C);
  return {asym < 0.005 && D > A && A > B,
          fmt("gamma %.3f: Y_A %.4e Y_B %.3e Y_C %.4e Y_D %.4e, |A-C|/A %.1e", r.gamma, A, B, C, D, asym)};
}

Outcome b_suppression() {
  bool ok = true;
  std::string d;
  double prev = -1.0;
  for (const auto& r : yields()) {
    ok = ok && r.relative[1] > prev;
    prev = r.relative[1];
    d += fmt("%g:%.2e ", r.gamma, r.relative[1]);
  }
  return {ok, d};
}

Outcome rstar() {
  const FieldConfig c = reference_scenario(rad(45));
  const std::vector<double> g = {0.05, 0.08, 0.15, 0.3, 0.5, 0.675, 1.0, 2.0, 5.0};
  const auto rows = rstar_curve(g, c.Ip, c.E0 * c.E0);
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].point.R_star < rows[i - 1].point.R_star;
  const auto& last = rows.back();
  const double large = std::abs(last.point.R_star - last.large_gamma_asymptote) / last.point.R_star;
  auto ratio = [&](double gam) {
    for (auto& r : rows)
      if (r.gamma == gam) return (1.0 - r.point.R_star) / (std::cbrt(135.0 / 32.0) * std::pow(gam, 1.5));
    return std::nan("");
  };
  const double r1 = ratio(0.3), r2 = ratio(0.15), r3 = ratio(0.08);
  const bool small = std::abs(r2 - 1) < std::abs(r1 - 1) && std::abs(r3 - 1) < std::abs(r2 - 1);
  return {decreasing && large < 0.05 && small,
          fmt("decreasing %s; gamma 5: R* %.4f vs 1/(4 gamma) %.4f (%.1f%%); small-gamma ratio %.2f %.2f %.2f",
              decreasing ? "yes" : "no", last.point.R_star, last.large_gamma_asymptote, 100 * large, r1, r2, r3)};
}

Outcome trajectories() {
  const FieldConfig c = reference_scenario(rad(45));
  const auto s = labelled_saddles(c, 0.0);
  bool ok = s.size() == 4;
  std::string d;
  for (auto& sp : s) {
    ok = ok && displacement(c, 0.0, sp.t, sp.t) == cplx(0.0, 0.0);
    const auto r = trajectory(sp, c, 0.0);
    ok = ok && r.x_exit != 0.0;
    d += fmt("%c exit %.2f", label_char(sp.label), r.x_exit);
    if (sp.label == Label::A || sp.label == Label::B) {
      double near = 1e300, far = 0.0;
      for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
        far = std::max(far, std::abs(r.x[i].real()));
        if (std::abs(r.t_grid[i] * c.omega - 2.0 * pi) <= 1.0) near = std::min(near, std::abs(r.x[i].real()));
      }
      ok = ok && near <= 0.1 * far;
      d += fmt(" (min %.2f of %.1f)", near, far);
    }
    d += "; ";
  }
  return {ok, d};
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "switchover_acceptance";
  fs::remove_all(base);
  std::string files[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = base / std::to_string(k);
    const std::string cmd = std::string(SWITCHOVER_CLI) + " switchover --out " + dir.string() + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "cli run failed"};
    std::ifstream in(dir / "switchover.csv", std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    files[k] = os.str();
  }
  fs::remove_all(base);
  return {!files[0].empty() && files[0] == files[1], fmt("%zu bytes each", files[0].size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"monochromatic closed form", monochromatic},
      {"coalescence point theta* = 19 +- 0.5 deg, R* = 0.36 +- 0.01", coalescence},
      {"zero-field saddle B at 0 + 1.1i", zero_field_saddle},
      {"Keldysh parameter 0.675 +- 0.005", keldysh},
      {"contributing set 2 -> 4", contributing_switch},
      {"deformation invariance < 1e-6", deformation},
      {"SPM within 15% and improving as gamma falls", spm_accuracy},
      {"Y_A = Y_C, Y_D > Y_A > Y_B", yield_order},
      {"Y_B / sum increasing in gamma", b_suppression},
      {"R*(gamma) curve and asymptotes", rstar},
      {"trajectory facts", trajectories},
      {"byte-identical switchover output", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2zu. %s | %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
