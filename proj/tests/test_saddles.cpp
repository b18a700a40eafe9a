#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "switchover/error.hpp"
#include "switchover/saddles.hpp"

using namespace switchover;
using doctest::Approx;

namespace {

std::vector<cplx> wts(const std::vector<SaddlePoint>& v, double omega) {
  std::vector<cplx> u;
  for (auto& s : v) u.push_back(s.wt(omega));
  return u;
}

// Every root in `want` has a partner in `got` within tol (periodic in Re), and the counts agree.
bool same_set(const std::vector<cplx>& got, const std::vector<cplx>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (cplx w : want) {
    bool hit = false;
    for (cplx g : got) hit = hit || periodic_distance(g, w) < tol;
    if (!hit) return false;
  }
  return true;
}

const SaddlePoint& by_label(const std::vector<SaddlePoint>& v, Label l) {
  for (auto& s : v)
    if (s.label == l) return s;
  throw std::runtime_error("label missing");
}

}  // namespace

TEST_CASE("canonical window") {
  CHECK(wrap_to_window(-0.5 * pi) == Approx(-0.5 * pi));
  CHECK(wrap_to_window(1.5 * pi) == Approx(-0.5 * pi));
  CHECK(wrap_to_window(7.0) == Approx(7.0 - 2.0 * pi));
  CHECK(periodic_distance(cplx(-0.5 * pi + 1e-9, 1.0), cplx(1.5 * pi, 1.0)) < 1e-8);
}

TEST_CASE("monochromatic limits") {
  const FieldConfig c0 = reference_scenario(0.0);
  const auto s = find_saddles(c0, 0.0);
  REQUIRE(s.saddles.size() == 2);
  const double g0 = c0.omega * std::sqrt(2.0 * c0.Ip) / c0.E0;
  CHECK(g0 == Approx(0.534).epsilon(2e-3));
  CHECK(same_set(wts(s.saddles, c0.omega), {cplx(0, std::asinh(g0)), cplx(pi, std::asinh(g0))}, 1e-10));
  CHECK(std::asinh(g0) == Approx(0.5114).epsilon(2e-3));

  const auto an = analytic_saddles_monochromatic(c0.E0, c0.omega, c0.Ip, 0.0);
  REQUIRE(an.size() == 2);
  for (cplx u : an) CHECK(u.imag() == Approx(std::asinh(g0)).epsilon(1e-12));
  const auto big = analytic_saddles_monochromatic(1e4, c0.omega, c0.Ip, 0.0);
  for (cplx u : big) CHECK(u.imag() < 1e-4);

  const FieldConfig c90 = reference_scenario(0.5 * pi);
  const auto s90 = find_saddles(c90, 0.0);
  REQUIRE(s90.saddles.size() == 4);
  for (double want : {-0.5 * pi, 0.0, 0.5 * pi, pi}) {
    bool hit = false;
    for (cplx u : wts(s90.saddles, c90.omega)) hit = hit || periodic_distance(cplx(u.real(), 0), cplx(want, 0)) < 1e-9;
    CHECK(hit);
  }

  for (double p : {0.0, 0.3, -0.3}) {
    CHECK(same_set(wts(find_saddles(c0, p).saddles, c0.omega),
                   analytic_saddles_monochromatic(c0.E0, c0.omega, c0.Ip, p), 1e-10));
    CHECK(same_set(wts(find_saddles(c90, p).saddles, c90.omega),
                   analytic_saddles_monochromatic(-c90.E0, c90.omega, c90.Ip, p, 2), 1e-10));
  }
}

TEST_CASE("all roots found, compared with polynomial roots") {
  for (double th : {0.0, 8.0, 19.0, 25.0, 45.0, 70.0, 90.0}) {
    for (double p : {-1.0, -0.3, 0.0, 0.5}) {
      FieldConfig cfg = reference_scenario(rad(th));
      auto o = oracle::reference(th);
      if (th == 70.0) cfg.phi2 = o.phi2 = 0.6;
      const auto s = find_saddles(cfg, p);
      CAPTURE(th);
      CAPTURE(p);
      CHECK(same_set(wts(s.saddles, cfg.omega), oracle::saddles(o, p), 1e-9));
      for (auto& sp : s.saddles) {
        CHECK(std::abs(action_first_derivative(cfg, p, sp.t)) < 1e-10);
        CHECK(sp.residual < 1e-10);
        CHECK(sp.t.imag() > 0.0);
        const double re = sp.wt(cfg.omega).real();
        CHECK(re >= -0.5 * pi);
        CHECK(re < 1.5 * pi);
        const cplx v = p + vector_potential(cfg, sp.t);
        const cplx k = cplx(0, sp.branch == Branch::plus ? 1.0 : -1.0) * std::sqrt(2.0 * cfg.Ip);
        CHECK(std::abs(v - k) < 1e-8);
        // the copy one period later is a saddle too
        CHECK(std::abs(action_first_derivative(cfg, p, sp.t + cfg.period())) < 1e-10);
      }
    }
  }
}

TEST_CASE("third colour order") {
  FieldConfig cfg = reference_scenario(rad(50));
  cfg.n2 = 3;
  auto o = oracle::reference(50);
  o.n2 = 3;
  CHECK(same_set(wts(find_saddles(cfg, 0.2).saddles, cfg.omega), oracle::saddles(o, 0.2), 1e-9));
}

TEST_CASE("mirror pairing at theta = 90 deg") {
  const FieldConfig c = reference_scenario(0.5 * pi);
  const auto s = find_saddles(c, 0.0).saddles;
  for (auto& a : s) {
    const cplx u = a.wt(c.omega);
    const cplx mirror(-u.real(), u.imag());
    bool hit = false;
    for (auto& b : s) hit = hit || periodic_distance(b.wt(c.omega), mirror) < 1e-9;
    CHECK(hit);
  }
}

TEST_CASE("free particle has no saddles") {
  FieldConfig c = reference_scenario(0.3);
  c.E0 = 0.0;
  const auto r = find_saddles(c, 0.0);
  CHECK(r.saddles.empty());
  CHECK(!r.diagnostic.empty());
  CHECK_THROWS_AS(track_saddles({c, c.with_theta(0.4)}, 0.0), NumericalError);
}

TEST_CASE("labels") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto s = labelled_saddles(c, 0.0);
  REQUIRE(s.size() == 4);
  const cplx B = by_label(s, Label::B).wt(c.omega);
  CHECK(std::abs(B.real()) < 1e-10);
  CHECK(B.imag() == Approx(1.04897).epsilon(1e-4));
  CHECK(by_label(s, Label::A).wt(c.omega).real() < B.real());
  CHECK(by_label(s, Label::C).wt(c.omega).real() > B.real());
  CHECK(by_label(s, Label::D).wt(c.omega).real() == Approx(pi));

  // theta = 80 deg: A..D ordered by Re wt
  const FieldConfig c80 = reference_scenario(rad(80));
  const auto s80 = labelled_saddles(c80, 0.0);
  REQUIRE(s80.size() == 4);
  double prev = -10.0;
  for (Label l : {Label::A, Label::B, Label::C, Label::D}) {
    const double re = by_label(s80, l).wt(c80.omega).real();
    CHECK(re > prev);
    prev = re;
  }
}

TEST_CASE("theta sweep: C comes down and meets A near 19 deg") {
  std::vector<FieldConfig> sweep;
  for (int th = 8; th <= 80; th += 2) sweep.push_back(reference_scenario(rad(th)));
  const auto tr = track_saddles(sweep, 0.0);
  const auto& L = tr.labels;
  auto col = [&](Label l) { return static_cast<std::size_t>(std::find(L.begin(), L.end(), l) - L.begin()); };
  const std::size_t a = col(Label::A), c = col(Label::C);
  REQUIRE(a < L.size());
  REQUIRE(c < L.size());
  double closest = 1e9, at = 0.0;
  for (const auto& n : tr.nodes) {
    if (!n.saddles[a] || !n.saddles[c]) continue;
    const double d = periodic_distance(n.saddles[a]->wt(n.cfg.omega), n.saddles[c]->wt(n.cfg.omega));
    if (d < closest) {
      closest = d;
      at = deg(n.cfg.theta);
    }
  }
  CHECK(std::abs(at - 19.0) <= 2.0);
  // Im of C decreases from 8 to 19 deg
  CHECK(tr.nodes.front().saddles[c]->t.imag() > tr.nodes[5].saddles[c]->t.imag());

  // Same labels for the reversed sweep.
  std::vector<FieldConfig> rev(sweep.rbegin(), sweep.rend());
  const auto tr2 = track_saddles(rev, 0.0);
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    const auto& n1 = tr.nodes[k];
    const auto& n2 = tr2.nodes[sweep.size() - 1 - k];
    for (std::size_t j = 0; j < tr.labels.size(); ++j) {
      if (!n1.saddles[j]) continue;
      const std::size_t j2 = static_cast<std::size_t>(
          std::find(tr2.labels.begin(), tr2.labels.end(), tr.labels[j]) - tr2.labels.begin());
      REQUIRE(j2 < tr2.labels.size());
      REQUIRE(n2.saddles[j2]);
      CHECK(std::abs(n1.saddles[j]->t - n2.saddles[j2]->t) < 1e-9);
    }
  }
}

TEST_CASE("continuation in p keeps labels and roots") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto start = labelled_saddles(c, 0.0);
  const auto tr = track_in_p(c, start, 0.0, {0.1, 0.5, 1.0, 1.5});
  const auto direct = labelled_saddles(c, 1.5);
  const auto& last = tr.nodes.back();
  for (auto& s : direct) {
    for (std::size_t j = 0; j < tr.labels.size(); ++j)
      if (tr.labels[j] == s.label && last.saddles[j]) CHECK(std::abs(last.saddles[j]->t - s.t) < 1e-9);
  }
  CHECK(by_label(direct, Label::A).wt(c.omega).real() == Approx(-0.7330).epsilon(1e-3));
  CHECK(by_label(direct, Label::D).wt(c.omega).real() == Approx(2.6589).epsilon(1e-3));
}

TEST_CASE("coalescence") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto cp = find_coalescence(c, 0.0);
  FieldConfig at = c.with_theta(cp.theta_star);
  CHECK(std::abs(action_first_derivative(at, 0.0, cp.t_star)) < 1e-9);
  CHECK(std::abs(action_second_derivative(at, 0.0, cp.t_star)) < 1e-9);
  CHECK(cp.R_star == Approx(std::tan(cp.theta_star)).epsilon(1e-14));
  CHECK(cp.R_star > 0.0);
  CHECK(cp.R_star < 1.0);
  CHECK(std::abs(deg(cp.theta_star) - 19.0) < 0.5);
  CHECK(std::abs(cp.t_star.real()) < 1e-8);
  // a nearby order-1 saddle pair collapses: two roots within the guard just past theta*
  const auto s = find_saddles(c.with_theta(cp.theta_star + rad(0.01)), 0.0).saddles;
  int close = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      close += periodic_distance(s[i].wt(c.omega), s[j].wt(c.omega)) < 0.05;
  CHECK(close == 1);

  CHECK_THROWS_AS(find_coalescence(c, 0.3), InvalidArgument);
}

TEST_CASE("R* curve") {
  const FieldConfig c = reference_scenario(rad(45));
  const double I0 = c.E0 * c.E0;
  const auto rows = rstar_curve({0.3, 0.675, 2.0}, c.Ip, I0);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].point.R_star > rows[1].point.R_star);
  CHECK(rows[1].point.R_star > rows[2].point.R_star);
  for (auto& r : rows) {
    CHECK(r.point.R_star < 1.0);
    CHECK(r.large_gamma_asymptote == Approx(1.0 / (4.0 * r.gamma)));
    CHECK(r.small_gamma_asymptote == Approx(1.0 - std::cbrt(135.0 / 32.0) * std::pow(r.gamma, 1.5)));
  }
  CHECK(rows[1].omega == Approx(c.omega).epsilon(1e-3));
}
