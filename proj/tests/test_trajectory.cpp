#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "switchover/trajectory.hpp"

using namespace switchover;

namespace {
const SaddlePoint& find(const std::vector<SaddlePoint>& v, Label l) {
  for (auto& s : v)
    if (s.label == l) return s;
  throw std::runtime_error("missing label");
}
}  // namespace

TEST_CASE("x vanishes at the saddle and the exit is off the core") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto s = labelled_saddles(c, 0.0);
  REQUIRE(s.size() == 4);
  for (auto& sp : s) {
    CHECK(displacement(c, 0.0, sp.t, sp.t) == cplx(0.0, 0.0));
    const auto r = trajectory(sp, c, 0.0);
    CHECK(r.t_grid.front() == sp.t.real());
    CHECK(r.t_grid.back() == doctest::Approx(sp.t.real() + 2.0 * c.period()));
    CHECK(std::abs(r.x_exit) > 0.5);
  }
}

TEST_CASE("leg 1 closed form against quadrature down the vertical segment") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto o = oracle::reference(45);
  for (auto& sp : labelled_saddles(c, 0.3)) {
    const cplx end(sp.t.real(), 0.0);
    const cplx want = oracle::segment_integral([&](cplx t) { return 0.3 + o.A(t); }, sp.t, end);
    CHECK(std::abs(displacement(c, 0.3, sp.t, end) - want) < 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("dx/dt = p + A on the real axis") {
  const FieldConfig c = reference_scenario(rad(30));
  const auto s = find_saddles(c, -0.2).saddles;
  const auto r = trajectory(s.front(), c, -0.2);
  for (std::size_t i = 1; i + 1 < r.t_grid.size(); i += 50) {
    const double t = r.t_grid[i];
    const double h = 1e-3;
    const cplx fd = (displacement(c, -0.2, s.front().t, t + h) - displacement(c, -0.2, s.front().t, t - h)) / (2 * h);
    const cplx v = -0.2 + vector_potential(c, t);
    CHECK(std::abs(fd - v) < 1e-8 * std::max(1.0, std::abs(v)));
  }
}

TEST_CASE("A and B come back to the core near wt = 2 pi, C and D leave") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto s = labelled_saddles(c, 0.0);
  auto min_near_2pi = [&](Label l, double& max_all) {
    const auto r = trajectory(find(s, l), c, 0.0);
    double m = 1e300;
    max_all = 0.0;
    for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
      const double wt = r.t_grid[i] * c.omega;
      max_all = std::max(max_all, std::abs(r.x[i].real()));
      if (std::abs(wt - 2.0 * pi) <= 1.0) m = std::min(m, std::abs(r.x[i].real()));
    }
    return m;
  };
  double maxA = 0.0, maxB = 0.0, maxD = 0.0;
  const double nearA = min_near_2pi(Label::A, maxA);
  const double nearB = min_near_2pi(Label::B, maxB);
  const double nearD = min_near_2pi(Label::D, maxD);
  CHECK(nearA <= 0.1 * maxA);
  CHECK(nearB <= 0.1 * maxB);
  CHECK(nearD > 0.5 * maxD);
}

TEST_CASE("band") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto start = labelled_saddles(c, 0.0);
  const auto band = trajectory_band(start, Label::B, c, 0.0, {-0.04, -0.02, 0.0, 0.02, 0.04});
  CHECK(!band.truncated);
  REQUIRE(band.members.size() == 5);
  const auto single = trajectory(find(start, Label::B), c, 0.0);
  const auto& mid = band.members[2];
  REQUIRE(mid.x.size() == single.x.size());
  for (std::size_t i = 0; i < mid.x.size(); i += 40) CHECK(std::abs(mid.x[i] - single.x[i]) < 1e-9);
  // the p = 0 curve lies inside the band envelope
  for (std::size_t i = 0; i < mid.x.size(); i += 40) {
    double lo = 1e300, hi = -1e300;
    for (auto& m : band.members) {
      lo = std::min(lo, m.x[i].real());
      hi = std::max(hi, m.x[i].real());
    }
    CHECK(mid.x[i].real() >= lo);
    CHECK(mid.x[i].real() <= hi);
  }
  // reproducible
  const auto again = trajectory(find(start, Label::B), c, 0.0);
  CHECK(again.x == single.x);
}
