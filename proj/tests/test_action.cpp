#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "switchover/action.hpp"

using namespace switchover;
using doctest::Approx;

namespace {
constexpr cplx I{0.0, 1.0};

std::vector<cplx> sample(double omega, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(-10.0, 10.0), im(-3.0, 3.0);
  std::vector<cplx> v;
  for (int i = 0; i < n; ++i) v.emplace_back(re(rng) / omega, im(rng) / omega);
  return v;
}
}  // namespace

TEST_CASE("reference point and free particle") {
  const FieldConfig cfg = reference_scenario(rad(45));
  CHECK(std::abs(action(cfg, 0.7, 0.0)) == 0.0);
  FieldConfig free = cfg;
  free.E0 = 0.0;
  for (cplx t : sample(cfg.omega, 10, 1)) {
    const double p = 0.4;
    CHECK(std::abs(action(free, p, t) - (free.Ip + 0.5 * p * p) * t) < 1e-12 * std::abs(t));
    const auto ev = action_derivatives(free, p, t);
    CHECK(std::abs(ev.dS - (free.Ip + 0.5 * p * p)) < 1e-15);
    CHECK(std::abs(ev.d2S) == 0.0);
  }
}

TEST_CASE("closed form against quadrature") {
  const FieldConfig cfg = reference_scenario(rad(45));
  const auto o = oracle::reference(45);
  const cplx t = cplx(0.5, 0.3) / cfg.omega;
  const cplx want = oracle::action(o, 0.0, t);
  CHECK(std::abs(action(cfg, 0.0, t) - want) < 1e-10 * std::abs(want));

  for (double th : {0.0, 19.0, 60.0, 90.0}) {
    FieldConfig c = reference_scenario(rad(th));
    c.phi2 = 0.3;
    auto f = oracle::reference(th);
    f.phi2 = 0.3;
    for (double p : {-1.0, 0.0, 0.8}) {
      for (cplx t1 : sample(c.omega, 6, 3)) {
        const cplx got = action(c, p, t1);
        CHECK(std::abs(got - oracle::action(f, p, t1)) < 1e-9 * std::abs(got));
      }
    }
  }
}

TEST_CASE("derivatives") {
  for (double th : {0.0, 30.0, 45.0, 90.0}) {
    const FieldConfig c = reference_scenario(rad(th));
    for (cplx t : sample(c.omega, 100, 5)) {
      const double p = 0.3;
      const auto ev = action_derivatives(c, p, t);
      const cplx v = p + vector_potential(c, t);
      CHECK(std::abs(ev.dS - (c.Ip + 0.5 * v * v)) <= 1e-14 * (1.0 + std::abs(ev.dS)));
      CHECK(std::abs(ev.d2S + v * electric_field(c, t)) <= 1e-14 * (1.0 + std::abs(ev.d2S)));
      const double h = 1e-6 / c.omega;
      const cplx fd2 = (action_first_derivative(c, p, t + h) - action_first_derivative(c, p, t - h)) / (2.0 * h);
      CHECK(std::abs(fd2 - ev.d2S) < 1e-8 * std::max(std::abs(ev.d2S), c.E0 * std::abs(v) + c.E0));
      const cplx fd3 = (action_second_derivative(c, p, t + h) - action_second_derivative(c, p, t - h)) / (2.0 * h);
      const cplx s3 = action_third_derivative(c, p, t);
      CHECK(std::abs(fd3 - s3) < 1e-7 * (std::abs(s3) + c.E0 * c.E0));
      const cplx fd1 = (action(c, p, t + h) - action(c, p, t - h)) / (2.0 * h);
      CHECK(std::abs(fd1 - ev.dS) < 1e-7 * (std::abs(ev.dS) + 1.0));
    }
  }
}

TEST_CASE("analyticity of S") {
  const FieldConfig c = reference_scenario(rad(45));
  for (cplx t : sample(c.omega, 30, 9)) {
    const double h = 1e-5 / c.omega;
    const cplx dx = (action(c, 0.2, t + h) - action(c, 0.2, t - h)) / (2.0 * h);
    const cplx dy = (action(c, 0.2, t + I * h) - action(c, 0.2, t - I * h)) / (2.0 * h);
    CHECK(std::abs(dx + I * dy) < 1e-8 * (1.0 + std::abs(dx)));
  }
}

TEST_CASE("action gained per period is independent of t") {
  for (double th : {0.0, 45.0, 75.0}) {
    FieldConfig c = reference_scenario(rad(th));
    c.phi2 = 0.9;
    const double p = -0.6;
    const double dS = cycle_action(c, p);
    for (cplx t : sample(c.omega, 20, 13)) {
      const cplx got = action(c, p, t + c.period()) - action(c, p, t);
      CHECK(std::abs(got - dS) < 1e-10 * std::abs(dS));
    }
    const auto o = [&] {
      auto f = oracle::reference(th);
      f.phi2 = 0.9;
      return f;
    }();
    CHECK(std::abs(oracle::action(o, p, c.period()) - dS) < 1e-10 * std::abs(dS));
  }
}

TEST_CASE("potential integral") {
  const FieldConfig c = reference_scenario(rad(45));
  const auto o = oracle::reference(45);
  for (cplx t : sample(c.omega, 10, 17)) {
    const cplx want = oracle::segment_integral([&](cplx s) { return o.A(s); }, 0.0, t);
    CHECK(std::abs(potential_integral(c, t) - want) < 1e-10 * (1.0 + std::abs(want)));
  }
}
