#include "switchover/action.hpp"

#include <cmath>

namespace switchover {

cplx potential_integral(const FieldConfig& cfg, cplx t) {
  cplx v{0.0, 0.0};
  for (const auto& h : potential_terms(cfg))
    v -= h.a / h.k * (std::cos(h.k * t + h.phase) - std::cos(h.phase));
  return v;
}

namespace {

// Oscillatory part of int_0^t A^2, i.e. without the secular (a1^2 + a2^2) t / 2.
cplx square_integral_oscillatory(const FieldConfig& cfg, cplx t) {
  const auto h = potential_terms(cfg);
  cplx v{0.0, 0.0};
  for (const auto& x : h) {
    v -= x.a * x.a *
         (std::sin(2.0 * (x.k * t + x.phase)) - std::sin(2.0 * x.phase)) /
         (4.0 * x.k);
  }
  // 2 sin(u1) sin(u2) = cos(u1 - u2) - cos(u1 + u2)
  const double km = h[0].k - h[1].k;
  const double kp = h[0].k + h[1].k;
  const double fm = h[0].phase - h[1].phase;
  const double fp = h[0].phase + h[1].phase;
  v += h[0].a * h[1].a *
       ((std::sin(km * t + fm) - std::sin(fm)) / km -
        (std::sin(kp * t + fp) - std::sin(fp)) / kp);
  return v;
}

double secular_rate(const FieldConfig& cfg, double p) {
  const auto h = potential_terms(cfg);
  return cfg.Ip + 0.5 * p * p + 0.25 * (h[0].a * h[0].a + h[1].a * h[1].a);
}

}  // namespace

cplx action(const FieldConfig& cfg, double p, cplx t) {
  return secular_rate(cfg, p) * t + p * potential_integral(cfg, t) +
         0.5 * square_integral_oscillatory(cfg, t);
}

cplx action_first_derivative(const FieldConfig& cfg, double p, cplx t) {
  const cplx v = p + vector_potential(cfg, t);
  return cfg.Ip + 0.5 * v * v;
}

cplx action_second_derivative(const FieldConfig& cfg, double p, cplx t) {
  return -(p + vector_potential(cfg, t)) * electric_field(cfg, t);
}

cplx action_third_derivative(const FieldConfig& cfg, double p, cplx t) {
  const cplx e = electric_field(cfg, t);
  return e * e - (p + vector_potential(cfg, t)) * field_derivative(cfg, t);
}

ActionEvaluation action_derivatives(const FieldConfig& cfg, double p, cplx t) {
  const cplx v = p + vector_potential(cfg, t);
  return {action(cfg, p, t), cfg.Ip + 0.5 * v * v, -v * electric_field(cfg, t)};
}

double cycle_action(const FieldConfig& cfg, double p) {
  return secular_rate(cfg, p) * cfg.period();
}

}  // namespace switchover
