#pragma once

// Semi-classical action S(p,t) = int_0^t [Ip + (p + A(t'))^2 / 2] dt'.
// The lower limit is fixed at t = 0, so S(p,0) = 0 and everything else
// differs from the infinite-past convention by a global phase only.

#include "switchover/field.hpp"

namespace switchover {

struct ActionEvaluation {
  cplx S;
  cplx dS;   // Ip + (p + A)^2 / 2
  cplx d2S;  // -(p + A) E
};

cplx action(const FieldConfig& cfg, double p, cplx t);
ActionEvaluation action_derivatives(const FieldConfig& cfg, double p, cplx t);
cplx action_first_derivative(const FieldConfig& cfg, double p, cplx t);
cplx action_second_derivative(const FieldConfig& cfg, double p, cplx t);
cplx action_third_derivative(const FieldConfig& cfg, double p, cplx t);

/// int_0^t A(t') dt'.
cplx potential_integral(const FieldConfig& cfg, cplx t);

/// S(p, t + T) - S(p, t), the same for every t.
double cycle_action(const FieldConfig& cfg, double p);

}  // namespace switchover
