#pragma once

// Bichromatic linearly polarised field
//
//   E(t) = E1 cos(n1 w t) - E2 cos(n2 w t + phi2),   E1 = E0 cos(theta), E2 = E0 sin(theta)
//
// and its zero-mean vector potential A = -int E dt. Everything is in atomic
// units and analytic in complex time.

#include <array>
#include <complex>

namespace switchover {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

struct FieldConfig {
  double E0 = 0.0;     // total field amplitude, sqrt(I0) in a.u.
  double omega = 0.0;  // fundamental angular frequency
  double theta = 0.0;  // mixing angle in [0, pi/2]
  double phi2 = 0.0;   // phase of the second colour
  int n1 = 1;
  int n2 = 2;
  double Ip = 0.5;

  double E1() const;
  double E2() const;
  /// Amplitude ratio R = E2/E1 = tan(theta).
  double ratio() const;
  double period() const;  // 2 pi / omega

  FieldConfig with_theta(double theta_rad) const;
  FieldConfig with_omega(double omega_au) const;
};

/// Throws InvalidArgument unless omega > 0, Ip > 0, E0 >= 0, theta in
/// [0, pi/2], n1, n2 >= 1 and n1 != n2.
void validate(const FieldConfig& cfg);

/// One sinusoidal term a*sin(k*t + phase) of the vector potential.
struct HarmonicTerm {
  double a = 0.0;
  double k = 0.0;
  double phase = 0.0;
};

/// The two terms of A(t): -(E1/(n1 w)) sin(n1 w t) and (E2/(n2 w)) sin(n2 w t + phi2).
std::array<HarmonicTerm, 2> potential_terms(const FieldConfig& cfg);

cplx electric_field(const FieldConfig& cfg, cplx t);
cplx vector_potential(const FieldConfig& cfg, cplx t);
/// dE/dt, needed for third derivatives of the action.
cplx field_derivative(const FieldConfig& cfg, cplx t);

/// Cycle-averaged quiver energy E1^2/(4 n1^2 w^2) + E2^2/(4 n2^2 w^2).
double ponderomotive_energy(const FieldConfig& cfg);

/// gamma = sqrt(Ip / (2 Up)); throws InvalidArgument when Up == 0.
double keldysh_gamma(const FieldConfig& cfg);

/// Closed form 4 w sqrt(Ip / (5 I0)) for the equal-amplitude (theta = 45 deg,
/// orders 1 and 2) field.
double equal_amplitude_gamma(double omega, double Ip, double I0);

/// Frequency at which `keldysh_gamma` of (E0 = sqrt(I0), theta, n1, n2, Ip)
/// equals `gamma`. gamma scales linearly with omega, so this is exact.
double omega_for_gamma(double gamma, double Ip, double I0, double theta,
                       int n1 = 1, int n2 = 2);

enum class Unit {
  intensity_wcm2,
  intensity_au,
  wavelength_nm,
  frequency_au,
  energy_ev,
  energy_au,
};

namespace units {
inline constexpr double intensity_au_in_wcm2 = 3.50944758e16;
inline constexpr double nm_times_omega_au = 45.5633526;
inline constexpr double hartree_in_ev = 27.211386;
}  // namespace units

/// Supported pairs: W/cm^2 <-> a.u. intensity, nm <-> a.u. frequency,
/// eV <-> a.u. energy (and identity). Anything else throws InvalidArgument.
double convert_units(double value, Unit from, Unit to);

/// 4e14 W/cm^2, 800 nm, Ip = 0.5 a.u., phi2 = 0, orders (1, 2).
FieldConfig reference_scenario(double theta_rad);

inline double deg(double rad) { return rad * 180.0 / pi; }
inline double rad(double deg) { return deg * pi / 180.0; }

}  // namespace switchover
