#include "switchover/field.hpp"

#include <cmath>
#include <string>

#include "switchover/error.hpp"

namespace switchover {

double FieldConfig::E1() const { return E0 * std::cos(theta); }
double FieldConfig::E2() const { return E0 * std::sin(theta); }
double FieldConfig::ratio() const { return std::tan(theta); }
double FieldConfig::period() const { return 2.0 * pi / omega; }

FieldConfig FieldConfig::with_theta(double theta_rad) const {
  FieldConfig c = *this;
  c.theta = theta_rad;
  return c;
}

FieldConfig FieldConfig::with_omega(double omega_au) const {
  FieldConfig c = *this;
  c.omega = omega_au;
  return c;
}

void validate(const FieldConfig& cfg) {
  if (!(cfg.omega > 0.0) || !std::isfinite(cfg.omega))
    throw InvalidArgument("omega must be positive, got " + std::to_string(cfg.omega));
  if (!(cfg.Ip > 0.0) || !std::isfinite(cfg.Ip))
    throw InvalidArgument("Ip must be positive, got " + std::to_string(cfg.Ip));
  if (!(cfg.E0 >= 0.0) || !std::isfinite(cfg.E0))
    throw InvalidArgument("E0 must be non-negative, got " + std::to_string(cfg.E0));
  if (!(cfg.theta >= 0.0 && cfg.theta <= 0.5 * pi + 1e-15))
    throw InvalidArgument("theta must lie in [0, pi/2], got " + std::to_string(cfg.theta));
  if (!std::isfinite(cfg.phi2)) throw InvalidArgument("phi2 must be finite");
  if (cfg.n1 < 1 || cfg.n2 < 1 || cfg.n1 == cfg.n2)
    throw InvalidArgument("harmonic orders must be distinct positive integers");
}

std::array<HarmonicTerm, 2> potential_terms(const FieldConfig& cfg) {
  const double k1 = cfg.n1 * cfg.omega;
  const double k2 = cfg.n2 * cfg.omega;
  return {HarmonicTerm{-cfg.E1() / k1, k1, 0.0},
          HarmonicTerm{cfg.E2() / k2, k2, cfg.phi2}};
}

cplx electric_field(const FieldConfig& cfg, cplx t) {
  const double k1 = cfg.n1 * cfg.omega;
  const double k2 = cfg.n2 * cfg.omega;
  return cfg.E1() * std::cos(k1 * t) - cfg.E2() * std::cos(k2 * t + cfg.phi2);
}

cplx vector_potential(const FieldConfig& cfg, cplx t) {
  cplx a{0.0, 0.0};
  for (const auto& h : potential_terms(cfg)) a += h.a * std::sin(h.k * t + h.phase);
  return a;
}

cplx field_derivative(const FieldConfig& cfg, cplx t) {
  const double k1 = cfg.n1 * cfg.omega;
  const double k2 = cfg.n2 * cfg.omega;
  return -cfg.E1() * k1 * std::sin(k1 * t) + cfg.E2() * k2 * std::sin(k2 * t + cfg.phi2);
}

double ponderomotive_energy(const FieldConfig& cfg) {
  const double k1 = cfg.n1 * cfg.omega;
  const double k2 = cfg.n2 * cfg.omega;
  const double e1 = cfg.E1();
  const double e2 = cfg.E2();
  return e1 * e1 / (4.0 * k1 * k1) + e2 * e2 / (4.0 * k2 * k2);
}

double keldysh_gamma(const FieldConfig& cfg) {
  const double up = ponderomotive_energy(cfg);
  if (!(up > 0.0))
    throw InvalidArgument("Keldysh parameter undefined for a vanishing field (Up = 0)");
  return std::sqrt(cfg.Ip / (2.0 * up));
}

double equal_amplitude_gamma(double omega, double Ip, double I0) {
  return 4.0 * omega * std::sqrt(Ip / (5.0 * I0));
}

double omega_for_gamma(double gamma, double Ip, double I0, double theta, int n1, int n2) {
  if (!(gamma > 0.0) || !(Ip > 0.0) || !(I0 > 0.0))
    throw InvalidArgument("omega_for_gamma needs positive gamma, Ip and I0");
  // Up = I0 * c / (4 w^2) with c = cos^2/n1^2 + sin^2/n2^2, gamma = w sqrt(2 Ip / (I0 c)).
  const double c = std::pow(std::cos(theta) / n1, 2) + std::pow(std::sin(theta) / n2, 2);
  return gamma * std::sqrt(I0 * c / (2.0 * Ip));
}

namespace {

enum class Dimension { intensity, frequency, energy };

Dimension dimension_of(Unit u) {
  switch (u) {
    case Unit::intensity_wcm2:
    case Unit::intensity_au:
      return Dimension::intensity;
    case Unit::wavelength_nm:
    case Unit::frequency_au:
      return Dimension::frequency;
    case Unit::energy_ev:
    case Unit::energy_au:
      return Dimension::energy;
  }
  throw InvalidArgument("unknown unit");
}

// Everything goes through the atomic-unit representative of its dimension.
double to_au(double v, Unit u) {
  switch (u) {
    case Unit::intensity_wcm2: return v / units::intensity_au_in_wcm2;
    case Unit::wavelength_nm: return units::nm_times_omega_au / v;
    case Unit::energy_ev: return v / units::hartree_in_ev;
    default: return v;
  }
}

double from_au(double v, Unit u) {
  switch (u) {
    case Unit::intensity_wcm2: return v * units::intensity_au_in_wcm2;
    case Unit::wavelength_nm: return units::nm_times_omega_au / v;
    case Unit::energy_ev: return v * units::hartree_in_ev;
    default: return v;
  }
}

}  // namespace

double convert_units(double value, Unit from, Unit to) {
  if (dimension_of(from) != dimension_of(to))
    throw InvalidArgument("unsupported unit conversion");
  if (dimension_of(from) == Dimension::frequency && !(value > 0.0))
    throw InvalidArgument("wavelength/frequency conversion needs a positive value");
  if (from == to) return value;
  return from_au(to_au(value, from), to);
}

FieldConfig reference_scenario(double theta_rad) {
  FieldConfig cfg;
  cfg.E0 = std::sqrt(convert_units(4e14, Unit::intensity_wcm2, Unit::intensity_au));
  cfg.omega = convert_units(800.0, Unit::wavelength_nm, Unit::frequency_au);
  cfg.theta = theta_rad;
  cfg.Ip = 0.5;
  return cfg;
}

}  // namespace switchover
