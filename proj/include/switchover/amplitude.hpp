#pragma once

// Saddle-point ionisation amplitudes, spectra and per-orbit yields.

#include <optional>
#include <string>
#include <vector>

#include "switchover/contour.hpp"
#include "switchover/quadrature.hpp"
#include "switchover/saddles.hpp"

namespace switchover {

/// Short-range (hydrogenic) prefactor i (2 Ip)^{1/4} / sqrt(pi); independent of k.
cplx prefactor(cplx k, double Ip);

struct OrbitAmplitude {
  Label label = Label::unassigned;
  double p = 0.0;
  cplx psi{0.0, 0.0};
  cplx t;                  // saddle time used (a.u., including the period shift)
  bool degenerate_flag = false;
};

/// sqrt(2 pi / |S''|) e^{i phi} P e^{i S(t_s)} with phi the contour's leaving
/// direction at the saddle. `reference_shift` adds a constant to S.
OrbitAmplitude spm_contribution(const SaddlePoint& s, const FieldConfig& cfg, double p,
                                double reference_shift = 0.0);

struct SpmOptions {
  std::vector<Label> exclude;    // orbits left out of the sum
  double reference_shift = 0.0;
  bool label = true;             // label saddles by continuation (slower)
  ContourOptions contour;
};

struct SpmResult {
  cplx total{0.0, 0.0};
  std::vector<OrbitAmplitude> orbits;  // contributing, in chain order, excluded ones omitted
  bool degenerate = false;
  ContourChain chain;
};

SpmResult spm_amplitude(const FieldConfig& cfg, double p, const SpmOptions& opt = {});
SpmResult spm_amplitude(const FieldConfig& cfg, double p, std::vector<SaddlePoint> saddles,
                        const SpmOptions& opt = {});

/// Real-axis quadrature of P e^{iS} over the canonical window.
QuadratureResult direct_amplitude(const FieldConfig& cfg, double p,
                                  const QuadratureOptions& opt = {});

/// Window integral with the two end contributions removed using periodicity:
/// window - (1 - e^{i dS}) V, V the integral from the window start up into its
/// valley along a gradient line of Im S. This is the quantity the saddle sum
/// approximates.
struct PeriodicAmplitude {
  cplx value{0.0, 0.0};
  cplx window{0.0, 0.0};
  cplx boundary{0.0, 0.0};  // V
  double error = 0.0;
};

PeriodicAmplitude periodic_amplitude(const FieldConfig& cfg, double p,
                                     const QuadratureOptions& opt = {});

// ---------------------------------------------------------------------------

struct SpectrumOptions {
  std::vector<Label> exclude;
  TrackOptions track;
  ContourOptions contour;
  double im_cap = 3.0;
};

struct SpectrumTable {
  FieldConfig cfg;
  std::vector<double> p;
  std::vector<Label> labels;                              // one per orbit column
  std::vector<std::vector<std::optional<cplx>>> psi;      // [p][orbit]; empty if not contributing
  std::vector<cplx> total;
  std::vector<bool> degenerate;
  std::vector<bool> flagged;                              // label continuity or topology failure
  std::vector<std::string> contributing;                  // e.g. "ABCD"
  std::vector<std::string> notes;
};

SpectrumTable spectrum(const FieldConfig& cfg, const std::vector<double>& p_grid,
                       const SpectrumOptions& opt = {});

std::vector<double> linspace(double a, double b, int n);

struct OrbitYield {
  Label label = Label::unassigned;
  double value = 0.0;
  int excluded = 0;
  bool low_confidence = false;
};

/// Trapezoid of |psi_s|^2 over the grid, skipping degenerate or flagged points.
OrbitYield orbit_yield(const SpectrumTable& table, Label label);

struct YieldOptions {
  double p_min = -2.0;
  double p_max = 2.0;
  int p_count = 801;
  bool auto_range = true;     // widen until |Psi| at the edges < edge_ratio * peak
  double edge_ratio = 1e-3;
  double range_limit = 12.0;
  SpectrumOptions spectrum;
};

struct YieldRow {
  double gamma = 0.0;
  double omega = 0.0;
  double p_min = 0.0, p_max = 0.0;
  std::vector<OrbitYield> yields;  // A, B, C, D
  std::vector<double> relative;    // yields / sum
};

std::vector<YieldRow> yield_vs_gamma(double Ip, double I0, const std::vector<double>& gammas,
                                     double theta = 0.25 * pi, const YieldOptions& opt = {},
                                     const FieldConfig& base = {});

/// Grid edges that contain the spectrum of cfg (see YieldOptions::auto_range).
std::pair<double, double> spectral_range(const FieldConfig& cfg, const YieldOptions& opt);

}  // namespace switchover
