#pragma once

// Complex ionisation times: roots of S'(p,t) = Ip + (p + A(t))^2 / 2 in the
// upper half plane, their labels A-D, continuation in a parameter and the
// second-order (coalescence) point.

#include <optional>
#include <string>
#include <vector>

#include "switchover/action.hpp"
#include "switchover/field.hpp"

namespace switchover {

enum class Label { A, B, C, D, unassigned };
enum class Branch { plus, minus };

char label_char(Label l);   // 'A'..'D', '?' for unassigned
Label label_from_char(char c);  // throws InvalidArgument

struct SaddlePoint {
  cplx t;                     // a.u.
  Label label = Label::unassigned;
  Branch branch = Branch::plus;  // p + A(t) = +i sqrt(2 Ip) or -i sqrt(2 Ip)
  int order = 1;
  double residual = 0.0;      // |S'(t)|
  bool contributes = false;   // set by build_contour
  bool degenerate = false;    // another saddle within the coalescence guard
  cplx traversal{0.0, 0.0};   // unit direction the contour leaves along; 0 if not on it
  long period_shift = 0;      // the contour passes the copy at t + period_shift * T

  cplx wt(double omega) const { return t * omega; }
};

/// Canonical window for Re(wt) is [-pi/2, 3pi/2).
inline constexpr double window_start = -0.5 * pi;
double wrap_to_window(double re_wt);

struct SaddleSearchOptions {
  int grid_re = 48;
  int grid_im = 24;
  double im_cap = 3.0;          // in wt
  double dedup = 1e-8;          // in wt
  int max_iterations = 200;
  int max_halvings = 20;
  double step_tolerance = 1e-12;  // |delta wt|
  double residual_tolerance = 1e-10;
};

struct SaddleSearch {
  std::vector<SaddlePoint> saddles;  // sorted by Re(wt)
  int seeds = 0;
  int converged = 0;
  std::string diagnostic;  // non-empty if nothing converged
};

SaddleSearch find_saddles(const FieldConfig& cfg, double p,
                          const SaddleSearchOptions& opt = {});

/// Damped Newton on S' from an initial time; nullopt if it does not converge.
std::optional<SaddlePoint> refine_saddle(const FieldConfig& cfg, double p, cplx t0,
                                         const SaddleSearchOptions& opt = {});

/// Closed-form saddles of a single-colour field E cos(n w t), wt in the canonical
/// window with 0 < Im(wt) < im_cap.
std::vector<cplx> analytic_saddles_monochromatic(double E, double omega, double Ip,
                                                 double p, int harmonic = 1,
                                                 double im_cap = 3.0);

/// Distance in wt with the real part taken modulo 2 pi.
double periodic_distance(cplx wt1, cplx wt2);

// ---------------------------------------------------------------------------
// Continuation

struct TrackOptions {
  double guard = 0.05;      // wt separation treated as near-coalescent
  double im_cap = 5.0;      // tracks that climb above this end
  int max_halvings = 20;
  double max_theta_step = 2.0 * pi / 180.0;
  double max_p_step = 0.1;
};

/// One node of a sweep; `saddles[k]` belongs to track k (nullopt when absent).
struct TrackNode {
  FieldConfig cfg;
  double p = 0.0;
  std::vector<std::optional<SaddlePoint>> saddles;
  bool ambiguous = false;  // nearest continuation was not clear-cut on the way here
};

struct SaddleTrack {
  std::vector<Label> labels;  // per track
  std::vector<TrackNode> nodes;
  std::vector<std::string> warnings;
};

/// Labels at p: continue from theta = 90 deg down to cfg.theta at p = 0 (labels
/// A-D by increasing Re(wt) at the top end), then in p from 0 to `p`.
/// Only saddles with Im(wt) < im_cap are returned, sorted by label.
std::vector<SaddlePoint> labelled_saddles(const FieldConfig& cfg, double p,
                                          const TrackOptions& opt = {},
                                          double im_cap = 3.0);

/// Sweep over configurations (differing only in theta, or only in omega) at
/// fixed p. Labels come from `labelled_saddles` at whichever end has the
/// larger theta and are carried across by nearest continuation.
SaddleTrack track_saddles(const std::vector<FieldConfig>& sweep, double p,
                          const TrackOptions& opt = {});

/// Continue a labelled set at cfg from p_from to each of `ps` in order.
SaddleTrack track_in_p(const FieldConfig& cfg, const std::vector<SaddlePoint>& start,
                       double p_from, const std::vector<double>& ps,
                       const TrackOptions& opt = {});

// ---------------------------------------------------------------------------
// Coalescence

struct CoalescencePoint {
  double theta_star = 0.0;
  double R_star = 0.0;
  cplx t_star;
  double gamma = 0.0;  // keldysh_gamma at theta_star
  double residual = 0.0;  // max(|S'|, |S''|)
  int iterations = 0;
};

struct CoalescenceOptions {
  double theta_step = 2.0 * pi / 180.0;
  double tolerance = 1e-11;
  int max_iterations = 60;
};

/// Solve S' = S'' = 0 for (Re t, Im t, theta) with E0, omega, Ip, phi2 and the
/// orders taken from `base`. The seed is the closest pair on a theta track,
/// unless `seed_t`/`seed_theta` are given.
CoalescencePoint find_coalescence(const FieldConfig& base, double p = 0.0,
                                  const CoalescenceOptions& opt = {},
                                  std::optional<cplx> seed_t = std::nullopt,
                                  std::optional<double> seed_theta = std::nullopt);

struct RStarRow {
  double gamma;
  double omega;
  CoalescencePoint point;
  double small_gamma_asymptote;  // 1 - (135/32)^(1/3) gamma^(3/2)
  double large_gamma_asymptote;  // 1 / (4 gamma)
};

/// gamma is the equal-amplitude Keldysh parameter 4 w sqrt(Ip / 5 I0); each
/// row realises it by choosing omega at fixed Ip and I0.
std::vector<RStarRow> rstar_curve(const std::vector<double>& gammas, double Ip, double I0,
                                  const FieldConfig& base = {});

}  // namespace switchover
