#pragma once

// Steepest-descent contour for  int P e^{i S(p,t)} dt  over one period.
//
// With this orientation |integrand| = |P| e^{-Im S}: valleys are the regions
// where Im S -> +inf (upper half plane, between the hills of the top
// harmonic) and a saddle's descent paths are the curves Re S = const along
// which Im S increases. Everything here works in the scaled variable u = w t.

#include <array>
#include <string>
#include <vector>

#include "switchover/quadrature.hpp"
#include "switchover/saddles.hpp"

namespace switchover {

enum class PathEnd { valley, hill, real_axis, stokes, step_limit, level_lost };

const char* path_end_name(PathEnd e);

enum class TraceMode {
  descent,  // integrand decreases: Im S increases
  dual,     // integrand increases: Im S decreases
};

struct TraceOptions {
  double h_min = 1e-3;
  double h_max = 0.1;
  double stokes_radius = 1e-4;
  double level_tol = 1e-5;      // relative to max(1, |S(start)|)
  double depth = 30.0;          // descent stops at Im S(start) + depth, dual at Im S(start) - depth
  double ceiling_margin = 10.0; // and descent also at least max_saddle Im S + margin
  int max_steps = 100000;
  double lateral_periods = 3.0;  // give up after drifting this many periods sideways
};

struct TracedPath {
  std::vector<cplx> points;  // u = w t, starting at the saddle / start point
  PathEnd end = PathEnd::step_limit;
  long sector = 0;           // valley sector when end == valley
  int stokes_with = -1;      // saddle index when end == stokes
  long stokes_shift = 0;     // period copy of that saddle
  double level = 0.0;        // Re S on the path
  double max_level_error = 0.0;
};

/// Two antipodal unit directions along which Im S grows quadratically:
/// 2 phi + arg S'' = pi/2. The first has positive real part.
std::array<cplx, 2> descent_directions(const SaddlePoint& s, const FieldConfig& cfg, double p);

/// Follow Re S = Re S(start) from saddle `index` of `saddles`. Dual paths
/// leave along i times a descent direction.
TracedPath trace_descent_path(const FieldConfig& cfg, double p,
                              const std::vector<SaddlePoint>& saddles, int index,
                              cplx direction, TraceMode mode = TraceMode::descent,
                              const TraceOptions& opt = {});

/// Same, from an arbitrary regular point u0 (no saddle excluded from the
/// Stokes check). `limit` is the Im S ceiling (descent) or floor (dual).
TracedPath trace_level_set(const FieldConfig& cfg, double p,
                           const std::vector<SaddlePoint>& saddles, int exclude, cplx u0,
                           cplx direction, TraceMode mode, double limit,
                           const TraceOptions& opt = {});

/// The highest harmonic present decides the valleys far from the real axis:
/// sector m is centred on n x + phi = pi/2 + pi m, 2 n sectors per period.
struct ValleyGeometry {
  int n = 1;
  double phase = 0.0;
  bool free_field = false;
  long sectors_per_period() const { return 2L * n; }
  double centre(long m) const;
};

ValleyGeometry valley_geometry(const FieldConfig& cfg);

/// Height above which the top harmonic dominates S(p, u) near Re u = x.
double dominance_height(const FieldConfig& cfg, double p, double x);

/// Sector of the valley reached by steepest ascent of Im S from u.
long valley_sector(const FieldConfig& cfg, double p, cplx u);

/// Steepest ascent of Im S from u up to Im u >= height.
std::vector<cplx> ascend(const FieldConfig& cfg, double p, cplx u, double height);

enum class SegmentKind { left_end, saddle_path, valley_arc, right_end };

struct ContourSegment {
  SegmentKind kind;
  std::vector<cplx> points;  // u = w t
  int saddle = -1;           // index into ContourChain::saddles for saddle_path
};

struct ContourChain {
  std::vector<ContourSegment> segments;
  cplx start{window_start, 0.0};
  cplx end{window_start + 2.0 * pi, 0.0};
  std::vector<SaddlePoint> saddles;   // all saddles considered; contributes/traversal set
  std::vector<int> contributing;      // indices into saddles, in chain order
  long sector_left = 0;
  long sector_right = 0;
  bool degenerate = false;  // near-coalescent pair or Stokes connection used
  bool stokes = false;
  std::vector<std::string> notes;

  std::vector<Label> contributing_labels() const;
  std::vector<cplx> polyline() const;  // all segments joined
};

struct ContourOptions {
  TraceOptions trace;
  double guard = 0.05;  // wt separation that flags near-coalescence
};

/// Saddles from find_saddles (unlabelled).
ContourChain build_contour(const FieldConfig& cfg, double p, const ContourOptions& opt = {});
/// Saddles supplied by the caller (e.g. labelled ones).
ContourChain build_contour(const FieldConfig& cfg, double p, std::vector<SaddlePoint> saddles,
                           const ContourOptions& opt = {});

/// True if a dual (Im S decreasing) path of the saddle reaches the real axis.
bool dual_path_reaches_real_axis(const FieldConfig& cfg, double p,
                                 const std::vector<SaddlePoint>& saddles, int index,
                                 const TraceOptions& opt = {});

struct ContourIntegral {
  cplx total{0.0, 0.0};     // whole chain, equals the real-axis integral
  cplx interior{0.0, 0.0};  // without the two end segments
  double error = 0.0;
  bool converged = true;
};

/// Integrand P e^{i S(p,t)} in t; P from the amplitude prefactor.
cplx integrand(const FieldConfig& cfg, double p, cplx t);

ContourIntegral contour_quadrature(const ContourChain& chain, const FieldConfig& cfg, double p,
                                   const QuadratureOptions& opt = {});

struct LandscapePoint {
  double re_wt, im_wt, im_S, re_S;
};

/// nx * ny samples over the canonical window, 0 <= Im(wt) <= im_max.
std::vector<LandscapePoint> action_landscape(const FieldConfig& cfg, double p, int nx, int ny,
                                             double im_max = 3.0);

}  // namespace switchover
