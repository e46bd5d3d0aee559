#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/boxes.hpp"
#include "anosov/hyperbolic.hpp"

namespace anosov::limitcurve {

using cartan::CoxeterRep;
using hyperbolic::CirclePoint;
using hyperbolic::FuchsianRep;
using projlin::Mat3;
using projlin::Vec3;

// How xi1 is evaluated for a representation.
enum class Route {
  Direct,   // Barbot, t >= t_crit: nested boxes
  Swapped,  // Barbot, t <= 1/t_crit: nested boxes after exchanging s2 and s3
  Hitchin,  // Hitchin component: top singular direction of rho(g_n), no boxes
};

std::string_view to_string(Route r);

struct PointValue {
  Vec3 point{};
  double diameter = 0;  // chart diameter of the last box, or sigma2/sigma1 for Hitchin
  int start_frame = 0;
  double nest_margin = 0;  // worst margin of depth n+1 inside depth n (boxes only)
};

// xi1 of a fixed representation.
class BoundaryMap {
 public:
  // Throws NotInBarbotRange for parameters without a boundary map, including
  // t = t_crit^{+-1} unless allow_critical is set.
  BoundaryMap(const CoxeterRep& rep, bool allow_critical = false, const Tolerances& tol = {});

  Route route() const { return route_; }
  const CoxeterRep& rep() const { return rep_; }          // as given
  const FuchsianRep& circle() const { return base_; }     // circle model for rep()
  bool critical() const { return critical_; }
  // Box chart line of the unprimed frame (route rep), if boxes are used.
  std::optional<Vec3> chart_line() const;
  const boxes::BoxConfig* config() const { return cfg_ ? &*cfg_ : nullptr; }

  PointValue eval(const CirclePoint& x, int depth, bool track_nesting = false) const;

 private:
  CoxeterRep rep_;
  CoxeterRep route_rep_;
  FuchsianRep base_;
  FuchsianRep route_circle_;
  Route route_ = Route::Direct;
  bool critical_ = false;
  std::optional<boxes::BoxConfig> cfg_;
  std::vector<boxes::BoxHexagon> boxes_;
  std::array<std::vector<Mat3>, 3> q_;  // evaluated frame alphabets of route_rep_
  Tolerances tol_;
};

PointValue xi1(const CoxeterRep& rep, const CirclePoint& x, int depth, bool allow_critical = false);
// The returned point is the covector of the line xi2(x).
PointValue xi2(const CoxeterRep& rep, const CirclePoint& x, int depth, bool allow_critical = false);

struct FlagSample {
  CirclePoint x;
  Vec3 point{};
  Vec3 line{};
  double diam1 = 0, diam2 = 0;
  int depth = 0;
};

struct CurveDiagnostics {
  double min_pair_separation = 0;
  double min_transversality = 0;
  double equivariance_residual = 0;  // max projective distance of xi1(s x) from rho(s) xi1(x)
  double equivariance_ratio = 0;     // the same relative to 10 times the box diameter
  double incidence_residual = 0;  // max |<line(x), point(x)>|
  double max_diameter = 0;
  double min_nest_margin = 0;
  double svgap_slope = 0;         // NaN unless requested
  bool null_homotopic = false;    // a continuous lift of the closed curve closes up
  bool affine_chart = false;      // some sampled line xi2(y) leaves the rest of the curve on one side
  int chart_crossings = 0;        // sign changes against the chart line along the lifted loop
  std::size_t near_incident_pairs = 0;  // pairs with transversality below 1e-3
  std::size_t pattern_violations = 0;   // of those, pairs outside the allowed z-interval pattern
  // |<xi2(g-), xi1(g+)>| at the circle fixed points of the Coxeter element and its
  // cyclic conjugates; these pairs sit between grid points
  double coxeter_transversality = 0;
  double max_trace_step = 0;  // largest projective step along the refined trace
};

struct TracePoint {
  double angle = 0;
  Vec3 point{};
};

struct CurveOptions {
  int samples = 500;
  int depth = 30;
  bool allow_critical = false;
  int svgap_len = 0;  // compute svgap_slope when > 0
  unsigned threads = 0;
  std::optional<Vec3> chart;  // for chart_crossings; default: the box chart
  double max_step = 0.2;      // trace refinement target, sine of the angle between points
  int max_refine = 14;        // bisection levels per sample gap
};

struct Curve {
  Route route = Route::Direct;
  bool critical = false;
  Vec3 chart{};
  std::vector<FlagSample> samples;
  // xi1 along the circle with extra points wherever neighbouring samples are far
  // apart in RP^2; used for the topology counts and for drawing
  std::vector<TracePoint> trace;
  CurveDiagnostics diag;
};

Curve sample_curve(const CoxeterRep& rep, const CurveOptions& opt = {}, const Tolerances& tol = {});

struct SvGap {
  std::vector<int> length;
  std::vector<double> min_gap12;  // min over elements of that length of log(sigma1/sigma2)
  std::vector<double> min_gap23;  // same for log(sigma2/sigma3)
  double slope12 = 0, slope23 = 0;
  double slope = 0;  // min of the two
  std::size_t elements = 0;
};

// Least-squares slope of the per-length minima over lengths 1 .. max_len.
SvGap svgap_check(const CoxeterRep& rep, int max_len);

// CSV with columns angle, px, py, pz, lx, ly, lz, diam1, diam2.
std::string curve_csv(const Curve& c);

}  // namespace anosov::limitcurve
