#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace anosov {

// Numerical thresholds shared by every module. Each can be overridden from a
// run configuration; the defaults are the ones the test suites are pinned to.
struct Tolerances {
  double det = 1e-9;
  double eig = 1e-8;
  double pt = 1e-9;
  double inc = 1e-9;
  double conic = 1e-8;
  double side = 1e-10;
  double cr = 1e-8;
  double rel = 1e-7;
  double angle = 1e-12;
  double flag = 1e-6;
  double delta = 1e-9;
};

namespace projlin {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  static Mat3 identity();
  static Mat3 diag(double x, double y, double z);
  static Mat3 outer(const Vec3& col, const Vec3& row);

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }

  Mat3 transpose() const;
  double trace() const;
  double det() const;
  Mat3 cofactor() const;
  Mat3 inverse() const;
  double norm() const;  // Frobenius
  Vec3 row(int i) const { return a[i]; }
  Vec3 col(int j) const { return {a[0][j], a[1][j], a[2][j]}; }

  friend Mat3 operator*(const Mat3& x, const Mat3& y);
  friend Mat3 operator+(const Mat3& x, const Mat3& y);
  friend Mat3 operator-(const Mat3& x, const Mat3& y);
  friend Mat3 operator*(double s, const Mat3& x);
  friend Vec3 operator*(const Mat3& m, const Vec3& v);
  friend bool operator==(const Mat3&, const Mat3&) = default;
};

double dot(const Vec3& x, const Vec3& y);
Vec3 cross(const Vec3& x, const Vec3& y);
double norm(const Vec3& x);
Vec3 normalized(const Vec3& x);
Vec3 operator+(const Vec3& x, const Vec3& y);
Vec3 operator-(const Vec3& x, const Vec3& y);
Vec3 operator*(double s, const Vec3& x);
// Covector times matrix, i.e. the row vector l^T m.
Vec3 row_times(const Vec3& l, const Mat3& m);

// Distance between projective points: sine of the angle between the lines.
double proj_distance(const Vec3& x, const Vec3& y);

struct ProjPoint {
  Vec3 v{0, 0, 1};
  ProjPoint() = default;
  explicit ProjPoint(const Vec3& x) : v(normalized(x)) {}
};

struct ProjLine {
  Vec3 l{0, 0, 1};  // covector; points x with l(x) = 0
  ProjLine() = default;
  explicit ProjLine(const Vec3& x) : l(normalized(x)) {}
};

ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint intersect(const ProjLine& l, const ProjLine& m);
// |l(p)| with both unit normalized.
double incidence(const ProjLine& l, const ProjPoint& p);

// Image of a line under g, as a covector: l o g^{-1}.
ProjLine apply(const Mat3& g, const ProjLine& l);
ProjPoint apply(const Mat3& g, const ProjPoint& p);

enum class Spectrum { RealDistinct, RepeatedReal, ComplexPair };

struct EigenDecomposition {
  // Sorted by decreasing modulus; a complex pair appears with positive imaginary
  // part first.
  std::array<std::complex<double>, 3> values;
  // Eigenvector for each real eigenvalue. For a repeated non-diagonalizable pair
  // both slots hold the single eigenvector; for a diagonalizable repeated pair
  // the slots are empty.
  std::array<std::optional<Vec3>, 3> vectors;
  Spectrum spectrum = Spectrum::RealDistinct;
  bool diagonalizable = true;
  double min_gap = 0;  // smallest distance between two eigenvalues
};

// Closed-form eigen-decomposition through the characteristic cubic.
EigenDecomposition eig3(const Mat3& m, const Tolerances& tol = {});

// Singular values in decreasing order.
Vec3 singular_values(const Mat3& m);

struct Svd3 {
  Mat3 u;
  Vec3 sigma;
  Mat3 v;
};
Svd3 svd3(const Mat3& m);

// Non-degenerate conic {x : x^T q x = 0}. The form is normalized so that its
// two positive eigenvalues multiply to 1.
struct Conic {
  Mat3 q;
  // Frame in which q becomes diag(1, 1, -1): q = frame^T diag(1,1,-1) frame.
  Mat3 frame;

  static Conic from_form(const Mat3& q, const Tolerances& tol = {});

  double eval(const Vec3& x) const;  // on the unit representative
  double bilinear(const Vec3& x, const Vec3& y) const;
  // Angle of a point in the diagonalizing frame, in [0, 2pi).
  double angle(const Vec3& x) const;
  Vec3 point_at(double angle) const;
};

Conic conic_through(std::span<const Vec3> points, const Tolerances& tol = {});
double conic_residual(const Conic& c, std::span<const Vec3> points);

// Second intersection of a line through p (a point on c) with c.
Vec3 second_intersection(const Conic& c, const Vec3& p, const ProjLine& l,
                         const Tolerances& tol = {});

enum class Side { MobiusStrip, InsideDisk, OnConic };
Side mobius_side(const Conic& c, const Vec3& x, const Tolerances& tol = {});

// Convex hull of a finite point set inside the affine chart RP^2 \ chart.
class ChartHull {
 public:
  ChartHull(const ProjLine& chart, std::span<const Vec3> points, const Tolerances& tol = {});

  const ProjLine& chart() const { return chart_; }
  const std::vector<Vec2>& hull() const { return hull_; }
  const std::vector<Vec3>& points() const { return points_; }

  Vec2 to_chart(const Vec3& x) const;
  Vec3 from_chart(const Vec2& y) const;

  // Signed distance to the hull boundary: positive inside, negative outside.
  double margin(const Vec3& x) const;
  double margin_chart(const Vec2& y) const;
  bool contains(const Vec3& x, bool strict = false) const;

  // True if the line avoids the hull (all vertex lifts on one side).
  bool avoids(const ProjLine& l, double eps = 0) const;
  // Signed chart distance from the hull to the line, negative if they meet.
  double line_margin(const ProjLine& l) const;

  double diameter() const;
  Vec3 barycenter() const;

 private:
  ProjLine chart_;
  Mat3 rot_;
  std::vector<Vec3> points_;
  std::vector<Vec3> lifts_;  // representatives with chart(x) > 0
  std::vector<Vec2> hull_;   // counter-clockwise
  Tolerances tol_;
};

// [a:x:y:b] = |y-a||b-x| / (|x-a||b-y|) for four collinear points.
double cross_ratio(const Vec3& a, const Vec3& x, const Vec3& y, const Vec3& b,
                   const Tolerances& tol = {});

}  // namespace projlin
}  // namespace anosov
