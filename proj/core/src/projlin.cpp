#include "anosov/projlin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anosov/error.hpp"

namespace anosov::projlin {

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return e;
}

Mat3 from_eigen(const Eigen::Matrix3d& e) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = e(i, j);
  return m;
}

// Null vector of a (numerically) rank-2 matrix from its largest row cross product.
std::optional<Vec3> null_vector(const Mat3& a) {
  const Vec3 r0 = a.row(0), r1 = a.row(1), r2 = a.row(2);
  std::array<Vec3, 3> c = {cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  int best = 0;
  for (int k = 1; k < 3; ++k)
    if (norm(c[k]) > norm(c[best])) best = k;
  const double n = norm(c[best]);
  if (n == 0 || !std::isfinite(n)) return std::nullopt;
  Vec3 v = (1.0 / n) * c[best];
  // deterministic sign: largest coordinate positive
  int big = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(v[k]) > std::abs(v[big])) big = k;
  if (v[big] < 0) v = -1.0 * v;
  return v;
}

double cubic(double a, double b, double c, double x) {
  return ((x - a) * x + b) * x - c;
}

double cubic_d(double a, double b, double x) { return (3 * x - 2 * a) * x + b; }

double polish(double a, double b, double c, double x) {
  for (int it = 0; it < 4; ++it) {
    const double f = cubic(a, b, c, x);
    const double d = cubic_d(a, b, x);
    if (d == 0) break;
    const double nx = x - f / d;
    if (!std::isfinite(nx) || std::abs(cubic(a, b, c, nx)) >= std::abs(f)) break;
    x = nx;
  }
  return x;
}

}  // namespace

Mat3 Mat3::identity() { return diag(1, 1, 1); }

Mat3 Mat3::diag(double x, double y, double z) {
  Mat3 m;
  m(0, 0) = x;
  m(1, 1) = y;
  m(2, 2) = z;
  return m;
}

Mat3 Mat3::outer(const Vec3& col, const Vec3& row) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = col[i] * row[j];
  return m;
}

Mat3 Mat3::transpose() const {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[j][i];
  return m;
}

double Mat3::trace() const { return a[0][0] + a[1][1] + a[2][2]; }

double Mat3::det() const { return dot(row(0), cross(row(1), row(2))); }

Mat3 Mat3::cofactor() const {
  Mat3 m;
  const Vec3 c0 = cross(row(1), row(2));
  const Vec3 c1 = cross(row(2), row(0));
  const Vec3 c2 = cross(row(0), row(1));
  m.a = {c0, c1, c2};
  return m;
}

Mat3 Mat3::inverse() const {
  const double d = det();
  if (d == 0 || !std::isfinite(d)) throw Error(ErrorCode::DomainError, "singular matrix");
  return (1.0 / d) * cofactor().transpose();
}

double Mat3::norm() const {
  double s = 0;
  for (const auto& r : a)
    for (double x : r) s += x * x;
  return std::sqrt(s);
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return m;
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x(i, j) + y(i, j);
  return m;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x(i, j) - y(i, j);
  return m;
}

Mat3 operator*(double s, const Mat3& x) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = s * x(i, j);
  return m;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {dot(m.a[0], v), dot(m.a[1], v), dot(m.a[2], v)};
}

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 cross(const Vec3& x, const Vec3& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

Vec3 normalized(const Vec3& x) {
  const double n = norm(x);
  return (1.0 / n) * x;
}

Vec3 operator+(const Vec3& x, const Vec3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
Vec3 operator-(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }
Vec3 operator*(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }

Vec3 row_times(const Vec3& l, const Mat3& m) {
  return {l[0] * m(0, 0) + l[1] * m(1, 0) + l[2] * m(2, 0),
          l[0] * m(0, 1) + l[1] * m(1, 1) + l[2] * m(2, 1),
          l[0] * m(0, 2) + l[1] * m(1, 2) + l[2] * m(2, 2)};
}

double proj_distance(const Vec3& x, const Vec3& y) {
  return norm(cross(normalized(x), normalized(y)));
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  const Vec3 l = cross(p.v, q.v);
  if (norm(l) < 1e-14) throw Error(ErrorCode::CoincidentPoints, "no unique line through equal points");
  return ProjLine(l);
}

ProjPoint intersect(const ProjLine& l, const ProjLine& m) {
  const Vec3 x = cross(l.l, m.l);
  if (norm(x) < 1e-14) throw Error(ErrorCode::CoincidentPoints, "equal lines have no unique meet");
  return ProjPoint(x);
}

double incidence(const ProjLine& l, const ProjPoint& p) { return std::abs(dot(l.l, p.v)); }

ProjLine apply(const Mat3& g, const ProjLine& l) { return ProjLine(row_times(l.l, g.inverse())); }

ProjPoint apply(const Mat3& g, const ProjPoint& p) { return ProjPoint(g * p.v); }

EigenDecomposition eig3(const Mat3& m, const Tolerances& tol) {
  const double a = m.trace();
  const double b = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                   m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double c = m.det();

  // depressed cubic mu^3 + p mu + q with lambda = mu + a/3
  const double shift = a / 3;
  const double p = b - a * a / 3;
  const double q = -2 * a * a * a / 27 + a * b / 3 - c;
  const double disc = q * q / 4 + p * p * p / 27;

  double r;
  if (disc <= 0) {
    const double rho = std::sqrt(std::max(0.0, -p / 3));
    if (rho == 0) {
      r = shift;
    } else {
      const double arg = std::clamp(-q / (2 * rho * rho * rho), -1.0, 1.0);
      const double phi = std::acos(arg) / 3;
      r = shift;
      for (int k = 0; k < 3; ++k) {
        const double mu = 2 * rho * std::cos(phi - 2 * std::numbers::pi * k / 3);
        if (k == 0 || std::abs(mu + shift) > std::abs(r)) r = mu + shift;
      }
    }
  } else {
    const double s = std::sqrt(disc);
    r = std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s) + shift;
  }
  r = polish(a, b, c, r);

  // deflate to lambda^2 - s2 lambda + p2
  const double s2 = a - r;
  const double p2 = std::abs(r) > 1e-3 * (1 + std::abs(a)) ? c / r : b - r * s2;
  const double d2 = s2 * s2 - 4 * p2;

  const double mnorm = std::max(m.norm(), 1e-300);
  std::array<std::complex<double>, 3> vals;
  bool complex_pair = false;
  if (d2 >= 0) {
    const double sq = std::sqrt(d2);
    const double big = 0.5 * (s2 + (s2 >= 0 ? sq : -sq));
    const double small = big != 0 ? p2 / big : 0.5 * (s2 - sq);
    vals = {r, big, small};
  } else {
    const double im = 0.5 * std::sqrt(-d2);
    vals = {r, {s2 / 2, im}, {s2 / 2, -im}};
    complex_pair = true;
  }

  double scale = 1;
  for (auto& v : vals) scale = std::max(scale, std::abs(v));
  const double thr = std::sqrt(tol.eig) * scale;

  EigenDecomposition out;
  std::array<int, 2> pair{-1, -1};
  if (complex_pair) {
    out.min_gap = std::abs(vals[1] - vals[2]);
    if (out.min_gap < thr) {
      vals[1] = vals[2] = vals[1].real();
      out.spectrum = Spectrum::RepeatedReal;
      pair = {1, 2};
    } else {
      out.spectrum = Spectrum::ComplexPair;
    }
  } else {
    for (int i = 1; i < 3; ++i) {
      const double polished = polish(a, b, c, vals[i].real());
      vals[i] = polished;
    }
    out.min_gap = 1e300;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double g = std::abs(vals[i] - vals[j]);
        if (g < out.min_gap) {
          out.min_gap = g;
          pair = {i, j};
        }
      }
    out.spectrum = out.min_gap < thr ? Spectrum::RepeatedReal : Spectrum::RealDistinct;
    if (out.spectrum == Spectrum::RealDistinct) pair = {-1, -1};
  }

  // sort by decreasing modulus, positive imaginary part first on ties
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const double mi = std::abs(vals[i]), mj = std::abs(vals[j]);
    if (std::abs(mi - mj) > 1e-14 * scale) return mi > mj;
    return vals[i].imag() > vals[j].imag();
  });
  std::array<int, 3> rank{};
  for (int k = 0; k < 3; ++k) {
    out.values[k] = vals[order[k]];
    rank[order[k]] = k;
  }

  const Mat3 id = Mat3::identity();
  if (out.spectrum == Spectrum::ComplexPair) {
    const int k = rank[0];
    out.vectors[k] = null_vector(m - vals[0].real() * id);
    return out;
  }

  if (out.spectrum == Spectrum::RepeatedReal) {
    const double lam = 0.5 * (vals[pair[0]].real() + vals[pair[1]].real());
    const Mat3 shifted = m - lam * id;
    const Vec3 sv = singular_values(shifted);
    out.diagonalizable = sv[1] <= std::max(tol.eig * mnorm, 2 * out.min_gap);
    if (!out.diagonalizable) {
      const auto v = null_vector(shifted);
      out.vectors[rank[pair[0]]] = v;
      out.vectors[rank[pair[1]]] = v;
    }
    for (int i = 0; i < 3; ++i)
      if (i != pair[0] && i != pair[1])
        out.vectors[rank[i]] = null_vector(m - vals[i].real() * id);
    return out;
  }

  for (int i = 0; i < 3; ++i) out.vectors[rank[i]] = null_vector(m - vals[i].real() * id);
  return out;
}

Vec3 singular_values(const Mat3& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(to_eigen(m));
  const auto s = svd.singularValues();
  return {s(0), s(1), s(2)};
}

Svd3 svd3(const Mat3& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto s = svd.singularValues();
  return {from_eigen(svd.matrixU()), {s(0), s(1), s(2)}, from_eigen(svd.matrixV())};
}

Conic Conic::from_form(const Mat3& form, const Tolerances& tol) {
  Mat3 q = 0.5 * (form + form.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(q));
  Eigen::Vector3d ev = es.eigenvalues();
  Eigen::Matrix3d vec = es.eigenvectors();
  const double big = ev.cwiseAbs().maxCoeff();
  if (big == 0 || ev.cwiseAbs().minCoeff() < tol.conic * big)
    throw Error(ErrorCode::DegenerateConic, "form has rank < 3");
  int npos = 0;
  for (int i = 0; i < 3; ++i) npos += ev(i) > 0;
  if (npos == 0 || npos == 3) throw Error(ErrorCode::DegenerateConic, "form is definite");
  if (npos == 1) {
    q = -1.0 * q;
    ev = -ev;
  }
  // eigenvalues ascending: after the sign fix the negative one is first or last
  int neg = 0;
  for (int i = 0; i < 3; ++i)
    if (ev(i) < 0) neg = i;
  std::array<int, 2> pos{};
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != neg) pos[k++] = i;
  const double s = 1.0 / std::sqrt(ev(pos[0]) * ev(pos[1]));
  Conic c;
  c.q = s * q;
  const std::array<int, 3> rows{pos[1], pos[0], neg};
  for (int r = 0; r < 3; ++r) {
    const double w = std::sqrt(std::abs(s * ev(rows[r])));
    for (int j = 0; j < 3; ++j) c.frame(r, j) = w * vec(j, rows[r]);
  }
  return c;
}

double Conic::eval(const Vec3& x) const {
  const Vec3 u = normalized(x);
  return dot(u, q * u);
}

double Conic::bilinear(const Vec3& x, const Vec3& y) const { return dot(x, q * y); }

double Conic::angle(const Vec3& x) const {
  const Vec3 y = frame * x;
  const double sg = y[2] >= 0 ? 1.0 : -1.0;
  double th = std::atan2(sg * y[1], sg * y[0]);
  if (th < 0) th += 2 * std::numbers::pi;
  if (th >= 2 * std::numbers::pi) th -= 2 * std::numbers::pi;
  return th;
}

Vec3 Conic::point_at(double th) const {
  return normalized(frame.inverse() * Vec3{std::cos(th), std::sin(th), 1.0});
}

Conic conic_through(std::span<const Vec3> points, const Tolerances& tol) {
  if (points.size() < 5) throw Error(ErrorCode::DegenerateConic, "need at least 5 points");
  Eigen::MatrixXd a(points.size(), 6);
  for (size_t i = 0; i < points.size(); ++i) {
    const Vec3 p = normalized(points[i]);
    a.row(i) << p[0] * p[0], p[1] * p[1], p[2] * p[2], 2 * p[0] * p[1], 2 * p[0] * p[2],
        2 * p[1] * p[2];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv.size() >= 5 && sv(4) < tol.conic * std::max(1.0, sv(0)))
    throw Error(ErrorCode::DegenerateConic, "points do not determine a unique conic");
  const Eigen::VectorXd n = svd.matrixV().col(5);
  Mat3 q;
  q(0, 0) = n(0);
  q(1, 1) = n(1);
  q(2, 2) = n(2);
  q(0, 1) = q(1, 0) = n(3);
  q(0, 2) = q(2, 0) = n(4);
  q(1, 2) = q(2, 1) = n(5);
  return Conic::from_form(q, tol);
}

double conic_residual(const Conic& c, std::span<const Vec3> points) {
  double r = 0;
  for (const auto& p : points) r = std::max(r, std::abs(c.eval(p)));
  return r;
}

Vec3 second_intersection(const Conic& c, const Vec3& p, const ProjLine& l,
                         const Tolerances& tol) {
  const Vec3 ph = normalized(p);
  const Vec3 d = normalized(cross(l.l, ph));
  const double bd = c.bilinear(ph, d);
  if (std::abs(bd) < tol.conic) return ph;  // tangent line
  return normalized(c.bilinear(d, d) * ph - 2 * bd * d);
}

Side mobius_side(const Conic& c, const Vec3& x, const Tolerances& tol) {
  const double v = c.eval(x);
  if (v > tol.side) return Side::MobiusStrip;
  if (v < -tol.side) return Side::InsideDisk;
  return Side::OnConic;
}

ChartHull::ChartHull(const ProjLine& chart, std::span<const Vec3> points, const Tolerances& tol)
    : chart_(chart), points_(points.begin(), points.end()), tol_(tol) {
  // Householder reflection taking the chart covector to e3.
  const Vec3& l = chart_.l;
  const Vec3 e3{0, 0, 1};
  Vec3 v = l - e3;
  if (norm(v) < 1e-12) {
    rot_ = Mat3::identity();
  } else {
    v = normalized(v);
    rot_ = Mat3::identity() - 2.0 * Mat3::outer(v, v);
  }
  std::vector<Vec2> pts;
  for (const auto& p : points_) {
    Vec3 u = normalized(p);
    const double s = dot(l, u);
    if (std::abs(s) < tol.inc) throw Error(ErrorCode::PointOnChartLine, "hull vertex on chart line");
    if (s < 0) u = -1.0 * u;
    lifts_.push_back(u);
    pts.push_back(to_chart(u));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    hull_ = pts;
    return;
  }
  auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  hull_ = h;
}

Vec2 ChartHull::to_chart(const Vec3& x) const {
  const Vec3 y = rot_ * x;
  if (std::abs(y[2]) < tol_.inc * norm(x))
    throw Error(ErrorCode::PointOnChartLine, "point on chart line");
  return {y[0] / y[2], y[1] / y[2]};
}

Vec3 ChartHull::from_chart(const Vec2& y) const {
  return normalized(rot_.transpose() * Vec3{y[0], y[1], 1.0});
}

double ChartHull::margin_chart(const Vec2& y) const {
  auto seg_dist = [](const Vec2& p, const Vec2& a, const Vec2& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
  };
  if (hull_.empty()) return -1e300;
  if (hull_.size() == 1) return -std::hypot(y[0] - hull_[0][0], y[1] - hull_[0][1]);
  if (hull_.size() == 2) return -seg_dist(y, hull_[0], hull_[1]);
  double m = 1e300;
  for (size_t i = 0; i < hull_.size(); ++i) {
    const Vec2& a = hull_[i];
    const Vec2& b = hull_[(i + 1) % hull_.size()];
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double d = (dx * (y[1] - a[1]) - dy * (y[0] - a[0])) / std::hypot(dx, dy);
    m = std::min(m, d);
  }
  return m;
}

double ChartHull::margin(const Vec3& x) const { return margin_chart(to_chart(x)); }

bool ChartHull::contains(const Vec3& x, bool strict) const {
  const double m = margin(x);
  return strict ? m > 0 : m >= -tol_.inc;
}

bool ChartHull::avoids(const ProjLine& l, double eps) const {
  bool pos = true, neg = true;
  for (const auto& u : lifts_) {
    const double s = dot(l.l, u);
    pos = pos && s > eps;
    neg = neg && s < -eps;
  }
  return pos || neg;
}

double ChartHull::line_margin(const ProjLine& l) const {
  const Vec3 lc = rot_ * l.l;  // rot_ is symmetric and orthogonal
  const double den = std::hypot(lc[0], lc[1]);
  if (den == 0) return 1e300;
  double lo = 1e300, hi = -1e300;
  for (const auto& u : lifts_) {
    const Vec2 y = to_chart(u);
    const double d = (lc[0] * y[0] + lc[1] * y[1] + lc[2]) / den;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (lo > 0) return lo;
  if (hi < 0) return -hi;
  return -std::min(hi, -lo);
}

double ChartHull::diameter() const {
  double d = 0;
  for (size_t i = 0; i < hull_.size(); ++i)
    for (size_t j = i + 1; j < hull_.size(); ++j)
      d = std::max(d, std::hypot(hull_[i][0] - hull_[j][0], hull_[i][1] - hull_[j][1]));
  return d;
}

Vec3 ChartHull::barycenter() const {
  Vec2 s{0, 0};
  for (const auto& h : hull_) {
    s[0] += h[0];
    s[1] += h[1];
  }
  const double n = static_cast<double>(hull_.size());
  return from_chart({s[0] / n, s[1] / n});
}

double cross_ratio(const Vec3& a, const Vec3& x, const Vec3& y, const Vec3& b,
                   const Tolerances& tol) {
  const Vec3 ah = normalized(a), xh = normalized(x), yh = normalized(y), bh = normalized(b);
  // plane of the common line, from the pair of points furthest apart
  std::array<Vec3, 4> p{ah, xh, yh, bh};
  Vec3 n{0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Vec3 c = cross(p[i], p[j]);
      if (norm(c) > norm(n)) n = c;
    }
  if (norm(n) < tol.cr) throw Error(ErrorCode::CoincidentPoints, "all four points coincide");
  n = normalized(n);
  for (const auto& q : p)
    if (std::abs(dot(n, q)) > tol.cr) throw Error(ErrorCode::NotCollinear, "points not collinear");
  const Vec3 e1 = ah;
  const Vec3 e2 = normalized(cross(n, e1));
  auto det2 = [&](const Vec3& u, const Vec3& v) {
    return dot(u, e1) * dot(v, e2) - dot(u, e2) * dot(v, e1);
  };
  const double den1 = det2(xh, ah), den2 = det2(bh, yh);
  if (std::abs(den1) < tol.cr || std::abs(den2) < tol.cr)
    throw Error(ErrorCode::CoincidentPoints, "a = x or b = y");
  return std::abs(det2(yh, ah) * det2(bh, xh) / (den1 * den2));
}

}  // namespace anosov::projlin
