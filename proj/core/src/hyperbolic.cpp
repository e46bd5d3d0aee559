#include "anosov/hyperbolic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anosov/error.hpp"

namespace anosov::hyperbolic {

using projlin::dot;
using projlin::normalized;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kEndpointEps = 1e-9;  // angle tolerance for endpoint matching

Mat3 solve_invariant_form(const std::array<Mat3, 3>& gens) {
  const std::array<std::array<int, 2>, 6> idx = {{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
  Eigen::MatrixXd a(18, 6);
  for (int k = 0; k < 6; ++k) {
    Mat3 e;
    e(idx[k][0], idx[k][1]) = 1;
    e(idx[k][1], idx[k][0]) = 1;
    for (int g = 0; g < 3; ++g) {
      const Mat3 d = gens[g].transpose() * e * gens[g] - e;
      for (int r = 0; r < 6; ++r) a(6 * g + r, k) = d(idx[r][0], idx[r][1]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv(5) > 1e-9 * sv(0) || sv(4) < 1e-6 * sv(0))
    throw Error(ErrorCode::FormNotFound, "invariant form is not unique");
  const Eigen::VectorXd n = svd.matrixV().col(5);
  Mat3 j;
  for (int k = 0; k < 6; ++k) {
    j(idx[k][0], idx[k][1]) = n(k);
    j(idx[k][1], idx[k][0]) = n(k);
  }
  return j;
}

Vec3 attracting_vector(const Mat3& m) {
  const auto e = projlin::eig3(m);
  if (e.spectrum != projlin::Spectrum::RealDistinct || !e.vectors[0])
    throw Error(ErrorCode::NotHyperbolic, "word is not hyperbolic");
  return *e.vectors[0];
}

Vec3 repelling_vector(const Mat3& m) {
  const auto e = projlin::eig3(m);
  if (e.spectrum != projlin::Spectrum::RealDistinct || !e.vectors[2])
    throw Error(ErrorCode::NotHyperbolic, "word is not hyperbolic");
  return *e.vectors[2];
}

}  // namespace

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double Interval::length() const { return wrap_angle(end - start); }

bool Interval::contains(double angle, double eps) const {
  const double d = wrap_angle(angle - start);
  return d <= length() + eps || d >= kTwoPi - eps;
}

double Interval::distance(double angle) const {
  const double d = wrap_angle(angle - start);
  if (d <= length()) return 0;
  return std::min(d - length(), kTwoPi - d);
}

CirclePoint FuchsianRep::to_circle(const Vec3& v) const { return {j_.angle(v)}; }

Vec3 FuchsianRep::null_vector(const CirclePoint& p) const { return j_.point_at(p.angle); }

double FuchsianRep::oriented_angle(const Vec3& v) const {
  return wrap_angle(orientation_ * j_.angle(v));
}

double FuchsianRep::distance(const Vec3& x, const Vec3& y) const {
  const double xy = j_.bilinear(x, y);
  const double xx = j_.bilinear(x, x), yy = j_.bilinear(y, y);
  return std::acosh(std::max(1.0, std::abs(xy) / std::sqrt(xx * yy)));
}

void FuchsianRep::build_tables() {
  const auto sig = rep_.cartan.sig;
  has_tables_ = sig.all_odd();
  if (!has_tables_) return;

  std::array<std::vector<double>, 3> raw;
  for (int f = 0; f < 3; ++f) {
    FrameTables& ft = frames_[f];
    ft.frame = f;
    ft.order = sig.p((f + 2) % 3);
    const int m = ft.order;
    const Mat3& x = rep_.s[f];
    const Mat3& y = rep_.s[(f + 1) % 3];
    const Mat3 xyz = group::evaluate_uncached(group::cyclic_shift(GroupWord::parse("abc"), f), rep_.s);
    ft.z.assign(2 * m, Vec3{});
    ft.z[0] = attracting_vector(xyz);
    const Mat3 yx = y * x;
    for (int j = 1; j < m; ++j) ft.z[2 * j] = normalized(yx * ft.z[2 * j - 2]);
    for (int i = 1; i < 2 * m; i += 2) ft.z[i] = normalized(x * ft.z[((3 - i) % (2 * m) + 2 * m) % (2 * m)]);
    for (const auto& v : ft.z) raw[f].push_back(j_.angle(v));
  }

  auto increasing = [](const std::vector<double>& a, int sign) {
    double prev = 0;
    for (size_t i = 1; i < a.size(); ++i) {
      const double d = wrap_angle(sign * (a[i] - a[0]));
      if (d <= prev) return false;
      prev = d;
    }
    return true;
  };
  if (increasing(raw[0], 1))
    orientation_ = 1;
  else if (increasing(raw[0], -1))
    orientation_ = -1;
  else
    throw Error(ErrorCode::NotHyperbolic, "orbit points are not in cyclic order");

  for (int f = 0; f < 3; ++f) {
    FrameTables& ft = frames_[f];
    if (!increasing(raw[f], orientation_))
      throw Error(ErrorCode::NotHyperbolic, "frame orbit points are not in cyclic order");
    ft.z_angle.clear();
    for (const auto& v : ft.z) ft.z_angle.push_back(oriented_angle(v));
    ft.I = {ft.z_angle[3 % ft.z.size()], ft.z_angle[0]};
    ft.K = {ft.z_angle[1], ft.z_angle[2]};
    const Mat3 xyz = group::evaluate_uncached(group::cyclic_shift(GroupWord::parse("abc"), f), rep_.s);
    const Mat3 yzx = group::evaluate_uncached(group::cyclic_shift(GroupWord::parse("bca"), f), rep_.s);
    ft.J = {oriented_angle(repelling_vector(yzx)), oriented_angle(repelling_vector(xyz))};
    ft.q = group::frame_alphabet(sig, f);
  }

  for (int f = 0; f < 3; ++f) {
    FrameTables& ft = frames_[f];
    const FrameTables& nx = frames_[next_frame(f)];
    ft.q_inverse.clear();
    ft.sub.clear();
    for (const auto& w : ft.q) {
      const Mat3 g = group::evaluate_uncached(w, rep_.s);
      ft.q_inverse.push_back(group::evaluate_uncached(w.inverse(), rep_.s));
      const double a = oriented_angle(g * nx.z[3 % nx.z.size()]);
      const double b = oriented_angle(g * nx.z[0]);
      if (w.size() % 2 == 0)
        ft.sub.push_back({a, b});
      else
        ft.sub.push_back({b, a});
    }
  }
}

FuchsianRep fuchsian(const TriangleSignature& sig, const Tolerances& tol) {
  FuchsianRep f;
  f.rep_ = cartan::build_representation(cartan::normal_form(sig, cartan::hitchin_type(), 1.0), tol);
  f.j_ = projlin::Conic::from_form(solve_invariant_form(f.rep_.s), tol);
  f.o_ = normalized(f.j_.frame.row(2));
  f.build_tables();
  return f;
}

FuchsianRep relabel(const FuchsianRep& f, const std::array<int, 3>& perm) {
  FuchsianRep g;
  g.rep_ = cartan::relabel(f.rep_, perm);
  g.j_ = f.j_;
  g.o_ = f.o_;
  g.build_tables();
  return g;
}

FixedPoints boundary_fixed_points(const FuchsianRep& f, const GroupWord& w, const Tolerances& tol) {
  const Mat3 m = group::evaluate(w, f.rep());
  const auto e = projlin::eig3(m, tol);
  const double m0 = std::abs(e.values[0]), m1 = std::abs(e.values[1]), m2 = std::abs(e.values[2]);
  const double gap = std::sqrt(tol.eig) * std::max(1.0, m0);
  if (e.spectrum != projlin::Spectrum::RealDistinct || m0 - m1 < gap || m1 - m2 < gap ||
      !e.vectors[0] || !e.vectors[2])
    throw Error(ErrorCode::NotHyperbolic, "word " + w.str() + " is not hyperbolic");
  FixedPoints fp;
  fp.attracting_vec = *e.vectors[0];
  fp.repelling_vec = *e.vectors[2];
  fp.attracting = f.to_circle(fp.attracting_vec);
  fp.repelling = f.to_circle(fp.repelling_vec);
  return fp;
}

std::vector<CirclePoint> z_points(const FuchsianRep& f) {
  if (!f.has_tables()) throw Error(ErrorCode::EvenSignature, "z points need odd orders");
  std::vector<CirclePoint> out;
  for (const auto& v : f.frame(0).z) out.push_back(f.to_circle(v));
  return out;
}

IntervalSet intervals(const FuchsianRep& f) {
  if (!f.has_tables()) throw Error(ErrorCode::EvenSignature, "intervals need odd orders");
  IntervalSet s;
  for (int k = 0; k < 3; ++k) {
    s.I[k] = f.frame(k).I;
    s.J[k] = f.frame(k).J;
    s.K[k] = f.frame(k).K;
  }
  return s;
}

GroupWord Code::prefix(size_t n) const {
  GroupWord g;
  for (size_t k = 0; k < n && k < gamma.size(); ++k) g = g * gamma[k];
  return g;
}

int Code::frame_after(size_t n) const {
  int f = start_frame;
  for (size_t k = 0; k < n; ++k) f = next_frame(f);
  return f;
}

Code code(const FuchsianRep& f, const Vec3& x, int depth) {
  if (!f.has_tables()) throw Error(ErrorCode::EvenSignature, "codes need odd orders");
  Code c;
  Vec3 y = normalized(x);
  double th = f.oriented_angle(y);
  if (f.frame(0).I.contains(th, kEndpointEps))
    c.start_frame = 0;
  else if (f.frame(2).I.contains(th, kEndpointEps))
    c.start_frame = 2;
  else
    c.start_frame = 1;

  int fr = c.start_frame;
  for (int n = 0; n < depth; ++n) {
    const FrameTables& ft = f.frame(fr);
    c.max_violation = std::max(c.max_violation, ft.I.distance(th));
    int best = -1;
    double best_depth = -1;
    int at_start = -1;
    int nearest = 0;
    double nearest_d = 1e300;
    for (size_t k = 0; k < ft.sub.size(); ++k) {
      const Interval& s = ft.sub[k];
      const double d = s.distance(th);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = static_cast<int>(k);
      }
      if (!s.contains(th, kEndpointEps)) continue;
      const double from_start = wrap_angle(th - s.start);
      const double to_end = wrap_angle(s.end - th);
      const double inner = from_start <= s.length() ? std::min(from_start, to_end) : -1;
      if (inner > kEndpointEps && inner > best_depth) {
        best_depth = inner;
        best = static_cast<int>(k);
      }
      if (at_start < 0 && (from_start <= kEndpointEps || from_start >= kTwoPi - kEndpointEps))
        at_start = static_cast<int>(k);
    }
    int pick = best >= 0 ? best : at_start >= 0 ? at_start : nearest;
    if (best < 0 && at_start < 0) {
      // fall back to any arc containing the point (end-point match)
      for (size_t k = 0; k < ft.sub.size(); ++k)
        if (ft.sub[k].contains(th, kEndpointEps)) {
          pick = static_cast<int>(k);
          break;
        }
    }
    c.frames.push_back(fr);
    c.letters.push_back(pick);
    c.gamma.push_back(ft.q[pick]);
    // keep the orbit on the circle and inside the chosen arc, so rounding
    // cannot carry it out of the admissible intervals
    const Interval& s = ft.sub[pick];
    if (!s.contains(th))
      th = wrap_angle(th - s.start) > 0.5 * (s.length() + kTwoPi) ? s.start : s.end;
    y = f.null_vector({wrap_angle(f.orientation() * th)});
    y = normalized(ft.q_inverse[pick] * y);
    th = f.oriented_angle(y);
    fr = next_frame(fr);
  }
  c.max_violation = std::max(c.max_violation, f.frame(fr).I.distance(th));
  return c;
}

Code code(const FuchsianRep& f, const CirclePoint& x, int depth) {
  return code(f, f.null_vector(x), depth);
}

}  // namespace anosov::hyperbolic
