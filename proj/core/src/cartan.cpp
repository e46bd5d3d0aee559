#include "anosov/cartan.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "anosov/error.hpp"

namespace anosov::cartan {

namespace {

// (i, j) is the generator pair whose product has order p_k.
constexpr std::array<std::array<int, 2>, 3> kPair = {{{1, 2}, {2, 0}, {0, 1}}};

double max_abs_dev_from_identity(const Mat3& m) {
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return r;
}

}  // namespace

void TriangleSignature::validate() const {
  if (p1 < 2 || p2 < 2 || p3 < 2)
    throw Error(ErrorCode::InvalidSignature, "orders must be at least 2: " + str());
  const long a = p1, b = p2, c = p3;
  if (a * b + b * c + c * a >= a * b * c)
    throw Error(ErrorCode::InvalidSignature, "signature is not hyperbolic: " + str());
}

std::string TriangleSignature::str() const {
  return "(" + std::to_string(p1) + "," + std::to_string(p2) + "," + std::to_string(p3) + ")";
}

std::string RepType::str() const {
  return "(" + std::to_string(q1) + "," + std::to_string(q2) + "," + std::to_string(q3) + ")";
}

RepType hitchin_type() { return {1, 1, 1}; }

RepType barbot_type(const TriangleSignature& sig) {
  if (!sig.all_odd())
    throw Error(ErrorCode::TypeOutOfRange, "Barbot type needs all orders odd: " + sig.str());
  return {(sig.p1 - 1) / 2, (sig.p2 - 1) / 2, (sig.p3 - 1) / 2};
}

void validate_type(const TriangleSignature& sig, const RepType& type) {
  for (int k = 0; k < 3; ++k) {
    const int q = type.q(k), p = sig.p(k);
    if (q < 1 || 2 * q > p)
      throw Error(ErrorCode::TypeOutOfRange, "type " + type.str() + " out of range for " + sig.str());
  }
}

std::array<double, 3> type_constants(const TriangleSignature& sig, const RepType& type) {
  std::array<double, 3> c{};
  for (int k = 0; k < 3; ++k) {
    if (2 * type.q(k) == sig.p(k))
      c[k] = 0;
    else
      c[k] = 2 * std::cos(type.q(k) * std::numbers::pi / sig.p(k));
  }
  return c;
}

bool is_single_point(const TriangleSignature& sig, const RepType& type) {
  for (int k = 0; k < 3; ++k)
    if (2 * type.q(k) == sig.p(k)) return true;
  return false;
}

bool CartanMatrix::has_parameter() const { return !std::isnan(t); }

CartanMatrix normal_form(const TriangleSignature& sig, const RepType& type, double t) {
  sig.validate();
  validate_type(sig, type);
  const bool single = is_single_point(sig, type);
  if (!single && t == 0) throw Error(ErrorCode::ZeroParameter, "t must be nonzero");
  if (!single && !std::isfinite(t)) throw Error(ErrorCode::ZeroParameter, "t must be finite");
  const double tt = single ? 1.0 : t;
  const auto c = type_constants(sig, type);
  CartanMatrix m;
  m.sig = sig;
  m.type = type;
  m.t = single ? std::numeric_limits<double>::quiet_NaN() : t;
  m.a.a = {{{2, -c[2], -c[1]}, {-c[2], 2, -tt * c[0]}, {-c[1], -c[0] / tt, 2}}};
  return m;
}

double parameter_of(const Mat3& a, const TriangleSignature& sig, const RepType& type) {
  if (is_single_point(sig, type)) return std::numeric_limits<double>::quiet_NaN();
  const auto c = type_constants(sig, type);
  return -a(0, 1) * a(1, 2) * a(2, 0) / (c[0] * c[1] * c[2]);
}

RepType type_of(const Mat3& a, const TriangleSignature& sig, double tol) {
  std::array<int, 3> q{};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = kPair[k];
    const double prod = a(i, j) * a(j, i);
    const int p = sig.p(k);
    double best = 1e300;
    for (int cand = 1; 2 * cand <= p; ++cand) {
      const double ck = 2 * std::cos(cand * std::numbers::pi / p);
      const double err = std::abs(ck * ck - prod);
      if (err < best) {
        best = err;
        q[k] = cand;
      }
    }
    if (best > tol * std::max(1.0, std::abs(prod)))
      throw Error(ErrorCode::TypeOutOfRange, "2-cyclic product matches no type");
  }
  return {q[0], q[1], q[2]};
}

CartanMatrix dual_representation(const CartanMatrix& c) {
  CartanMatrix d = c;
  d.a = c.a.transpose();
  if (c.has_parameter()) d.t = 1.0 / c.t;
  return d;
}

CartanMatrix relabel(const CartanMatrix& c, const std::array<int, 3>& perm) {
  CartanMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.a(i, j) = c.a(perm[i], perm[j]);
  r.sig = {c.sig.p(perm[0]), c.sig.p(perm[1]), c.sig.p(perm[2])};
  r.type = {c.type.q(perm[0]), c.type.q(perm[1]), c.type.q(perm[2])};
  r.t = c.has_parameter() ? parameter_of(r.a, r.sig, r.type) : c.t;
  return r;
}

CartanMatrix swap_p2_p3(const CartanMatrix& c) { return relabel(c, {0, 2, 1}); }

std::uint64_t next_rep_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

double relation_residual(const std::array<Mat3, 3>& s, const TriangleSignature& sig) {
  double r = 0;
  for (int i = 0; i < 3; ++i) r = std::max(r, max_abs_dev_from_identity(s[i] * s[i]));
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = kPair[k];
    const Mat3 g = s[i] * s[j];
    Mat3 pw = Mat3::identity();
    for (int n = 0; n < sig.p(k); ++n) pw = pw * g;
    r = std::max(r, max_abs_dev_from_identity(pw));
  }
  return r;
}

CoxeterRep build_representation(const CartanMatrix& c, const Tolerances& tol) {
  CoxeterRep r;
  r.cartan = c;
  for (int i = 0; i < 3; ++i) {
    r.b[i] = {0, 0, 0};
    r.b[i][i] = 1;
    r.alpha[i] = c.a.row(i);
    r.s[i] = Mat3::outer(r.b[i], r.alpha[i]) - Mat3::identity();
  }
  const double res = relation_residual(r.s, c.sig);
  if (!(res < tol.rel))
    throw Error(ErrorCode::RelationViolation, "worst relation residual " + std::to_string(res));
  r.id = next_rep_id();
  return r;
}

CoxeterRep relabel(const CoxeterRep& r, const std::array<int, 3>& perm) {
  CoxeterRep out;
  for (int i = 0; i < 3; ++i) {
    out.s[i] = r.s[perm[i]];
    out.b[i] = r.b[perm[i]];
    out.alpha[i] = r.alpha[perm[i]];
  }
  out.cartan = relabel(r.cartan, perm);
  out.id = next_rep_id();
  return out;
}

CoxeterRep inverse_transpose(const CoxeterRep& r) {
  CoxeterRep out;
  for (int i = 0; i < 3; ++i) {
    out.s[i] = r.s[i].transpose();
    out.b[i] = r.alpha[i];
    out.alpha[i] = r.b[i];
  }
  out.cartan = dual_representation(r.cartan);
  out.id = next_rep_id();
  return out;
}

}  // namespace anosov::cartan
