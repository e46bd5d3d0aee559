#include "anosov/classify.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "anosov/error.hpp"

namespace anosov::classify {

using projlin::Mat3;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Mat3 coxeter_matrix(const CartanMatrix& c) {
  std::array<Mat3, 3> s;
  for (int i = 0; i < 3; ++i) {
    projlin::Vec3 e{0, 0, 0};
    e[i] = 1;
    s[i] = Mat3::outer(e, c.a.row(i)) - Mat3::identity();
  }
  return s[0] * s[1] * s[2];
}

Regime regime_from_eig(const projlin::EigenDecomposition& e) {
  switch (e.spectrum) {
    case projlin::Spectrum::RealDistinct: return Regime::RealDistinct;
    case projlin::Spectrum::RepeatedReal: return Regime::DoubleNondiagonalizable;
    case projlin::Spectrum::ComplexPair: return Regime::ComplexPair;
  }
  return Regime::ComplexPair;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

std::string_view to_string(Component c) {
  switch (c) {
    case Component::Hitchin: return "hitchin";
    case Component::Barbot: return "barbot";
    case Component::Other: return "other";
    case Component::NonCoxeter: return "non-coxeter";
  }
  return "other";
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::RealDistinct: return "real-distinct";
    case Regime::DoubleNondiagonalizable: return "double-nondiagonalizable";
    case Regime::ComplexPair: return "complex-pair";
  }
  return "complex-pair";
}

TraceData traces(const CartanMatrix& c) {
  const Mat3& a = c.a;
  TraceData d;
  const double p23 = a(1, 2) * a(2, 1), p31 = a(2, 0) * a(0, 2), p12 = a(0, 1) * a(1, 0);
  d.t1 = p23 - 1;
  d.t2 = p31 - 1;
  d.t3 = p12 - 1;
  d.x = a(0, 1) * a(1, 2) * a(2, 0) - p12 - p23 - p31 + 3;
  d.y = a(1, 0) * a(2, 1) * a(0, 2) - p12 - p23 - p31 + 3;
  d.u = (d.x + d.y) / 2;
  d.v = (d.x - d.y) / 2;
  return d;
}

TraceData traces(const CoxeterRep& rep) {
  const auto& s = rep.s;
  TraceData d;
  d.t1 = (s[1] * s[2]).trace();
  d.t2 = (s[2] * s[0]).trace();
  d.t3 = (s[0] * s[1]).trace();
  d.x = (s[0] * s[1] * s[2]).trace();
  d.y = (s[2] * s[1] * s[0]).trace();
  d.u = (d.x + d.y) / 2;
  d.v = (d.x - d.y) / 2;
  return d;
}

double discriminant(double x, double y) {
  return x * x * y * y - 4 * (x * x * x + y * y * y) + 18 * x * y - 27;
}

Regime regime_from_delta(double delta, const Tolerances& tol) {
  if (delta > tol.delta) return Regime::RealDistinct;
  if (delta < -tol.delta) return Regime::ComplexPair;
  return Regime::DoubleNondiagonalizable;
}

std::array<double, 3> barbot_constants(const TriangleSignature& sig) {
  return cartan::type_constants(sig, cartan::barbot_type(sig));
}

double barbot_x(const TriangleSignature& sig, double t) {
  const auto c = barbot_constants(sig);
  return -t * c[0] * c[1] * c[2] - c[0] * c[0] - c[1] * c[1] - c[2] * c[2] + 3;
}

double barbot_y(const TriangleSignature& sig, double t) { return barbot_x(sig, 1.0 / t); }

double goldman_f(const std::array<double, 3>& c, double u) {
  const double s = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  const double p = c[0] * c[1] * c[2];
  return (u - 3 + s) * (u - 3 + s) - p * p;
}

double goldman_g(double u, int sign) {
  if (2 * u + 3 < 0) throw Error(ErrorCode::DomainError, "g is defined for u >= -3/2");
  return u * u + 12 * u + 9 + (sign >= 0 ? 2.0 : -2.0) * std::pow(2 * u + 3, 1.5);
}

GoldmanData goldman_curves(const TriangleSignature& sig, const RepType& type, double u_min,
                           double u_max, int samples) {
  sig.validate();
  cartan::validate_type(sig, type);
  if (u_min < -1.5) throw Error(ErrorCode::DomainError, "u range must start at or above -3/2");
  const auto c = cartan::type_constants(sig, type);
  const double s = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  const double p = c[0] * c[1] * c[2];
  GoldmanData g;
  g.u_minus = 3 - s - std::abs(p);
  g.u_plus = 3 - s + std::abs(p);
  for (int k = 0; k < samples; ++k) {
    const double u = samples == 1 ? u_min : u_min + (u_max - u_min) * k / (samples - 1);
    g.rows.push_back({u, goldman_f(c, u), goldman_g(u, 1), goldman_g(u, -1)});
  }
  return g;
}

double t_red(const TriangleSignature& sig) {
  // det of the normal form vanishes: c1 c2 c3 (t + 1/t) = 8 - 2 (c1^2 + c2^2 + c3^2)
  const auto c = barbot_constants(sig);
  const double k = (8 - 2 * (c[0] * c[0] + c[1] * c[1] + c[2] * c[2])) / (c[0] * c[1] * c[2]);
  if (k <= 2) throw Error(ErrorCode::BracketingFailed, "no reducible parameter for " + sig.str());
  return 0.5 * (k + std::sqrt(k * k - 4));
}

double t_crit(const TriangleSignature& sig) {
  const double hi0 = t_red(sig);
  auto delta = [&](double t) { return discriminant(barbot_x(sig, t), barbot_y(sig, t)); };
  double lo = 1 + 1e-9, hi = hi0;
  if (!(delta(lo) < 0 && delta(hi) > 0))
    throw Error(ErrorCode::BracketingFailed, "discriminant does not change sign on (1, t_red]");
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (delta(mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

Verdict classify_with(const CartanMatrix& c, double tc, double tr_, const Tolerances& tol) {
  Verdict v;
  v.traces = traces(c);
  v.delta = discriminant(v.traces.x, v.traces.y);
  v.regime = regime_from_delta(v.delta, tol);
  v.eig_regime = regime_from_eig(projlin::eig3(coxeter_matrix(c), tol));
  v.t_crit = tc;
  v.t_red = tr_;

  const bool positive = !c.has_parameter() || c.t > 0;
  if (c.type == cartan::hitchin_type() && positive) {
    v.component = Component::Hitchin;
    v.anosov = true;
  } else if (c.sig.all_odd() && c.type == cartan::barbot_type(c.sig) && positive) {
    v.component = Component::Barbot;
    v.anosov = v.regime == Regime::RealDistinct;
  } else {
    v.component = Component::Other;
    v.anosov = false;
  }
  return v;
}

}  // namespace

Verdict classify(const CartanMatrix& c, const Tolerances& tol) {
  double tc = kNaN, tr_ = kNaN;
  if (c.sig.all_odd()) {
    tr_ = t_red(c.sig);
    tc = t_crit(c.sig);
  }
  return classify_with(c, tc, tr_, tol);
}

Verdict classify_traces(const TriangleSignature& sig, const TraceData& tr, const Tolerances& tol) {
  sig.validate();
  if (std::min({sig.p1, sig.p2, sig.p3}) < 3)
    throw Error(ErrorCode::InvalidSignature, "trace criterion needs all orders >= 3");
  Verdict v;
  v.traces = tr;
  v.delta = discriminant(tr.x, tr.y);
  v.regime = regime_from_delta(v.delta, tol);
  v.eig_regime = v.regime;
  v.t_crit = sig.all_odd() ? t_crit(sig) : kNaN;
  v.t_red = sig.all_odd() ? t_red(sig) : kNaN;

  std::array<double, 3> c{};
  for (int k = 0; k < 3; ++k) c[k] = 2 * std::cos(std::numbers::pi / sig.p(k));
  const std::array<double, 3> t{tr.t1, tr.t2, tr.t3};
  bool hitchin = true, barbot = sig.all_odd();
  for (int k = 0; k < 3; ++k) {
    hitchin = hitchin && close(t[k], c[k] * c[k] - 1);
    barbot = barbot && close(t[k], 1 - c[k]);
  }
  const bool positive = tr.x + tr.t1 + tr.t2 + tr.t3 < 0;
  if (hitchin) {
    v.component = positive ? Component::Hitchin : Component::Other;
    v.anosov = positive;
  } else if (barbot) {
    v.component = positive ? Component::Barbot : Component::Other;
    v.anosov = v.delta > tol.delta;
  } else {
    v.component = Component::Other;
    v.anosov = false;
  }
  return v;
}

std::vector<SweepRow> sweep(const TriangleSignature& sig, const RepType& type, double t_min,
                            double t_max, int steps, const Tolerances& tol) {
  double tc = kNaN, tr_ = kNaN;
  if (sig.all_odd()) {
    tr_ = t_red(sig);
    tc = t_crit(sig);
  }
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * k / (steps - 1);
    const auto c = cartan::normal_form(sig, type, t);
    const auto v = classify_with(c, tc, tr_, tol);
    rows.push_back({t, v.traces, v.delta, v.regime, v.anosov});
  }
  return rows;
}

}  // namespace anosov::classify
