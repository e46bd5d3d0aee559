#include "anosov/limitcurve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <thread>

#include "anosov/classify.hpp"
#include "anosov/error.hpp"
#include "anosov/group.hpp"

namespace anosov::limitcurve {

using projlin::ChartHull;
using projlin::ProjLine;
using projlin::operator+;
using projlin::operator*;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::array<int, 3> kSwap{0, 2, 1};
constexpr double kNearIncident = 1e-3;

Mat3 scaled(const Mat3& m) {
  const double n = m.norm();
  return n > 0 ? (1.0 / n) * m : m;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  const unsigned w = worker_count(threads, n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned k = 0; k < w; ++k)
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < n; i += w) body(i);
    });
}

// Lift with <x_k, x_{k+1}> >= 0.
std::vector<Vec3> continuous_lift(const std::vector<TracePoint>& s) {
  std::vector<Vec3> out;
  out.reserve(s.size());
  for (const auto& f : s) {
    Vec3 v = projlin::normalized(f.point);
    if (!out.empty() && projlin::dot(out.back(), v) < 0) v = projlin::operator*(-1.0, v);
    out.push_back(v);
  }
  return out;
}

void refine(const BoundaryMap& m, int depth, double max_step, int level, const TracePoint& a,
            const TracePoint& b, std::vector<TracePoint>& out) {
  if (level <= 0 || projlin::proj_distance(a.point, b.point) <= max_step) return;
  const double mid = 0.5 * (a.angle + b.angle);
  const TracePoint c{mid, m.eval({mid}, depth).point};
  refine(m, depth, max_step, level - 1, a, c, out);
  out.push_back(c);
  refine(m, depth, max_step, level - 1, c, b, out);
}

double fit_slope(const std::vector<int>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += double(x[i]) * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

std::string_view to_string(Route r) {
  switch (r) {
    case Route::Direct: return "direct";
    case Route::Swapped: return "swapped";
    case Route::Hitchin: return "hitchin-svd";
  }
  return "direct";
}

BoundaryMap::BoundaryMap(const CoxeterRep& rep, bool allow_critical, const Tolerances& tol)
    : rep_(rep), route_rep_(rep), tol_(tol) {
  const auto sig = rep.sig();
  if (!sig.all_odd()) throw Error(ErrorCode::EvenSignature, "boundary maps need odd orders, got " + sig.str());
  const auto& c = rep.cartan;
  const auto v = classify::classify(c, tol);
  base_ = hyperbolic::fuchsian(sig, tol);

  if (v.component == classify::Component::Hitchin) {
    route_ = Route::Hitchin;
    route_circle_ = base_;
    for (int f = 0; f < 3; ++f)
      for (const auto& w : route_circle_.frame(f).q) q_[f].push_back(group::evaluate(w, route_rep_));
    return;
  }
  if (v.component != classify::Component::Barbot)
    throw Error(ErrorCode::NotInBarbotRange, "no boundary map for this component");

  const double t = c.t, tc = v.t_crit;
  const double band = 1e-9 * tc;
  const bool near_up = std::abs(t - tc) <= band;
  const bool near_down = std::abs(1 / t - tc) <= band;
  critical_ = near_up || near_down;
  if (critical_ && !allow_critical)
    throw Error(ErrorCode::NotInBarbotRange,
                "t is critical; pass allow_critical to sample at t_crit or 1/t_crit");
  char range[160];
  std::snprintf(range, sizeof range, "t = %.12g lies in the non-Anosov interval [%.12g, %.12g]", t,
                1 / tc, tc);
  if (t >= tc || near_up) {
    route_ = Route::Direct;
    route_circle_ = base_;
  } else if (1 / t >= tc || near_down) {
    route_ = Route::Swapped;
    route_rep_ = cartan::relabel(rep, kSwap);
    route_circle_ = hyperbolic::relabel(base_, kSwap);
  } else {
    throw Error(ErrorCode::NotInBarbotRange, range);
  }
  cfg_ = boxes::build_config(route_rep_, tol);
  boxes_ = boxes::build_boxes(*cfg_, tol);
  for (int f = 0; f < 3; ++f)
    for (const auto& w : route_circle_.frame(f).q) q_[f].push_back(group::evaluate(w, route_rep_));
}

std::optional<Vec3> BoundaryMap::chart_line() const {
  if (boxes_.empty()) return std::nullopt;
  return boxes_[0].chart().l;
}

PointValue BoundaryMap::eval(const CirclePoint& x, int depth, bool track_nesting) const {
  const auto cd = hyperbolic::code(route_circle_, x, depth);
  PointValue out;
  out.start_frame = cd.start_frame;
  Mat3 g = Mat3::identity();

  if (route_ == Route::Hitchin) {
    for (std::size_t n = 0; n < cd.letters.size(); ++n) g = scaled(g * q_[cd.frames[n]][cd.letters[n]]);
    const auto s = projlin::svd3(g);
    out.point = projlin::normalized(s.u.col(0));
    out.diameter = s.sigma[0] > 0 ? s.sigma[1] / s.sigma[0] : 1;
    return out;
  }

  const ProjLine chart = boxes_[cd.start_frame].chart();
  auto moved = [&](const Mat3& m, int frame) {
    std::array<Vec3, 6> v;
    const auto& src = boxes_[frame].vertices;
    for (int k = 0; k < 6; ++k) v[k] = projlin::normalized(m * src[k]);
    return v;
  };
  auto hull_of = [&](const std::array<Vec3, 6>& v) {
    try {
      return ChartHull(chart, v, tol_);
    } catch (const Error&) {
      return ChartHull(ProjLine(projlin::row_times(chart.l, g.inverse())), v, tol_);
    }
  };

  double nest = std::numeric_limits<double>::infinity();
  std::optional<ChartHull> prev;
  if (track_nesting) prev.emplace(hull_of(moved(g, cd.start_frame)));
  for (std::size_t n = 0; n < cd.letters.size(); ++n) {
    g = scaled(g * q_[cd.frames[n]][cd.letters[n]]);
    if (track_nesting) {
      ChartHull h = hull_of(moved(g, cd.frame_after(n + 1)));
      nest = std::min(nest, prev->margin(h.barycenter()));
      prev.emplace(std::move(h));
    }
  }
  const ChartHull h = hull_of(moved(g, cd.frame_after(cd.letters.size())));
  out.point = projlin::normalized(h.barycenter());
  out.diameter = h.diameter();
  out.nest_margin = track_nesting ? nest : 0;
  return out;
}

PointValue xi1(const CoxeterRep& rep, const CirclePoint& x, int depth, bool allow_critical) {
  return BoundaryMap(rep, allow_critical).eval(x, depth);
}

PointValue xi2(const CoxeterRep& rep, const CirclePoint& x, int depth, bool allow_critical) {
  return BoundaryMap(cartan::inverse_transpose(rep), allow_critical).eval(x, depth);
}

Curve sample_curve(const CoxeterRep& rep, const CurveOptions& opt, const Tolerances& tol) {
  if (opt.samples < 3) throw Error(ErrorCode::InvalidConfig, "need at least 3 samples");
  if (opt.depth < 0) throw Error(ErrorCode::InvalidConfig, "depth must be non-negative");
  const BoundaryMap m1(rep, opt.allow_critical, tol);
  const BoundaryMap m2(cartan::inverse_transpose(rep), opt.allow_critical, tol);
  const std::size_t n = static_cast<std::size_t>(opt.samples);

  Curve c;
  c.route = m1.route();
  c.critical = m1.critical() || m2.critical();
  c.samples.resize(n);
  std::vector<double> equi(n, 0), equi_ratio(n, 0), nest(n, 0);

  parallel_for(n, opt.threads, [&](std::size_t i) {
    FlagSample& s = c.samples[i];
    s.x.angle = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    s.depth = opt.depth;
    const auto p = m1.eval(s.x, opt.depth, true);
    const auto l = m2.eval(s.x, opt.depth);
    s.point = p.point;
    s.line = projlin::normalized(l.point);
    s.diam1 = p.diameter;
    s.diam2 = l.diameter;
    nest[i] = p.nest_margin;
    const auto& fu = m1.circle();
    for (int k = 0; k < 3; ++k) {
      const Vec3 moved = fu.rep().s[k] * fu.null_vector(s.x);
      const auto q = m1.eval(fu.to_circle(moved), opt.depth);
      const double r = projlin::proj_distance(q.point, rep.s[k] * s.point);
      equi[i] = std::max(equi[i], r);
      equi_ratio[i] = std::max(equi_ratio[i], r / std::max(10 * std::max(q.diameter, p.diameter), 1e-12));
    }
  });

  auto& d = c.diag;
  d.min_pair_separation = std::numeric_limits<double>::infinity();
  d.min_transversality = std::numeric_limits<double>::infinity();
  d.min_nest_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = c.samples[i];
    d.incidence_residual = std::max(d.incidence_residual, std::abs(projlin::dot(s.line, s.point)));
    d.max_diameter = std::max({d.max_diameter, s.diam1, s.diam2});
    d.equivariance_residual = std::max(d.equivariance_residual, equi[i]);
    d.equivariance_ratio = std::max(d.equivariance_ratio, equi_ratio[i]);
    if (m1.route() != Route::Hitchin) d.min_nest_margin = std::min(d.min_nest_margin, nest[i]);
  }
  if (m1.route() == Route::Hitchin) d.min_nest_margin = 0;

  // z-interval index of each sample in the unprimed frame of the circle model
  const auto& fr = m1.circle().frame(0);
  const int nz = static_cast<int>(fr.z_angle.size());
  std::vector<int> zi(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = m1.circle().oriented_angle(m1.circle().null_vector(c.samples[i].x));
    for (int j = 0; j < nz; ++j) {
      const hyperbolic::Interval iv{fr.z_angle[j], fr.z_angle[(j + 1) % nz]};
      if (iv.contains(th)) {
        zi[i] = j;
        break;
      }
    }
  }
  auto allowed = [&](int j, int k) {
    const int dj = std::min((j - k + nz) % nz, (k - j + nz) % nz);
    return dj <= 1 || (dj == 2 && j % 2 == 0 && k % 2 == 0);
  };

  const double min_sep = 1.5 * kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double sep = std::abs(c.samples[i].x.angle - c.samples[j].x.angle);
      sep = std::min(sep, kTwoPi - sep);
      const double tr = std::abs(projlin::dot(c.samples[j].line, c.samples[i].point));
      if (tr < kNearIncident && sep > 0) {
        ++d.near_incident_pairs;
        if (!allowed(zi[i], zi[j])) ++d.pattern_violations;
      }
      if (sep <= min_sep) continue;
      d.min_transversality = std::min(d.min_transversality, tr);
      if (i < j)
        d.min_pair_separation =
            std::min(d.min_pair_separation, projlin::proj_distance(c.samples[i].point, c.samples[j].point));
    }

  // refined trace and the topology of the closed curve
  {
    std::vector<std::vector<TracePoint>> extra(n);
    parallel_for(n, opt.threads, [&](std::size_t i) {
      const auto& a = c.samples[i];
      const auto& b = c.samples[(i + 1) % n];
      const double end = i + 1 < n ? b.x.angle : kTwoPi;
      refine(m1, opt.depth, opt.max_step, opt.max_refine, {a.x.angle, a.point}, {end, b.point}, extra[i]);
    });
    for (std::size_t i = 0; i < n; ++i) {
      c.trace.push_back({c.samples[i].x.angle, c.samples[i].point});
      c.trace.insert(c.trace.end(), extra[i].begin(), extra[i].end());
    }
    for (std::size_t i = 0; i < c.trace.size(); ++i)
      d.max_trace_step = std::max(
          d.max_trace_step,
          projlin::proj_distance(c.trace[i].point, c.trace[(i + 1) % c.trace.size()].point));
  }
  const auto lift = continuous_lift(c.trace);
  d.null_homotopic = projlin::dot(lift.back(), lift.front()) >= 0;
  if (opt.chart) {
    c.chart = projlin::normalized(*opt.chart);
  } else if (const auto l = m1.chart_line()) {
    c.chart = *l;
  } else {
    // sum of the sampled lines, each signed to be positive on most of the curve;
    // for a convex curve this line misses it
    Vec3 sum{0, 0, 0};
    for (const auto& s : c.samples) {
      double side = 0;
      for (const auto& v : lift) side += projlin::dot(s.line, v);
      sum = sum + (side >= 0 ? s.line : projlin::operator*(-1.0, s.line));
    }
    c.chart = projlin::norm(sum) > 0 ? projlin::normalized(sum) : Vec3{0, 0, 1};
  }
  {
    std::vector<Vec3> loop = lift;
    loop.push_back(d.null_homotopic ? lift.front() : projlin::operator*(-1.0, lift.front()));
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < loop.size(); ++i)
      if ((projlin::dot(c.chart, loop[i]) < 0) != (projlin::dot(c.chart, loop[i + 1]) < 0)) ++crossings;
    d.chart_crossings = crossings;
  }
  if (d.null_homotopic) {
    const std::size_t nt = c.trace.size();
    for (std::size_t y = 0; y < n && !d.affine_chart; ++y) {
      int pos = 0, neg = 0;
      const double ay = c.samples[y].x.angle;
      for (std::size_t i = 0; i < nt; ++i) {
        double sep = std::abs(c.trace[i].angle - ay);
        sep = std::min(sep, kTwoPi - sep);
        if (sep <= min_sep) continue;
        (projlin::dot(c.samples[y].line, lift[i]) > 0 ? pos : neg)++;
      }
      d.affine_chart = pos == 0 || neg == 0;
    }
  }

  // exceptional pairs: fixed points of abc, bca, cab
  d.coxeter_transversality = std::numeric_limits<double>::infinity();
  for (const char* w : {"abc", "bca", "cab"}) {
    const auto fp = hyperbolic::boundary_fixed_points(m1.circle(), group::GroupWord::parse(w), tol);
    const Vec3 p = m1.eval(fp.attracting, opt.depth).point;
    const Vec3 l = projlin::normalized(m2.eval(fp.repelling, opt.depth).point);
    d.coxeter_transversality = std::min(d.coxeter_transversality, std::abs(projlin::dot(l, p)));
  }

  d.svgap_slope = std::numeric_limits<double>::quiet_NaN();
  if (opt.svgap_len > 0) d.svgap_slope = svgap_check(rep, opt.svgap_len).slope;
  return c;
}

SvGap svgap_check(const CoxeterRep& rep, int max_len) {
  if (max_len < 0) throw Error(ErrorCode::InvalidConfig, "max_len must be non-negative");
  const auto words = group::enumerate_elements(rep.sig(), max_len);
  SvGap out;
  out.elements = words.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g12(max_len + 1, inf), g23(max_len + 1, inf);
  for (const auto& w : words) {
    // |det| = 1, so sigma3 = 1 / sigma1 of the inverse; the small singular
    // values of a long product are lost to rounding otherwise
    const double s1 = projlin::singular_values(group::evaluate_uncached(w.word, rep.s))[0];
    const double s3 = 1 / projlin::singular_values(group::evaluate_uncached(w.word.inverse(), rep.s))[0];
    const double s2 = 1 / (s1 * s3);
    g12[w.length] = std::min(g12[w.length], std::log(s1 / s2));
    g23[w.length] = std::min(g23[w.length], std::log(s2 / s3));
  }
  for (int L = 0; L <= max_len; ++L) {
    if (g12[L] == inf) continue;
    out.length.push_back(L);
    out.min_gap12.push_back(g12[L]);
    out.min_gap23.push_back(g23[L]);
  }
  std::vector<int> xs;
  std::vector<double> y12, y23;
  for (std::size_t k = 0; k < out.length.size(); ++k) {
    if (out.length[k] < 1) continue;
    xs.push_back(out.length[k]);
    y12.push_back(out.min_gap12[k]);
    y23.push_back(out.min_gap23[k]);
  }
  out.slope12 = fit_slope(xs, y12);
  out.slope23 = fit_slope(xs, y23);
  out.slope = std::min(out.slope12, out.slope23);
  return out;
}

std::string curve_csv(const Curve& c) {
  std::string out = "angle,px,py,pz,lx,ly,lz,diam1,diam2\n";
  char buf[512];
  for (const auto& s : c.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.x.angle, s.point[0], s.point[1], s.point[2], s.line[0], s.line[1], s.line[2],
                  s.diam1, s.diam2);
    out += buf;
  }
  return out;
}

}  // namespace anosov::limitcurve
