#include "anosov/boxes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "anosov/error.hpp"

namespace anosov::boxes {

using projlin::dot;
using projlin::normalized;
using projlin::proj_distance;
using projlin::row_times;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_set(int i, int n, std::initializer_list<int> s) {
  for (int k : s)
    if (((k % n) + n) % n == i) return true;
  return false;
}

GroupWord shifted(const char* w, int frame, const cartan::TriangleSignature& sig) {
  return group::reduce(group::cyclic_shift(GroupWord::parse(w), frame), sig);
}

Mat3 eval(const GroupWord& w, const CoxeterRep& rep) { return group::evaluate(w, rep); }

FrameConfig build_frame(const CoxeterRep& rep, int f, const Tolerances& tol) {
  FrameConfig fc;
  fc.frame = f;
  fc.order = rep.cartan.sig.p((f + 2) % 3);
  fc.g = {rep.s[f], rep.s[(f + 1) % 3], rep.s[(f + 2) % 3]};
  const Mat3& a = fc.g[0];
  const Mat3& b = fc.g[1];
  const Mat3 cox = a * b * fc.g[2];

  const auto e = projlin::eig3(cox, tol);
  const auto et = projlin::eig3(cox.transpose(), tol);
  if (e.spectrum == projlin::Spectrum::ComplexPair || !e.vectors[0] || !et.vectors[2])
    throw Error(ErrorCode::ComplexCoxeter, "Coxeter element has no real attracting flag");

  const int n = 2 * fc.order;
  fc.w.assign(n, Vec3{});
  fc.ell.assign(n, Vec3{});
  fc.w[0] = normalized(*e.vectors[0]);
  fc.ell[0] = normalized(*et.vectors[2]);
  const Mat3 ba = b * a, ab = a * b;
  for (int j = 1; j < fc.order; ++j) {
    fc.w[2 * j] = normalized(ba * fc.w[2 * j - 2]);
    fc.ell[2 * j] = normalized(row_times(fc.ell[2 * j - 2], ab));
  }
  for (int i = 1; i < n; i += 2) {
    const int k = ((3 - i) % n + n) % n;
    fc.w[i] = normalized(a * fc.w[k]);
    fc.ell[i] = normalized(row_times(fc.ell[k], a));
  }

  try {
    fc.conic = projlin::conic_through(std::span<const Vec3>(fc.w.data(), 5), tol);
  } catch (const Error& err) {
    throw Error(ErrorCode::ConicDegenerate, std::string("orbit conic: ") + err.what());
  }
  fc.conic_residual = projlin::conic_residual(fc.conic, fc.w);
  if (fc.conic_residual > 1e3 * tol.conic)
    throw Error(ErrorCode::ConicDegenerate, "orbit points do not lie on one conic");

  fc.u.assign(n, Vec3{});
  for (int i = 0; i < n; ++i) {
    fc.u[i] = projlin::second_intersection(fc.conic, fc.w[i], ProjLine(fc.ell[i]), tol);
    if (proj_distance(fc.u[i], fc.w[i]) < tol.conic)
      throw Error(ErrorCode::ConicDegenerate, "line l_" + std::to_string(i) + " is tangent to the conic");
  }
  return fc;
}

double line_point(const Vec3& l, const Vec3& x) { return std::abs(dot(normalized(l), normalized(x))); }

}  // namespace

int FrameConfig::wrap(int i) const {
  const int n = 2 * order;
  return ((i % n) + n) % n;
}

double BoxConfig::max_residual() const {
  return std::max({orbit_residual, incidence_residual, conic_residual});
}

BoxConfig build_config(const CoxeterRep& rep, const Tolerances& tol) {
  if (!rep.cartan.sig.all_odd())
    throw Error(ErrorCode::EvenSignature, "boxes need odd orders: " + rep.cartan.sig.str());
  BoxConfig cfg;
  cfg.rep = rep;
  for (int f = 0; f < 3; ++f) cfg.frames[f] = build_frame(rep, f, tol);
  for (const auto& fc : cfg.frames) {
    const int n = 2 * fc.order;
    for (int i = 0; i < n; ++i) {
      cfg.orbit_residual = std::max({cfg.orbit_residual, proj_distance(fc.g[0] * fc.W(i), fc.W(3 - i)),
                                     proj_distance(fc.g[1] * fc.W(i), fc.W(5 - i)),
                                     proj_distance(row_times(fc.L(i), fc.g[0]), fc.L(3 - i)),
                                     proj_distance(row_times(fc.L(i), fc.g[1]), fc.L(5 - i))});
      cfg.incidence_residual = std::max(
          {cfg.incidence_residual, line_point(fc.L(i), fc.W(i)), line_point(fc.L(i), fc.U(i))});
      cfg.conic_residual = std::max(
          {cfg.conic_residual, std::abs(fc.conic.eval(fc.W(i))), std::abs(fc.conic.eval(fc.U(i)))});
    }
  }
  return cfg;
}

bool OrderingReport::ok() const {
  return matches && w1_in_next_strip && u0_in_next_strip && u0pp_in_strip && cu0_in_strip &&
         bad_crossings.empty() && min_w_separation > 1e-6;
}

std::string OrderingReport::describe() const {
  std::ostringstream os;
  os << "frame " << frame << ":";
  for (const auto& t : order) os << ' ' << t;
  os << "\n  matches=" << matches << " reversed=" << reversed << " swapped=" << swapped
     << " w1_in_M'=" << w1_in_next_strip << " u0_in_M'=" << u0_in_next_strip
     << " u0''_in_M=" << u0pp_in_strip << " cu0_in_M=" << cu0_in_strip
     << " bad_crossings=" << bad_crossings.size() << " min_w_sep=" << min_w_separation;
  return os.str();
}

OrderingReport ordering_check(const BoxConfig& cfg, int frame, const Tolerances& tol) {
  const FrameConfig& fc = cfg[frame];
  const FrameConfig& fp = cfg[(frame + 1) % 3];
  const FrameConfig& fpp = cfg[(frame + 2) % 3];
  const int n = 2 * fc.order;
  OrderingReport r;
  r.frame = frame;

  // token k < n is w_k, token n + k is u_k
  std::vector<std::pair<double, int>> pts;
  for (int i = 0; i < n; ++i) pts.push_back({fc.conic.angle(fc.W(i)), i});
  for (int i = 0; i < n; ++i) pts.push_back({fc.conic.angle(fc.U(i)), n + i});
  std::sort(pts.begin(), pts.end());
  const auto start = std::find_if(pts.begin(), pts.end(), [](const auto& p) { return p.second == 0; });
  std::rotate(pts.begin(), start, pts.end());
  std::vector<int> seq;
  std::vector<int> pos(2 * n);
  for (size_t k = 0; k < pts.size(); ++k) {
    seq.push_back(pts[k].second);
    pos[pts[k].second] = static_cast<int>(k);
    const int tok = pts[k].second;
    r.order.push_back((tok < n ? "w" : "u") + std::to_string(tok % n));
  }

  auto expected = [&](int j) {
    const int idx = j % n;
    return ((j + 1) / 2) % 2 == 0 ? idx : n + idx;
  };
  auto partner = [&](int idx) { return idx % 2 == 1 ? (idx + 1) % n : (idx - 1 + n) % n; };
  auto try_match = [&](const std::vector<int>& s, bool& swapped) {
    swapped = false;
    for (int j = 0; j < 2 * n; ++j) {
      const int e = expected(j);
      if (s[j] == e) continue;
      if (e >= n && s[j] == n + partner(e - n)) {
        swapped = true;
        continue;
      }
      return false;
    }
    return true;
  };
  std::vector<int> rev{seq[0]};
  for (int k = 2 * n - 1; k > 0; --k) rev.push_back(seq[k]);
  bool sw = false;
  if (try_match(seq, sw)) {
    r.matches = true;
    r.swapped = sw;
  } else if (try_match(rev, sw)) {
    r.matches = r.reversed = true;
    r.swapped = sw;
  }

  using projlin::Side;
  r.w1_in_next_strip = projlin::mobius_side(fp.conic, fc.W(1), tol) == Side::MobiusStrip;
  r.u0_in_next_strip = projlin::mobius_side(fp.conic, fc.U(0), tol) == Side::MobiusStrip;
  r.u0pp_in_strip = projlin::mobius_side(fc.conic, fpp.U(0), tol) == Side::MobiusStrip;
  r.cu0_in_strip = projlin::mobius_side(fc.conic, fc.g[2] * fc.U(0), tol) == Side::MobiusStrip;

  // chords of the conic meet outside the disk exactly when their ends do not interleave
  auto between = [&](int a, int b, int x) {
    const int m = 2 * n;
    return ((x - a + m) % m) < ((b - a + m) % m) && x != a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool paired = (j == i + 1 && i % 2 == 1) || (i == 0 && j == n - 1);
      if (paired) continue;
      const int wi = pos[i], ui = pos[n + i], wj = pos[j], uj = pos[n + j];
      const bool interleave = between(wi, ui, wj) != between(wi, ui, uj);
      if (!interleave) r.bad_crossings.push_back({i, j});
    }

  r.min_w_separation = kInf;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs(fc.conic.angle(fc.W(i)) - fc.conic.angle(fc.W(j)));
      d = std::min(d, 2 * std::numbers::pi - d);
      r.min_w_separation = std::min(r.min_w_separation, d);
    }
  return r;
}

BoxHexagon build_box(const BoxConfig& cfg, int frame, const Tolerances& tol) {
  const auto ord = ordering_check(cfg, frame, tol);
  if (!ord.ok()) throw Error(ErrorCode::OrderViolation, ord.describe());
  const FrameConfig& fc = cfg[frame];
  const Mat3& a = fc.g[0];
  const Mat3 bc = fc.g[1] * fc.g[2];
  const std::array<Vec3, 6> v{fc.W(0), fc.W(3), fc.W(5), fc.W(-2), normalized(bc * fc.U(0)),
                              normalized(a * bc * fc.U(0))};
  try {
    BoxHexagon box{frame, v, ChartHull(ProjLine(fc.L(2)), v, tol), 0, false};
    for (const auto& x : v) {
      double best = kInf;
      for (const auto& y : v) best = std::min(best, proj_distance(a * x, y));
      box.a_residual = std::max(box.a_residual, best);
    }
    box.chart_change_ok = box.hull.avoids(ProjLine(fc.L(1)), tol.inc);
    return box;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::PointOnChartLine)
      throw Error(ErrorCode::ChartCrossing, "box vertex on the chart line l_2");
    throw;
  }
}

std::vector<BoxHexagon> build_boxes(const BoxConfig& cfg, const Tolerances& tol) {
  std::vector<BoxHexagon> out;
  for (int f = 0; f < 3; ++f) out.push_back(build_box(cfg, f, tol));
  return out;
}

double moved_margin(const BoxHexagon& dst, const Mat3& g, const BoxHexagon& src) {
  double m = kInf;
  for (const auto& v : src.vertices) {
    try {
      m = std::min(m, dst.hull.margin(g * v));
    } catch (const Error&) {
      m = std::min(m, -1.0);
    }
  }
  const double lm = src.hull.line_margin(ProjLine(row_times(dst.chart().l, g)));
  if (lm <= 0) m = std::min(m, lm);
  return m;
}

bool InclusionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

double InclusionReport::min_margin(const std::string& prefix) const {
  double m = kInf;
  for (const auto& e : entries)
    if (e.lemma.rfind(prefix, 0) == 0) m = std::min(m, e.margin);
  return m;
}

std::size_t InclusionReport::count(const std::string& prefix) const {
  return std::count_if(entries.begin(), entries.end(),
                       [&](const auto& e) { return e.lemma.rfind(prefix, 0) == 0; });
}

std::string InclusionReport::table() const {
  std::ostringstream os;
  os << "lemma\tword\trelation\tmargin\tpass\n";
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.margin);
    os << e.lemma << '\t' << e.word << '\t' << e.relation << '\t' << buf << '\t'
       << (e.pass ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

namespace {

struct Checker {
  const BoxConfig& cfg;
  const std::vector<BoxHexagon>& boxes;
  const VerifyOptions& opt;
  const Tolerances& tol;
  InclusionReport& rep;

  void closure(const std::string& lemma, const std::string& word, const std::string& rel, double m) {
    rep.entries.push_back({lemma, word, rel, m, m >= -tol.inc});
  }
  void strict(const std::string& lemma, const std::string& word, const std::string& rel, double m) {
    rep.entries.push_back({lemma, word, rel, m, m > 0});
  }

  void orbit_points(int f) {
    const FrameConfig& fc = cfg[f];
    const BoxHexagon& box = boxes[f];
    const int n = 2 * fc.order;
    const std::string lemma = "orbit-points@" + std::to_string(f);
    for (int i = 0; i < n; ++i) {
      if (!in_set(i, n, {1, 2})) {
        const double m = box.hull.margin(fc.W(i));
        if (in_set(i, n, {-2, 0, 3, 5}))
          closure(lemma, "w" + std::to_string(i), "in", m);
        else
          strict(lemma, "w" + std::to_string(i), "interior", m);
      }
      if (!in_set(i, n, {-1, 0, 1, 2, 3, 4}))
        strict(lemma, "u" + std::to_string(i), "interior", box.hull.margin(fc.U(i)));
    }
  }

  void quad_hull(int f) {
    const FrameConfig& fc = cfg[f];
    const BoxHexagon& next = boxes[hyperbolic_next(f)];
    const int n = 2 * fc.order;
    const std::string lemma = "quad-hull@" + std::to_string(f);
    const std::array<Vec3, 4> quad{fc.W(0), fc.W(2), fc.U(0), fc.U(2)};
    for (int i = 0; i < n; ++i) {
      if (in_set(i, n, {-1, 0, 1, 2})) continue;
      double m = kInf;
      try {
        const ChartHull h(ProjLine(fc.L(i)), quad, tol);
        for (const auto& v : next.vertices) m = std::min(m, h.margin(v));
      } catch (const Error&) {
        m = -1;
      }
      m = std::min(m, next.hull.line_margin(ProjLine(fc.L(i))));
      closure(lemma, "l" + std::to_string(i), "contains-next-box", m);
    }
  }

  static int hyperbolic_next(int f) { return (f + 2) % 3; }

  void box_steps(int f) {
    const auto& sig = cfg.rep.cartan.sig;
    const FrameConfig& fc = cfg[f];
    const int nf = hyperbolic_next(f), pf = (f + 1) % 3;
    const int p2 = sig.p((f + 1) % 3), p3 = sig.p((f + 2) % 3);
    const BoxHexagon& box = boxes[f];
    const auto q = group::frame_alphabet(sig, f);
    const Vec3& l0 = fc.L(0);
    const GroupWord ab = shifted("ab", f, sig), b = shifted("b", f, sig), ca = shifted("ca", f, sig);
    const std::string sf = std::to_string(f);

    if (p2 > 3 || p3 > 3) {
      const BoxHexagon& src = boxes[nf];
      for (const auto& g : q) {
        const Mat3 G = eval(g, cfg.rep);
        closure("box-step@" + sf, g.str(), "in", moved_margin(box, G, src));
        std::vector<int> sv{3, 4};
        if (p3 > 3) sv.push_back(2);
        if (p3 > 3 && g != b && g != ab) sv.push_back(1);
        for (int k : sv)
          strict("box-step@" + sf, g.str() + "*v" + std::to_string(k), "interior",
                 box.hull.margin(G * src.vertices[k]));
        if (g != ab)
          strict("line-avoid@" + sf, g.str(), "avoids-l0",
                 src.hull.line_margin(ProjLine(row_times(l0, G))));
      }
    } else {
      const BoxHexagon& src = boxes[pf];
      const auto q2 = group::frame_alphabet(sig, nf);
      for (const auto& g : q)
        for (const auto& g2 : q2) {
          const GroupWord w = group::reduce(g * g2, sig);
          const std::string name = g.str() + "." + g2.str();
          const Mat3 G = eval(w, cfg.rep);
          closure("box-two-step@" + sf, name, "in", moved_margin(box, G, src));
          for (int k : {2, 3}) {
            const Vec3 x = G * src.vertices[k];
            double m = box.hull.margin(x);
            const bool at_vertex = proj_distance(x, fc.W(-2)) < tol.pt || proj_distance(x, fc.W(5)) < tol.pt;
            rep.entries.push_back({"box-two-step@" + sf, name + "*v" + std::to_string(k),
                                   "interior-or-vertex", m, m > 0 || at_vertex});
          }
          if (!(g == ab && g2 == ca))
            strict("line-avoid@" + sf, name, "avoids-l0",
                   src.hull.line_margin(ProjLine(row_times(l0, G))));
        }
    }
  }

  void triples(int f) {
    const auto& sig = cfg.rep.cartan.sig;
    if (sig.p(f) <= 3) return;
    const FrameConfig& fc = cfg[f];
    const BoxHexagon& box = boxes[f];
    const std::string sf = std::to_string(f);
    const int nf = hyperbolic_next(f), pf = (f + 1) % 3;
    const auto q0 = group::frame_alphabet(sig, f);
    const auto q1 = group::frame_alphabet(sig, nf);
    const auto q2 = group::frame_alphabet(sig, pf);
    std::vector<GroupWord> t;
    for (const auto& x : q0)
      for (const auto& y : q1)
        for (const auto& z : q2) t.push_back(group::reduce(x * y * z, sig));
    const GroupWord tb = group::reduce(group::tbar(f), sig);
    const size_t nt = t.size();
    std::vector<Mat3> tm(nt);
    for (size_t i = 0; i < nt; ++i) tm[i] = group::evaluate_uncached(t[i], cfg.rep.s);

    // single words: avoidance of l0 and the exceptional touching word
    for (size_t i = 0; i < nt; ++i) {
      if (t[i] == tb) {
        double m = kInf;
        bool along = true;
        for (const auto& v : box.vertices) {
          const Vec3 x = tm[i] * v;
          const double mv = box.hull.margin(x);
          m = std::min(m, mv);
          if (mv <= tol.inc && line_point(fc.L(0), x) > 1e3 * tol.inc) along = false;
        }
        rep.entries.push_back({"tbar-touch@" + sf, t[i].str(), "touches-only-along-l0", m,
                               m >= -tol.inc && along});
        continue;
      }
      strict("line-avoid-T@" + sf, t[i].str(), "avoids-l0",
             box.hull.line_margin(ProjLine(row_times(fc.L(0), tm[i]))));
    }

    const std::uint64_t total = static_cast<std::uint64_t>(nt) * nt * nt;
    rep.triples_total += total;
    const bool exhaustive = total <= opt.max_triples;

    // candidate (h1, h2) pairs
    std::vector<std::pair<int, int>> pairs;
    if (exhaustive) {
      for (size_t i = 0; i < nt; ++i)
        for (size_t j = 0; j < nt; ++j) pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
    } else {
      std::vector<std::pair<double, int>> single;
      for (size_t i = 0; i < nt; ++i) single.push_back({moved_margin(box, tm[i], box), static_cast<int>(i)});
      std::sort(single.begin(), single.end());
      std::set<std::pair<int, int>> chosen;
      const size_t k = std::min<size_t>(8, nt);
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) chosen.insert({single[i].second, single[j].second});
      std::mt19937_64 rng(opt.seed);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(nt) - 1);
      const std::uint64_t want = std::max<std::uint64_t>(1, opt.sample / nt);
      while (chosen.size() < std::min<std::uint64_t>(want, static_cast<std::uint64_t>(nt) * nt))
        chosen.insert({pick(rng), pick(rng)});
      pairs.assign(chosen.begin(), chosen.end());
    }
    std::vector<Mat3> pm(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) pm[k] = tm[pairs[k].first] * tm[pairs[k].second];

    std::vector<double> worst(nt, kInf);
    std::vector<int> worst_pair(nt, -1);
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t h3; (h3 = next.fetch_add(1)) < nt;) {
        for (size_t k = 0; k < pm.size(); ++k) {
          const double m = moved_margin(box, pm[k] * tm[h3], box);
          if (m < worst[h3]) {
            worst[h3] = m;
            worst_pair[h3] = static_cast<int>(k);
          }
        }
      }
    };
    unsigned nth = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nth = std::min<unsigned>(nth, static_cast<unsigned>(nt));
    if (nth <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < nth; ++i) pool.emplace_back(work);
    }
    rep.triples_checked += static_cast<std::uint64_t>(pm.size()) * nt;

    for (size_t h3 = 0; h3 < nt; ++h3) {
      const auto& pr = pairs[worst_pair[h3]];
      const std::string name = t[pr.first].str() + "." + t[pr.second].str() + "." + t[h3].str();
      if (t[h3] == tb)
        closure("triple-exceptional@" + sf, name, "in", worst[h3]);
      else
        strict("triple-interior@" + sf, name, "interior", worst[h3]);
    }
  }
};

}  // namespace

InclusionReport verify_inclusions(const BoxConfig& cfg, const std::vector<BoxHexagon>& boxes,
                                  const VerifyOptions& opt, const Tolerances& tol) {
  if (boxes.size() != 3) throw Error(ErrorCode::InvalidConfig, "need the boxes of all three frames");
  InclusionReport rep;
  Checker ck{cfg, boxes, opt, tol, rep};
  for (int f = 0; f < 3; ++f) {
    ck.orbit_points(f);
    ck.quad_hull(f);
    ck.box_steps(f);
    ck.triples(f);
  }
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const auto& x, const auto& y) {
    return std::tie(x.lemma, x.word) < std::tie(y.lemma, y.word);
  });
  return rep;
}

ShrinkReport intersection_shrink(const BoxConfig& cfg, const BoxHexagon& box, int max_iter,
                                 const Tolerances& tol) {
  const FrameConfig& fc = cfg[box.frame];
  const Mat3 cox = fc.g[0] * fc.g[1] * fc.g[2];
  const Mat3 tb = cox * cox;
  const auto e = projlin::eig3(cox, tol);
  ShrinkReport r;
  r.expected_ratio = std::pow(std::abs(e.values[1]) / std::abs(e.values[0]), 2);

  std::array<Vec3, 6> v = box.vertices;
  Vec3 bary = box.hull.barycenter();
  r.diameters.push_back(box.hull.diameter());
  for (int i = 0; i < max_iter && r.diameters.back() >= 1e-10; ++i) {
    for (auto& x : v) x = normalized(tb * x);
    const ChartHull h(box.chart(), v, tol);
    r.diameters.push_back(h.diameter());
    bary = h.barycenter();
    const size_t k = r.diameters.size();
    r.ratios.push_back(r.diameters[k - 1] / r.diameters[k - 2]);
  }
  r.limit = bary;
  r.limit_error = proj_distance(bary, fc.W(0));
  if (r.diameters.back() >= 1e-10 || (!r.ratios.empty() && r.ratios.back() >= 1 - 1e-9))
    throw Error(ErrorCode::NoContraction,
                "box diameters do not shrink geometrically (last " + std::to_string(r.diameters.back()) + ")");
  return r;
}

}  // namespace anosov::boxes
