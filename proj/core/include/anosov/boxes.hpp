#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/group.hpp"
#include "anosov/projlin.hpp"

namespace anosov::boxes {

using cartan::CoxeterRep;
using group::GroupWord;
using projlin::ChartHull;
using projlin::Conic;
using projlin::Mat3;
using projlin::ProjLine;
using projlin::Vec3;

// Orbit data of one frame. Frame f uses the generators a = s_f, b = s_{f+1},
// c = s_{f+2}; frame 1 is the primed and frame 2 the double-primed copy.
struct FrameConfig {
  int frame = 0;
  int order = 0;  // order of ab; indices run mod 2 * order
  std::array<Mat3, 3> g;
  std::vector<Vec3> w, u, ell;
  Conic conic;
  double conic_residual = 0;

  int wrap(int i) const;
  const Vec3& W(int i) const { return w[wrap(i)]; }
  const Vec3& U(int i) const { return u[wrap(i)]; }
  const Vec3& L(int i) const { return ell[wrap(i)]; }
};

struct BoxConfig {
  CoxeterRep rep;
  std::array<FrameConfig, 3> frames;
  double orbit_residual = 0;      // a w_i = w_{3-i}, b w_i = w_{5-i} and the same for lines
  double incidence_residual = 0;  // w_i and u_i on l_i
  double conic_residual = 0;      // w_i and u_i on the frame conic

  const FrameConfig& operator[](int f) const { return frames[f]; }
  double max_residual() const;
};

// Needs real attracting data for the Coxeter element, i.e. t >= t_crit on the
// Barbot component.
BoxConfig build_config(const CoxeterRep& rep, const Tolerances& tol = {});

struct OrderingReport {
  int frame = 0;
  std::vector<std::string> order;  // the 4 * order points along C, starting at w0
  bool matches = false;
  bool reversed = false;  // the conic angle runs against the index order
  bool swapped = false;   // u_{2k-1} and u_{2k} exchanged
  bool w1_in_next_strip = false;  // w_1 in M'
  bool u0_in_next_strip = false;  // u_0 in M'
  bool u0pp_in_strip = false;     // u_0'' in M
  bool cu0_in_strip = false;      // c u_0 in M
  std::vector<std::pair<int, int>> bad_crossings;  // l_i, l_j crossing in M, not a pair
  double min_w_separation = 0;  // angular, along C

  bool ok() const;
  std::string describe() const;
};

OrderingReport ordering_check(const BoxConfig& cfg, int frame = 0, const Tolerances& tol = {});

struct BoxHexagon {
  int frame = 0;
  std::array<Vec3, 6> vertices;  // w0, w3, w5, w_{-2}, bc u0, abc u0
  ChartHull hull;                // in the chart RP^2 minus l_2
  double a_residual = 0;         // a maps the vertex set to itself
  bool chart_change_ok = false;  // l_1 misses the box, so l_1 gives the same hull

  const ProjLine& chart() const { return hull.chart(); }
};

// Throws OrderViolation if the ordering check fails and ChartCrossing if a
// vertex lies on l_2.
BoxHexagon build_box(const BoxConfig& cfg, int frame = 0, const Tolerances& tol = {});
std::vector<BoxHexagon> build_boxes(const BoxConfig& cfg, const Tolerances& tol = {});

// Chart margin of g * src inside dst: minimum over the moved vertices, and
// negative if g * src meets the chart line of dst.
double moved_margin(const BoxHexagon& dst, const Mat3& g, const BoxHexagon& src);

struct InclusionEntry {
  std::string lemma;  // check family and frame, e.g. "box-step@0"
  std::string word;
  std::string relation;
  double margin = 0;
  bool pass = false;
};

struct InclusionReport {
  std::vector<InclusionEntry> entries;  // sorted by (lemma, word)
  std::uint64_t triples_checked = 0;
  std::uint64_t triples_total = 0;

  bool all_pass() const;
  // Smallest margin among entries whose lemma starts with the prefix.
  double min_margin(const std::string& prefix) const;
  std::size_t count(const std::string& prefix) const;
  std::string table() const;
};

struct VerifyOptions {
  std::uint64_t max_triples = 1'000'000;  // exhaustive up to this many
  std::uint64_t sample = 200'000;         // random triples above the cutoff
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

InclusionReport verify_inclusions(const BoxConfig& cfg, const std::vector<BoxHexagon>& boxes,
                                  const VerifyOptions& opt = {}, const Tolerances& tol = {});

struct ShrinkReport {
  std::vector<double> diameters;  // of tbar^i box, i = 0, 1, ...
  std::vector<double> ratios;
  double expected_ratio = 0;      // (lambda2 / lambda1)^2 of the frame Coxeter element
  Vec3 limit{};
  double limit_error = 0;         // distance from the limit to w0
};

// Iterates tbar = (abc)^2 of the frame until the diameter drops below 1e-10.
// Throws NoContraction if the diameters stop decreasing geometrically.
ShrinkReport intersection_shrink(const BoxConfig& cfg, const BoxHexagon& box, int max_iter = 200,
                                 const Tolerances& tol = {});

}  // namespace anosov::boxes
