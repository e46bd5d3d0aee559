#pragma once

#include <array>
#include <vector>

#include "anosov/cartan.hpp"
#include "anosov/group.hpp"
#include "anosov/projlin.hpp"

namespace anosov::hyperbolic {

using cartan::CoxeterRep;
using cartan::TriangleSignature;
using group::GroupWord;
using projlin::Mat3;
using projlin::Vec3;

struct CirclePoint {
  double angle = 0;  // [0, 2 pi) in the fixed J-diagonalizing frame
};

// Counter-clockwise closed arc from start to end, in the orientation for which
// the points z_i increase.
struct Interval {
  double start = 0, end = 0;

  double length() const;
  // eps widens the arc at both ends.
  bool contains(double angle, double eps = 0) const;
  // Distance from angle to the arc (0 inside).
  double distance(double angle) const;
};

double wrap_angle(double a);  // into [0, 2 pi)

// Data attached to one of the three cyclic frames (unprimed, primed,
// double-primed).
struct FrameTables {
  int frame = 0;
  int order = 0;                  // order of x y for the frame generators (x, y, z)
  std::vector<Vec3> z;            // z_0 .. z_{2m-1} as null vectors
  std::vector<double> z_angle;    // oriented angles
  Interval I, J, K;
  std::vector<GroupWord> q;       // frame alphabet
  std::vector<Mat3> q_inverse;    // rho(gamma)^{-1}
  std::vector<Interval> sub;      // gamma I_next for gamma in q
};

// Frame used after frame f in a code: unprimed -> double-primed -> primed.
constexpr int next_frame(int f) { return (f + 2) % 3; }

class FuchsianRep {
 public:
  const CoxeterRep& rep() const { return rep_; }
  TriangleSignature sig() const { return rep_.cartan.sig; }
  const projlin::Conic& form() const { return j_; }
  const Mat3& J() const { return j_.q; }
  const Vec3& basepoint() const { return o_; }
  int orientation() const { return orientation_; }
  bool has_tables() const { return has_tables_; }
  const FrameTables& frame(int f) const { return frames_[f]; }

  // Public angle of a null vector (J frame) and its inverse.
  CirclePoint to_circle(const Vec3& null_vec) const;
  Vec3 null_vector(const CirclePoint& p) const;
  // Angle in the orientation used by the interval tables.
  double oriented_angle(const Vec3& null_vec) const;

  double distance(const Vec3& x, const Vec3& y) const;  // hyperbolic distance of timelike points

  friend FuchsianRep fuchsian(const TriangleSignature& sig, const Tolerances& tol);
  friend FuchsianRep relabel(const FuchsianRep& f, const std::array<int, 3>& perm);

 private:
  void build_tables();

  CoxeterRep rep_;
  projlin::Conic j_;
  Vec3 o_{0, 0, 1};
  int orientation_ = 1;
  bool has_tables_ = false;
  std::array<FrameTables, 3> frames_;
};

FuchsianRep fuchsian(const TriangleSignature& sig, const Tolerances& tol = {});
// Same matrices and form with relabeled generators (new s_i = old s_{perm[i]}).
FuchsianRep relabel(const FuchsianRep& f, const std::array<int, 3>& perm);

struct FixedPoints {
  CirclePoint attracting, repelling;
  Vec3 attracting_vec, repelling_vec;
};

FixedPoints boundary_fixed_points(const FuchsianRep& f, const GroupWord& w,
                                  const Tolerances& tol = {});

// z_0 .. z_{2 p3 - 1} of the unprimed frame.
std::vector<CirclePoint> z_points(const FuchsianRep& f);

struct IntervalSet {
  std::array<Interval, 3> I, J, K;  // unprimed, primed, double-primed (oriented angles)
};
IntervalSet intervals(const FuchsianRep& f);

struct Code {
  int start_frame = 0;
  std::vector<int> frames;   // frame of each step
  std::vector<int> letters;  // index into the frame alphabet
  std::vector<GroupWord> gamma;
  double max_violation = 0;  // worst distance of g_n^{-1} x from I_frame

  GroupWord prefix(size_t n) const;  // g_n = gamma_1 ... gamma_n
  int frame_after(size_t n) const;   // frame of the interval containing g_n^{-1} x
};

Code code(const FuchsianRep& f, const Vec3& x, int depth);
Code code(const FuchsianRep& f, const CirclePoint& x, int depth);

}  // namespace anosov::hyperbolic
