#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "anosov/error.hpp"
#include "anosov/hyperbolic.hpp"

using namespace anosov;
using namespace anosov::hyperbolic;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

const std::vector<TriangleSignature> kOdd{{3, 3, 5}, {3, 5, 5}, {5, 5, 5}, {3, 3, 7}, {5, 3, 3}, {3, 5, 7}};

}  // namespace

TEST(Fuchsian, FormIsInvariantAndLorentzian) {
  for (const TriangleSignature sig : {TriangleSignature{2, 3, 7}, {3, 3, 5}, {4, 4, 4}, {5, 5, 5}}) {
    const auto f = fuchsian(sig);
    for (int i = 0; i < 3; ++i) {
      const Mat3 d = f.rep().s[i].transpose() * f.J() * f.rep().s[i] - f.J();
      EXPECT_LT(d.norm(), 1e-12 * f.J().norm()) << sig.str();
    }
    // basepoint is timelike: opposite sign to the spacelike directions
    const double oo = f.form().bilinear(f.basepoint(), f.basepoint());
    EXPECT_LT(oo, 0);
    EXPECT_NEAR(f.distance(f.basepoint(), f.basepoint()), 0, 1e-7);
  }
}

TEST(Fuchsian, CirclePointsAreNullAndRoundTrip) {
  const auto f = fuchsian({3, 3, 5});
  for (int k = 0; k < 100; ++k) {
    const CirclePoint p{wrap_angle(0.0628 * k + 0.01)};
    const Vec3 v = f.null_vector(p);
    EXPECT_LT(std::abs(f.form().eval(v)), 1e-12);
    EXPECT_NEAR(f.to_circle(v).angle, p.angle, 1e-12);
  }
}

TEST(Fuchsian, EvenOrdersHaveNoTables) {
  const auto f = fuchsian({2, 3, 7});
  EXPECT_FALSE(f.has_tables());
  EXPECT_THROW(code(f, CirclePoint{0.3}, 5), Error);
  EXPECT_THROW(z_points(f), Error);
}

TEST(Intervals, ZPointsAreOrbitOfCoxeterFixedPoint) {
  const auto f = fuchsian({3, 3, 5});
  const auto z = z_points(f);
  ASSERT_EQ(z.size(), 10u);
  const auto fp = boundary_fixed_points(f, GroupWord::parse("abc"));
  EXPECT_NEAR(z[0].angle, fp.attracting.angle, 1e-10);
  const auto& ft = f.frame(0);
  for (size_t i = 1; i < ft.z_angle.size(); ++i)
    EXPECT_GT(wrap_angle(ft.z_angle[i] - ft.z_angle[0]), wrap_angle(ft.z_angle[i - 1] - ft.z_angle[0]));
}

TEST(Intervals, FrameIntervalsCoverCircle) {
  for (const auto& sig : kOdd) {
    const auto f = fuchsian(sig);
    const auto s = intervals(f);
    for (int k = 0; k < 2000; ++k) {
      const double th = kTwoPi * (k + 0.5) / 2000;
      EXPECT_TRUE(s.I[0].contains(th, 1e-12) || s.I[1].contains(th, 1e-12) || s.I[2].contains(th, 1e-12))
          << sig.str() << " " << th;
    }
  }
}

TEST(Intervals, SubArcsCoverTheirFrameInterval) {
  for (const auto& sig : kOdd) {
    const auto f = fuchsian(sig);
    for (int fr = 0; fr < 3; ++fr) {
      const auto& ft = f.frame(fr);
      double covered_len = 0;
      for (const auto& s : ft.sub) {
        covered_len += s.length();
        EXPECT_TRUE(ft.I.contains(s.start, 1e-9) && ft.I.contains(s.end, 1e-9)) << sig.str();
      }
      EXPECT_GE(covered_len, ft.I.length() - 1e-9) << sig.str() << " frame " << fr;  // arcs may overlap
      for (int k = 0; k <= 500; ++k) {
        const double th = wrap_angle(ft.I.start + ft.I.length() * k / 500.0);
        bool hit = false;
        for (const auto& s : ft.sub) hit = hit || s.contains(th, 1e-12);
        EXPECT_TRUE(hit) << sig.str() << " frame " << fr << " angle " << th;
      }
    }
  }
}

TEST(Codes, PrefixesPullPointBackIntoFrameInterval) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, kTwoPi);
  for (const auto& sig : kOdd) {
    const auto f = fuchsian(sig);
    for (int k = 0; k < 40; ++k) {
      const CirclePoint x{u(rng)};
      const auto c = code(f, x, 12);
      EXPECT_EQ(c.max_violation, 0);
      // direct pull-back expands rounding exponentially, so only the first steps
      for (size_t n = 0; n <= 6; ++n) {
        const Mat3 g = group::evaluate_uncached(c.prefix(n), f.rep().s);
        const Vec3 y = g.inverse() * f.null_vector(x);
        const double th = f.oriented_angle(y);
        EXPECT_LT(f.frame(c.frame_after(n)).I.distance(th), 1e-7) << sig.str() << " n=" << n;
      }
    }
  }
}

TEST(Codes, StayAdmissibleAtLargeDepth) {
  const auto f = fuchsian({3, 3, 5});
  for (int k = 0; k < 200; ++k) {
    const auto c = code(f, CirclePoint{kTwoPi * k / 200}, 200);
    EXPECT_EQ(c.max_violation, 0) << k;
    ASSERT_EQ(c.letters.size(), 200u);
    for (size_t n = 0; n < c.frames.size(); ++n) EXPECT_EQ(c.frames[n], c.frame_after(n));
  }
}

TEST(Codes, FixedPointOfCoxeterHasPeriodicCode) {
  const auto f = fuchsian({3, 3, 5});
  const auto z0 = f.frame(0).z[0];
  const auto c = code(f, z0, 30);
  // neighbouring points share long prefixes
  const auto c2 = code(f, f.null_vector({f.to_circle(z0).angle + 1e-9}), 30);
  size_t common = 0;
  while (common < 30 && c.letters[common] == c2.letters[common]) ++common;
  EXPECT_GE(common, 5u);
}

TEST(FixedPoints, AttractingAndRepellingAreFixed) {
  const auto f = fuchsian({3, 5, 5});
  for (const char* w : {"abc", "bca", "cab", "abcb", "acbcb"}) {
    const auto fp = boundary_fixed_points(f, GroupWord::parse(w));
    const Mat3 g = group::evaluate_uncached(GroupWord::parse(w), f.rep().s);
    EXPECT_LT(projlin::proj_distance(g * fp.attracting_vec, fp.attracting_vec), 1e-10) << w;
    EXPECT_LT(projlin::proj_distance(g * fp.repelling_vec, fp.repelling_vec), 1e-10) << w;
    EXPECT_LT(std::abs(f.form().eval(fp.attracting_vec)), 1e-10) << w;
  }
  EXPECT_THROW(boundary_fixed_points(f, GroupWord::parse("ab")), Error);  // elliptic
}

TEST(Relabel, SharesFormAndRebuildsTables) {
  const auto f = fuchsian({3, 3, 5});
  const auto g = relabel(f, {0, 2, 1});
  EXPECT_EQ(g.sig(), (TriangleSignature{3, 5, 3}));
  EXPECT_EQ(g.J(), f.J());
  EXPECT_TRUE(g.has_tables());
  EXPECT_EQ(g.frame(0).order, 3);
}
