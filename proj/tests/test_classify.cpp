#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "anosov/classify.hpp"
#include "anosov/error.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace anosov;
using namespace anosov::classify;

namespace {

void expect_traces(const TraceData& d, const double* ref, double tol) {
  EXPECT_NEAR(d.t1, ref[0], tol);
  EXPECT_NEAR(d.t2, ref[1], tol);
  EXPECT_NEAR(d.t3, ref[2], tol);
  EXPECT_NEAR(d.x, ref[3], tol);
  EXPECT_NEAR(d.y, ref[4], tol);
}

CartanMatrix barbot(const TriangleSignature& sig, double t) {
  return cartan::normal_form(sig, cartan::barbot_type(sig), t);
}

projlin::Mat3 coxeter(const CartanMatrix& c) {
  const auto rep = cartan::build_representation(c);
  return rep.s[0] * rep.s[1] * rep.s[2];
}

}  // namespace

TEST(Traces, MatchReferenceValues) {
  expect_traces(traces(cartan::normal_form({3, 3, 5}, {1, 1, 1}, 1)), oracle::traces_hitchin_p335_t1, 1e-13);
  expect_traces(traces(cartan::normal_form({3, 3, 5}, {1, 1, 1}, 2)), oracle::traces_hitchin_p335_t2, 1e-13);
  expect_traces(traces(cartan::normal_form({3, 3, 5}, {1, 1, 2}, 3)), oracle::traces_barbot_p335_t3, 1e-13);
  expect_traces(traces(cartan::normal_form({5, 5, 5}, {2, 2, 2}, 0.7)), oracle::traces_barbot_p555_t07, 1e-13);
  expect_traces(traces(cartan::normal_form({4, 7, 7}, {1, 2, 3}, 1.5)), oracle::traces_type_p477_t15, 1e-13);
}

TEST(Traces, CartanFormulasAgreeWithMatrices) {
  std::mt19937_64 rng(10);
  for (const auto& sig : testsupport::signatures())
    for (int k = 0; k < 100; ++k) {
      const auto c = testsupport::random_cartan(rng, sig);
      const auto a = traces(c);
      const auto b = traces(cartan::build_representation(c));
      const double scale = 1 + std::abs(a.x) + std::abs(a.y);
      EXPECT_NEAR(a.t1, b.t1, 1e-9 * scale);
      EXPECT_NEAR(a.t2, b.t2, 1e-9 * scale);
      EXPECT_NEAR(a.t3, b.t3, 1e-9 * scale);
      EXPECT_NEAR(a.x, b.x, 1e-9 * scale);
      EXPECT_NEAR(a.y, b.y, 1e-9 * scale);
      EXPECT_NEAR(c.a.det(), a.x + a.y + 2, 1e-9 * scale) << sig.str();
    }
}

TEST(Landmarks, TRedAndTCritMatchReference) {
  const std::vector<std::tuple<TriangleSignature, double, double>> cases{
      {{3, 3, 5}, oracle::t_red_p335, oracle::t_crit_p335},
      {{3, 5, 5}, oracle::t_red_p355, oracle::t_crit_p355},
      {{5, 5, 5}, oracle::t_red_p555, oracle::t_crit_p555},
      {{3, 3, 7}, oracle::t_red_p337, oracle::t_crit_p337},
      {{5, 3, 3}, oracle::t_red_p533, oracle::t_crit_p533},
      {{7, 7, 7}, oracle::t_red_p777, oracle::t_crit_p777}};
  for (const auto& [sig, tr, tc] : cases) {
    EXPECT_NEAR(t_red(sig), tr, 1e-10 * tr) << sig.str();
    EXPECT_NEAR(t_crit(sig), tc, 1e-10 * tc) << sig.str();
    EXPECT_GT(t_crit(sig), 1);
    EXPECT_LT(t_crit(sig), t_red(sig));
  }
}

TEST(Landmarks, ReducibleParameter) {
  const TriangleSignature sig{3, 3, 5};
  const auto c = barbot(sig, t_red(sig));
  const auto d = traces(c);
  EXPECT_LT(std::abs(d.x + d.y + 2), 1e-9);
  EXPECT_LT(std::abs(c.a.det()), 1e-9);
  const auto e = projlin::eig3(coxeter(c));
  ASSERT_EQ(e.spectrum, projlin::Spectrum::RealDistinct);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.values[i].real(), oracle::cox_eig_red_p335[i], 1e-7);
  // (-lambda, -1, 1/lambda)
  EXPECT_NEAR(e.values[1].real(), -1, 1e-7);
  EXPECT_NEAR(e.values[0].real() * e.values[2].real(), -1, 1e-7);
  EXPECT_GT(discriminant(d.x, d.y), 0);
}

TEST(Landmarks, CriticalParameterIsDoubleNondiagonalizable) {
  for (const auto& sig : testsupport::odd_signatures()) {
    const double tc = t_crit(sig);
    const auto v = classify::classify(barbot(sig, tc));
    EXPECT_EQ(v.regime, Regime::DoubleNondiagonalizable) << sig.str();
    EXPECT_FALSE(v.anosov);
    EXPECT_EQ(classify::classify(barbot(sig, tc * (1 + 1e-6))).regime, Regime::RealDistinct);
    EXPECT_EQ(classify::classify(barbot(sig, tc * (1 - 1e-6))).regime, Regime::ComplexPair);
    // inversion symmetry of the Barbot traces
    EXPECT_NEAR(barbot_x(sig, 1 / tc), barbot_y(sig, tc), 1e-12);
  }
  const auto e = projlin::eig3(coxeter(barbot({3, 3, 5}, t_crit({3, 3, 5}))));
  EXPECT_EQ(e.spectrum, projlin::Spectrum::RepeatedReal);
  EXPECT_FALSE(e.diagonalizable);
}

TEST(Verdict, Components) {
  const auto h = classify::classify(cartan::normal_form({3, 3, 5}, cartan::hitchin_type(), 0.3));
  EXPECT_EQ(h.component, Component::Hitchin);
  EXPECT_TRUE(h.anosov);
  const auto hn = classify::classify(cartan::normal_form({3, 3, 5}, cartan::hitchin_type(), -0.3));
  EXPECT_EQ(hn.component, Component::Other);
  EXPECT_FALSE(hn.anosov);
  const auto b1 = classify::classify(barbot({3, 3, 5}, 1));
  EXPECT_EQ(b1.component, Component::Barbot);
  EXPECT_FALSE(b1.anosov);
  EXPECT_TRUE(classify::classify(barbot({3, 3, 5}, 6)).anosov);
  EXPECT_TRUE(classify::classify(barbot({3, 3, 5}, 0.1)).anosov);
  const auto o = classify::classify(cartan::normal_form({3, 5, 7}, {1, 2, 1}, 2));
  EXPECT_EQ(o.component, Component::Other);
  EXPECT_TRUE(std::isnan(classify::classify(cartan::normal_form({2, 3, 7}, {1, 1, 1}, 1)).t_red));
}

TEST(Verdict, RegimesAgreeAlongSweep) {
  for (const TriangleSignature sig : {TriangleSignature{3, 3, 5}, {3, 5, 5}, {5, 5, 5}}) {
    const double tc = t_crit(sig);
    const double tmax = 4 * t_red(sig);
    const auto rows = sweep(sig, cartan::barbot_type(sig), 0.5 / tc, tmax, 2000);
    int switches = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const double t = rows[i].t;
      if (std::abs(t - tc) > 1e-6 * tc && std::abs(t - 1 / tc) > 1e-6 / tc) {
        EXPECT_EQ(rows[i].anosov, t < 1 / tc || t > tc) << sig.str() << " t=" << t;
        const auto v = classify::classify(barbot(sig, t));
        EXPECT_EQ(v.regime, v.eig_regime) << sig.str() << " t=" << t;
      }
      if (i > 0 && rows[i].anosov != rows[i - 1].anosov) ++switches;
    }
    EXPECT_EQ(switches, 2) << sig.str();
  }
}

TEST(Verdict, TraceCriterionAgreesWithCartanVerdict) {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const auto& sigs = testsupport::odd_signatures();
    const auto sig = sigs[k % sigs.size()];
    const int pick = k % 3;
    const cartan::RepType type = pick == 0   ? cartan::hitchin_type()
                                 : pick == 1 ? cartan::barbot_type(sig)
                                             : testsupport::random_type(sig, rng);
    const auto c = cartan::normal_form(sig, type, testsupport::random_t(rng));
    const auto a = classify::classify(c);
    const auto b = classify_traces(sig, traces(cartan::build_representation(c)));
    EXPECT_EQ(a.anosov, b.anosov) << sig.str() << " type " << type.str() << " t=" << c.t;
    ++checked;
  }
  EXPECT_EQ(checked, 400);
  EXPECT_THROW(classify_traces({2, 3, 7}, TraceData{}), Error);
}

TEST(Goldman, RootsAndCurves) {
  const auto g = goldman_curves({3, 3, 5}, cartan::barbot_type({3, 3, 5}), -1.5, 3, 1000);
  EXPECT_NEAR(g.u_minus, oracle::goldman_u_p335[0], 1e-14);
  EXPECT_NEAR(g.u_plus, oracle::goldman_u_p335[1], 1e-14);
  const auto c = cartan::type_constants({3, 3, 5}, cartan::barbot_type({3, 3, 5}));
  EXPECT_LT(std::abs(goldman_f(c, g.u_minus)), 1e-12);
  EXPECT_LT(std::abs(goldman_f(c, g.u_plus)), 1e-12);
  ASSERT_EQ(g.rows.size(), 1000u);
  EXPECT_EQ(g.rows.front().u, -1.5);
  EXPECT_EQ(g.rows.back().u, 3);
  // g+ and g- meet where 2u + 3 = 0
  EXPECT_EQ(g.rows.front().g_plus, g.rows.front().g_minus);
  EXPECT_THROW(goldman_g(-2, 1), Error);
}

TEST(Goldman, BarbotTracesSatisfyCurveEquation) {
  // along the Barbot family, (u, v) stays on the curve v^2 = f(u)
  const TriangleSignature sig{3, 3, 5};
  const auto c = barbot_constants(sig);
  for (double t : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    const auto d = traces(barbot(sig, t));
    EXPECT_NEAR(d.v * d.v, goldman_f(c, d.u), 1e-9 * (1 + d.v * d.v)) << t;
  }
}

TEST(Discriminant, SignMatchesEigenRegimeForRandomMatrices) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2, 2);
  int agree = 0, total = 0;
  for (int k = 0; k < 2000; ++k) {
    projlin::Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
    const double d = m.det();
    if (std::abs(d) < 0.05) continue;
    m = (1 / std::cbrt(d)) * m;  // into SL(3, R)
    const double x = m.trace(), y = m.inverse().trace();
    const double delta = discriminant(x, y);
    if (std::abs(delta) < 1e-6) continue;
    const auto e = projlin::eig3(m);
    ++total;
    agree += (delta > 0) == (e.spectrum == projlin::Spectrum::RealDistinct);
  }
  EXPECT_EQ(agree, total);
}
