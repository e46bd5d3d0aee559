#pragma once

#include <string_view>
#include <vector>

#include "anosov/cartan.hpp"

namespace anosov::classify {

using cartan::CartanMatrix;
using cartan::CoxeterRep;
using cartan::RepType;
using cartan::TriangleSignature;

struct TraceData {
  double t1 = 0, t2 = 0, t3 = 0;  // tr rho(s2 s3), tr rho(s3 s1), tr rho(s1 s2)
  double x = 0, y = 0;            // tr rho(s1 s2 s3), tr rho(s3 s2 s1)
  double u = 0, v = 0;            // (x + y) / 2, (x - y) / 2
};

enum class Component { Hitchin, Barbot, Other, NonCoxeter };
enum class Regime { RealDistinct, DoubleNondiagonalizable, ComplexPair };

std::string_view to_string(Component c);
std::string_view to_string(Regime r);

struct Verdict {
  Component component = Component::Other;
  Regime regime = Regime::RealDistinct;  // of rho(s1 s2 s3), from the sign of delta
  Regime eig_regime = Regime::RealDistinct;  // same, from eig3 of the evaluated matrix
  bool anosov = false;
  double delta = 0;
  double t_crit = 0, t_red = 0;  // NaN unless the signature has only odd orders
  TraceData traces;
};

// From the Cartan entries.
TraceData traces(const CartanMatrix& c);
// From evaluated matrices.
TraceData traces(const CoxeterRep& rep);

// x^2 y^2 - 4 (x^3 + y^3) + 18 x y - 27.
double discriminant(double x, double y);

Regime regime_from_delta(double delta, const Tolerances& tol = {});

// Barbot constants c_k = 2 cos((p_k - 1) pi / (2 p_k)).
std::array<double, 3> barbot_constants(const TriangleSignature& sig);

// Traces along the Barbot normal form.
double barbot_x(const TriangleSignature& sig, double t);
double barbot_y(const TriangleSignature& sig, double t);

struct GoldmanRow {
  double u, f, g_plus, g_minus;
};

struct GoldmanData {
  double u_minus = 0, u_plus = 0;
  std::vector<GoldmanRow> rows;
};

double goldman_f(const std::array<double, 3>& c, double u);
double goldman_g(double u, int sign);  // DomainError when 2u + 3 < 0

GoldmanData goldman_curves(const TriangleSignature& sig, const RepType& type, double u_min,
                           double u_max, int samples);

double t_red(const TriangleSignature& sig);
double t_crit(const TriangleSignature& sig);

Verdict classify(const CartanMatrix& c, const Tolerances& tol = {});

// Verdict from the traces t1, t2, t3 alone; needs min p_k >= 3.
Verdict classify_traces(const TriangleSignature& sig, const TraceData& tr,
                        const Tolerances& tol = {});

struct SweepRow {
  double t;
  TraceData tr;
  double delta;
  Regime regime;
  bool anosov;
};

std::vector<SweepRow> sweep(const TriangleSignature& sig, const RepType& type, double t_min,
                            double t_max, int steps, const Tolerances& tol = {});

}  // namespace anosov::classify
