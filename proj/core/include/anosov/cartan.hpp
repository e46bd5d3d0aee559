#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "anosov/projlin.hpp"

namespace anosov::cartan {

using projlin::Mat3;
using projlin::Vec3;

// Orders of s2s3, s3s1 and s1s2. The p_k need not be sorted: cyclic
// relabelings and the p2/p3 swap produce unsorted signatures.
struct TriangleSignature {
  int p1 = 0, p2 = 0, p3 = 0;

  int p(int k) const { return k == 0 ? p1 : k == 1 ? p2 : p3; }
  bool all_odd() const { return p1 % 2 == 1 && p2 % 2 == 1 && p3 % 2 == 1; }
  bool is_sorted() const { return p1 <= p2 && p2 <= p3; }
  void validate() const;  // throws InvalidSignature
  std::string str() const;
  friend bool operator==(const TriangleSignature&, const TriangleSignature&) = default;
};

struct RepType {
  int q1 = 1, q2 = 1, q3 = 1;

  int q(int k) const { return k == 0 ? q1 : k == 1 ? q2 : q3; }
  std::string str() const;
  friend bool operator==(const RepType&, const RepType&) = default;
};

RepType hitchin_type();
// ((p1-1)/2, (p2-1)/2, (p3-1)/2); requires all p_k odd.
RepType barbot_type(const TriangleSignature& sig);

void validate_type(const TriangleSignature& sig, const RepType& type);  // TypeOutOfRange
// c_k = 2 cos(q_k pi / p_k), k = 0, 1, 2.
std::array<double, 3> type_constants(const TriangleSignature& sig, const RepType& type);
// True when some q_k = p_k / 2, i.e. the Cartan matrix has no free parameter.
bool is_single_point(const TriangleSignature& sig, const RepType& type);

struct CartanMatrix {
  Mat3 a;
  TriangleSignature sig;
  RepType type;
  double t = 1;  // NaN when the type has no free parameter

  bool has_parameter() const;
  std::array<double, 3> c() const { return type_constants(sig, type); }
};

// [[2, -c3, -c2], [-c3, 2, -t c1], [-c2, -c1/t, 2]].
CartanMatrix normal_form(const TriangleSignature& sig, const RepType& type, double t);

// -a12 a23 a31 / (c1 c2 c3) for a matrix satisfying the Cartan conditions.
double parameter_of(const Mat3& a, const TriangleSignature& sig, const RepType& type);

// Recovers (q1, q2, q3) from the 2-cyclic products a_ij a_ji = c_k^2.
RepType type_of(const Mat3& a, const TriangleSignature& sig, double tol = 1e-9);

// Transpose: same type, parameter 1/t.
CartanMatrix dual_representation(const CartanMatrix& c);

// Conjugation by the permutation exchanging the 2nd and 3rd basis vectors.
CartanMatrix swap_p2_p3(const CartanMatrix& c);

// Relabeling new s_i = old s_{perm[i]}; a'_ij = a_{perm[i] perm[j]}.
CartanMatrix relabel(const CartanMatrix& c, const std::array<int, 3>& perm);

struct CoxeterRep {
  std::array<Mat3, 3> s;
  std::array<Vec3, 3> b;      // reflection vectors
  std::array<Vec3, 3> alpha;  // covectors, s_i = b_i (x) alpha_i - 1
  CartanMatrix cartan;
  std::uint64_t id = 0;  // distinguishes representations in evaluation caches

  const Mat3& gen(int i) const { return s[i]; }
  TriangleSignature sig() const { return cartan.sig; }
};

CoxeterRep build_representation(const CartanMatrix& c, const Tolerances& tol = {});

// Same generator matrices with relabeled generators: new s_i = old s_{perm[i]}.
CoxeterRep relabel(const CoxeterRep& r, const std::array<int, 3>& perm);

// s_i -> s_i^{-T} = s_i^T. Its Cartan matrix is the transpose.
CoxeterRep inverse_transpose(const CoxeterRep& r);

// Largest deviation from the Coxeter relations of the signature.
double relation_residual(const std::array<Mat3, 3>& s, const TriangleSignature& sig);

std::uint64_t next_rep_id();

}  // namespace anosov::cartan
