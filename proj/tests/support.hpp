#pragma once

#include <random>
#include <vector>

#include "anosov/cartan.hpp"

namespace testsupport {

using anosov::cartan::CartanMatrix;
using anosov::cartan::RepType;
using anosov::cartan::TriangleSignature;

inline const std::vector<TriangleSignature>& signatures() {
  static const std::vector<TriangleSignature> s{{3, 3, 5}, {3, 5, 5}, {5, 5, 5}, {3, 3, 7}, {2, 3, 7},
                                                {4, 4, 4}, {2, 4, 5}, {3, 4, 7}, {5, 3, 3}, {7, 7, 9}};
  return s;
}

inline const std::vector<TriangleSignature>& odd_signatures() {
  static const std::vector<TriangleSignature> s{{3, 3, 5}, {3, 5, 5}, {5, 5, 5}, {3, 3, 7}, {5, 3, 3},
                                                {7, 7, 7}, {3, 5, 7}};
  return s;
}

inline RepType random_type(const TriangleSignature& sig, std::mt19937_64& rng) {
  std::array<int, 3> q{};
  for (int k = 0; k < 3; ++k) q[k] = std::uniform_int_distribution<int>(1, sig.p(k) / 2)(rng);
  return {q[0], q[1], q[2]};
}

// log-uniform |t| in [1e-2, 1e2], random sign
inline double random_t(std::mt19937_64& rng) {
  const double t = std::exp(std::uniform_real_distribution<double>(-4.6, 4.6)(rng));
  return std::bernoulli_distribution(0.8)(rng) ? t : -t;
}

// A normal form conjugated by a random positive diagonal matrix: still a
// Cartan matrix of the same representation class.
inline CartanMatrix random_cartan(std::mt19937_64& rng, const TriangleSignature& sig) {
  const RepType type = random_type(sig, rng);
  CartanMatrix c = anosov::cartan::normal_form(sig, type, random_t(rng));
  std::uniform_real_distribution<double> u(-1, 1);
  const std::array<double, 3> d{std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.a(i, j) *= d[i] / d[j];
  return c;
}

}  // namespace testsupport
