#pragma once

#include <random>
#include <string>
#include <vector>

#include "divseq/text.hpp"

namespace testsupport {

using divseq::BigRational;
using divseq::Polynomial;
using divseq::RationalFunction;

inline Polynomial P(const std::string& s) { return divseq::parse_polynomial(s); }
inline RationalFunction R(const std::string& s) { return divseq::parse_rational_function(s); }

/// Monic irreducibles over Q, pairwise distinct: linear t - k and a few
/// quadratics with no rational roots.
inline const std::vector<Polynomial>& irreducible_pool() {
  static const std::vector<Polynomial> pool = [] {
    std::vector<Polynomial> out;
    for (int k = -4; k <= 4; ++k) out.push_back(P("t - (" + std::to_string(k) + ")"));
    for (const char* q : {"t^2 + 1", "t^2 + 2", "t^2 + t + 1", "t^2 - 2", "t^2 - t + 1", "t^2 + 3", "t^2 - 3",
                          "t^2 + t - 1"}) {
      out.push_back(P(q));
    }
    return out;
  }();
  return pool;
}

/// Exponents of a random product of pool elements with total degree at most
/// max_degree.
inline std::vector<int> random_exponents(std::mt19937_64& rng, int max_degree) {
  const auto& pool = irreducible_pool();
  std::vector<int> e(pool.size(), 0);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> count(0, 4);
  int degree = 0;
  for (int k = count(rng); k > 0; --k) {
    std::size_t i = pick(rng);
    if (degree + pool[i].degree() > max_degree) continue;
    degree += pool[i].degree();
    ++e[i];
  }
  return e;
}

inline Polynomial product_of(const std::vector<int>& exponents) {
  Polynomial acc = Polynomial::constant(1);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] > 0) acc *= divseq::pow(irreducible_pool()[i], static_cast<unsigned long>(exponents[i]));
  }
  return acc;
}

inline Polynomial random_int_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<BigRational> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = coeff(rng);
  while (c.back() == 0) c.back() = coeff(rng);
  return Polynomial(std::move(c));
}

}  // namespace testsupport
