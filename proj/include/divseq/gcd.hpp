#pragma once

#include <cstdint>
#include <vector>

#include "divseq/polynomial.hpp"
#include "divseq/seed.hpp"

namespace divseq {

/// Monic gcd over Q. gcd(p, 0) = monic(p) and gcd(0, 0) = 0.
///
/// Works modulo random word-sized primes drawn with `seed`, combines the
/// images by Chinese remaindering and rational reconstruction, and accepts
/// a candidate only after exact trial division of both inputs. Falls back to
/// subresultant_gcd if the prime budget runs out.
Polynomial poly_gcd(const Polynomial& p, const Polynomial& q, std::uint64_t seed);
inline Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
  return poly_gcd(p, q, current_seed());
}

/// Monic gcd via the subresultant remainder sequence over Z.
Polynomial subresultant_gcd(const Polynomial& p, const Polynomial& q);

/// Counters for the modular path, for tests and diagnostics.
struct GcdStats {
  std::uint64_t calls = 0;
  std::uint64_t primes_used = 0;
  std::uint64_t fallbacks = 0;
};
GcdStats gcd_stats();

/// Squarefree decomposition p = c * prod_i s_i^i with the s_i monic,
/// squarefree, pairwise coprime and non-constant. Returned as (s_i, i)
/// pairs in increasing i. A constant p yields an empty list.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

/// Product of the distinct monic irreducible factors of p.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace divseq
