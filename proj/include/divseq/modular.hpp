#pragma once

// Word-sized prime fields used by the modular gcd.

#include <cstdint>
#include <optional>
#include <vector>

#include "divseq/bignum.hpp"
#include "divseq/intpoly.hpp"

namespace divseq::detail {

using Word = std::uint64_t;
using ModPoly = std::vector<Word>;  // lowest degree first, no trailing zeros

inline Word mul_mod(Word a, Word b, Word p) {
  return static_cast<Word>((static_cast<unsigned __int128>(a) * b) % p);
}
inline Word add_mod(Word a, Word b, Word p) {
  Word s = a + b;
  return s >= p ? s - p : s;
}
inline Word sub_mod(Word a, Word b, Word p) { return a >= b ? a - b : a + p - b; }
Word pow_mod(Word a, Word e, Word p);
Word inv_mod(Word a, Word p);

bool is_prime_u64(Word n);

/// Fixed table of distinct primes just below 2^62, largest first.
const std::vector<Word>& prime_pool();

ModPoly reduce(const IntPoly& p, Word prime);
/// Monic gcd over F_p.
ModPoly gcd_mod(ModPoly a, ModPoly b, Word prime);

/// Smallest-denominator rational n/d with n = d * residue (mod modulus),
/// |n|, d <= sqrt(modulus / 2). nullopt if none exists.
std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus);

}  // namespace divseq::detail
