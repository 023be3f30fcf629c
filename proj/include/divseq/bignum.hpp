#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace divseq {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline std::size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact integer power of a rational; negative exponents invert.
BigRational rational_pow(const BigRational& base, long exponent);

inline std::string to_string(const BigRational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

}  // namespace divseq
