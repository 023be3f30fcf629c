#pragma once

// Dense polynomials over Z, the working representation behind the rational
// polynomial type. Everything here is an implementation detail of the
// library; the public surface is Polynomial.

#include <optional>
#include <vector>

#include "divseq/bignum.hpp"

namespace divseq::detail {

/// Coefficients lowest degree first; no trailing zeros (empty = zero).
using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p);
int degree(const IntPoly& p);
std::size_t max_coeff_bits(const IntPoly& p);

/// gcd of all coefficients (non-negative; 0 for the zero polynomial).
BigInt content(const IntPoly& p);

/// Divides out the content and makes the leading coefficient positive.
IntPoly primitive_part(IntPoly p);

IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly mul_schoolbook(const IntPoly& a, const IntPoly& b);
IntPoly mul_kronecker(const IntPoly& a, const IntPoly& b);
IntPoly derivative(const IntPoly& p);

/// Quotient a / b in Z[x] if b divides a there, otherwise nullopt. With
/// `trusted` set the caller guarantees divisibility and the final
/// multiply-back check is skipped.
std::optional<IntPoly> divexact(const IntPoly& a, const IntPoly& b, bool trusted = false);
std::optional<IntPoly> divexact_schoolbook(const IntPoly& a, const IntPoly& b);
std::optional<IntPoly> divexact_kronecker(const IntPoly& a, const IntPoly& b, bool trusted);

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

}  // namespace divseq::detail
