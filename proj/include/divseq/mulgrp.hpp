#pragma once

#include <optional>
#include <vector>

#include "divseq/places.hpp"
#include "divseq/ratfun.hpp"

namespace divseq {

/// Point (f_1, ..., f_l) of the torus G_m^l over Q(t).
class GmPoint {
 public:
  /// Throws DomainError for an empty tuple or a zero coordinate.
  explicit GmPoint(std::vector<RationalFunction> coords);
  static GmPoint identity(std::size_t dimension);

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<RationalFunction>& coords() const { return coords_; }
  bool is_identity() const;
  /// Every coordinate is 1 or -1, the only roots of unity in Q(t).
  bool is_torsion() const;

  friend bool operator==(const GmPoint&, const GmPoint&) = default;

 private:
  std::vector<RationalFunction> coords_;
};

/// nP = (f_1^n, ..., f_l^n).
GmPoint gm_power(const GmPoint& p, long n);

/// Primitive integer vector with first nonzero entry positive.
struct RelationVector {
  std::vector<BigInt> exponents;
  friend bool operator==(const RelationVector&, const RelationVector&) = default;
};

enum class IndependenceMode { kExact, kModuloConstants };

struct IndependenceResult {
  bool independent = true;
  RelationVector relation;  // empty when independent
  /// prod f_j^{a_j}. In exact mode relations are detected modulo the
  /// torsion of Q^x, so this is 1 or -1.
  BigRational constant = 1;
};

/// D_{P,Q}: at each place the minimum over coordinates of the positive part
/// of ord(f_j / g_j - 1); coordinates with f_j = g_j impose nothing.
/// Q defaults to the identity. Throws HypothesisError if P = Q.
Divisor gm_divisor(const GmPoint& p, const std::optional<GmPoint>& q, PlaceRegistry& registry);

/// [D_{nP,Q} for n = 1..n_max], all on the final registry generation.
/// Throws HypothesisError when P is the identity or torsion, when the
/// dimensions differ, or when nP = Q for some n <= n_max.
std::vector<Divisor> gm_sequence(const GmPoint& p, const std::optional<GmPoint>& q, int n_max,
                                 PlaceRegistry& registry, unsigned threads = 1);

/// Searches for an integer relation prod f_j^{a_j} = const through the
/// exponent matrix over a coprime base (plus prime exponents of the
/// constants in exact mode). Constants are factored by trial division up to
/// 10^6; larger unresolved cofactors throw DomainError.
IndependenceResult mult_independent(const std::vector<RationalFunction>& fs, IndependenceMode mode);

/// The n in [1, n_max] with nP = Q, if any.
std::optional<int> is_power_relation(const GmPoint& p, const GmPoint& q, int n_max);

/// Integer kernel basis of the rows-to-zero map v -> v * m for an l x k
/// matrix m (given as rows), via Hermite reduction of [m | I].
std::vector<std::vector<BigInt>> integer_left_kernel(const std::vector<std::vector<BigInt>>& rows);

}  // namespace divseq
