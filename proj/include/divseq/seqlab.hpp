#pragma once

#include <optional>
#include <vector>

#include "divseq/ellff.hpp"
#include "divseq/places.hpp"

namespace divseq {

/// Default stabilization window for a horizon N: max(20, N / 4).
int default_window(int horizon);

struct PlaceRecord {
  Place place;
  int first_n = 0;           // least n with the place in the support
  int max_multiplicity = 0;  // m_gamma
  int max_attained_at = 0;   // least n reaching m_gamma
  bool dichotomy_ok = true;  // every nonzero multiplicity equals m_gamma
  bool divisibility_ok = true;  // in the support at n iff first_n | n
};

struct SequenceReport {
  int horizon = 0;
  int window = 0;
  bool torsion_comparison = false;
  std::vector<PlaceRecord> support_table;  // in place order
  Divisor bound_divisor;
  std::vector<int> exceptional_set;     // n with D_n != D_1
  std::vector<int> progression_moduli;  // sorted distinct first_n of places outside supp D_1
  bool stabilized = true;
  /// Torsion-comparison mode only: exceptional set equals the union of the
  /// progressions at the horizon.
  std::optional<bool> progressions_match;
  /// Density of the n divisible by none of the moduli (exact, via
  /// inclusion-exclusion over the minimal moduli); absent when there are too
  /// many minimal moduli to expand.
  std::optional<BigRational> complement_density;
  /// Every m_gamma is first reached at some n <= N / 2.
  bool boundedness_witness = true;
  std::vector<ReductionTag> bad_places;
};

/// Throws DomainError for an empty sequence and GenerationMismatch when the
/// entries are not on one registry generation.
SequenceReport analyze(const std::vector<Divisor>& seq, bool torsion_comparison,
                       std::optional<int> window = std::nullopt);

struct BoundCheck {
  Divisor bound;
  int first_attained = 1;
  bool stable_tail = true;
};

/// The sup of the sequence, the least n by which every place has reached
/// its maximal multiplicity, and whether that happened before the last
/// window of entries.
BoundCheck pq_bound_check(const std::vector<Divisor>& seq, std::optional<int> window = std::nullopt);

/// Entry n is min(D_{n Qe}, zero divisor of f^n - 1) on the final
/// generation. Throws HypothesisError for torsion Qe or f in {0, 1, -1}.
EcSequence mixed_sequence(const EllCurveFF& e, const EllPointFF& qe, const RationalFunction& f, int n_max,
                          PlaceRegistry& registry, unsigned threads = 1);

struct IntGcdEntry {
  int n = 0;
  BigInt gcd;
  double log_gcd_over_n = 0;
};

struct IntGcdSummary {
  std::vector<IntGcdEntry> entries;
  BigInt base_gcd;            // gcd(a - 1, b - 1)
  int base_gcd_count = 0;     // n with gcd(a^n - 1, b^n - 1) = base_gcd
  int tail_start = 1;         // tail statistic runs over n >= max(1, N / 2)
  double tail_max_log_ratio = 0;
};

/// gcd(a^n - 1, b^n - 1) for n = 1..n_max. Requires a, b >= 2 and a != b.
IntGcdSummary int_gcd_sequence(const BigInt& a, const BigInt& b, int n_max, unsigned threads = 1);

}  // namespace divseq
