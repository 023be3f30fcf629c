#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "divseq/modular.hpp"
#include "divseq/polynomial.hpp"
#include "divseq/ratfun.hpp"

namespace divseq {

/// A place of P^1 over Q: either a registry entry (a Galois-stable cluster
/// of finite points cut out by a monic squarefree polynomial) or the point
/// at infinity. Finite places order by registry index, infinity last.
struct Place {
  static constexpr std::uint32_t kInfinityIndex = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t index = kInfinityIndex;

  static constexpr Place infinity() { return Place{kInfinityIndex}; }
  static constexpr Place finite(std::uint32_t i) { return Place{i}; }
  constexpr bool is_infinite() const { return index == kInfinityIndex; }

  friend constexpr auto operator<=>(const Place&, const Place&) = default;
};

struct PlaceMultiplicity {
  Place place;
  int multiplicity = 0;

  friend bool operator==(const PlaceMultiplicity&, const PlaceMultiplicity&) = default;
};

/// Formal sum of places with integer multiplicities. Zero multiplicities are
/// never stored. The generation records which registry refinement the
/// finite places belong to.
class Divisor {
 public:
  explicit Divisor(std::uint64_t generation = 0) : generation_(generation) {}

  std::uint64_t generation() const { return generation_; }
  int multiplicity(Place p) const;
  int infinity() const { return multiplicity(Place::infinity()); }
  /// Sets (or, for m = 0, erases) the multiplicity at p.
  void set(Place p, int m);
  void add(Place p, int m) { set(p, multiplicity(p) + m); }

  bool empty() const { return terms_.empty(); }
  bool effective() const;
  const std::map<Place, int>& terms() const { return terms_; }

  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.generation_ == b.generation_ && a.terms_ == b.terms_;
  }

 private:
  friend class PlaceRegistry;
  std::uint64_t generation_;
  std::map<Place, int> terms_;
};

/// Pairwise-coprime set of monic squarefree polynomials that identifies
/// finite places consistently across a computation.
///
/// Refinement only ever splits an entry into two coprime factors; the split
/// entry stays in the table (dead) with links to its parts, so divisors from
/// older generations can be re-expressed with rebase(). The generation
/// counter increments on every split. Single writer: refine() must not run
/// concurrently with anything else on the same registry.
class PlaceRegistry {
 public:
  PlaceRegistry();

  /// Refines against p and reports how p factors over the live entries:
  /// every root of p lies in exactly one reported place, with the reported
  /// multiplicity. Constants give an empty report; p = 0 throws.
  std::vector<PlaceMultiplicity> refine(const Polynomial& p);

  /// refine() for an already computed squarefree decomposition.
  std::vector<PlaceMultiplicity> refine_decomposed(const std::vector<std::pair<Polynomial, int>>& parts);

  std::uint64_t generation() const { return generation_; }
  std::size_t entry_count() const { return entries_.size(); }
  std::vector<Place> live_places() const;
  bool is_live(Place p) const;

  /// Defining polynomial of a finite place (live or dead).
  const Polynomial& polynomial(Place p) const;
  /// deg of the entry for finite places, 1 for infinity.
  int degree(Place p) const;
  /// Polynomial text of the entry, or "infinity".
  std::string label(Place p) const;

  /// Re-expresses a divisor (or a factorization report) over the live
  /// entries of the current generation.
  Divisor rebase(const Divisor& d) const;
  std::vector<PlaceMultiplicity> rebase(const std::vector<PlaceMultiplicity>& terms) const;

  /// Builds a divisor at the current generation from refine() output.
  Divisor make_divisor(const std::vector<PlaceMultiplicity>& terms, int infinity = 0) const;

 private:
  struct Entry {
    Polynomial poly;
    detail::ModPoly image;  // primitive form mod the filter prime, empty if unusable
    std::vector<std::uint32_t> children;
  };

  std::uint32_t add_entry(Polynomial poly);
  void expand(std::uint32_t index, int multiplicity, std::map<Place, int>& out) const;

  std::vector<Entry> entries_;
  std::uint64_t generation_ = 0;
  detail::Word filter_prime_;
};

/// ord of f at a place. Throws DomainError for f = 0 or when the place is
/// not refined against f.
int ord_at(const RationalFunction& f, Place place, const PlaceRegistry& registry);

/// Effective divisor of zeros of f (including infinity when ord_inf f > 0).
/// Refines the registry against the numerator of f.
Divisor zero_divisor(const RationalFunction& f, PlaceRegistry& registry);

/// Place-wise minimum / maximum of two effective divisors on the same
/// generation; throws GenerationMismatch otherwise.
Divisor divisor_min(const Divisor& a, const Divisor& b);
Divisor divisor_sup(const Divisor& a, const Divisor& b);
bool divisor_leq(const Divisor& a, const Divisor& b);

/// Sum of multiplicity * deg(place).
long divisor_degree(const Divisor& d, const PlaceRegistry& registry);
std::vector<Place> divisor_support(const Divisor& d);

/// prod over finite places of entry^multiplicity (effective divisors only).
Polynomial finite_part_polynomial(const Divisor& d, const PlaceRegistry& registry);

}  // namespace divseq
