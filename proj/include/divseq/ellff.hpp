#pragma once

#include <array>
#include <optional>
#include <vector>

#include "divseq/places.hpp"
#include "divseq/ratfun.hpp"

namespace divseq {

/// Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t).
class EllCurveFF {
 public:
  /// Throws HypothesisError("singular_curve") when the discriminant is zero.
  EllCurveFF(RationalFunction a1, RationalFunction a2, RationalFunction a3, RationalFunction a4,
             RationalFunction a6);
  /// Short form y^2 = x^3 + a x + b.
  static EllCurveFF short_form(const RationalFunction& a, const RationalFunction& b);

  const RationalFunction& a1() const { return a_[0]; }
  const RationalFunction& a2() const { return a_[1]; }
  const RationalFunction& a3() const { return a_[2]; }
  const RationalFunction& a4() const { return a_[3]; }
  const RationalFunction& a6() const { return a_[4]; }
  const RationalFunction& b2() const { return b2_; }
  const RationalFunction& b4() const { return b4_; }
  const RationalFunction& b6() const { return b6_; }
  const RationalFunction& b8() const { return b8_; }
  const RationalFunction& c4() const { return c4_; }
  const RationalFunction& c6() const { return c6_; }
  const RationalFunction& discriminant() const { return delta_; }

 private:
  std::array<RationalFunction, 5> a_;
  RationalFunction b2_, b4_, b6_, b8_, c4_, c6_, delta_;
};

class EllPointFF {
 public:
  EllPointFF() = default;  // identity
  static EllPointFF identity() { return {}; }
  static EllPointFF affine(RationalFunction x, RationalFunction y);

  bool is_identity() const { return identity_; }
  const RationalFunction& x() const;
  const RationalFunction& y() const;

  friend bool operator==(const EllPointFF&, const EllPointFF&) = default;

 private:
  bool identity_ = true;
  RationalFunction x_, y_;
};

bool on_curve(const EllCurveFF& e, const EllPointFF& p);
/// Throws DomainError for an affine point that is not on the curve.
void require_on_curve(const EllCurveFF& e, const EllPointFF& p);

EllPointFF ec_neg(const EllCurveFF& e, const EllPointFF& p);
EllPointFF ec_add(const EllCurveFF& e, const EllPointFF& p, const EllPointFF& q);
/// n * P by double-and-add; negative n negates.
EllPointFF ec_mul(const EllCurveFF& e, long n, const EllPointFF& p);
/// [P, 2P, ..., n_max P] by repeated addition.
std::vector<EllPointFF> ec_multiples(const EllCurveFF& e, const EllPointFF& p, int n_max);

enum class ReductionStatus { kGood, kBad, kMinimizedThenGood };
const char* to_string(ReductionStatus s);

/// Reduction data at a place. `scaling` is the exponent e of the uniformizer
/// in the change of variables that makes the model integral and minimal at
/// the place (x -> pi^(2e) x); ord_discriminant is measured on that model.
struct ReductionTag {
  Place place;
  ReductionStatus status = ReductionStatus::kGood;
  int scaling = 0;
  int ord_discriminant = 0;

  friend bool operator==(const ReductionTag&, const ReductionTag&) = default;
};

/// Refines the registry against c4, c6 and the discriminant and returns the
/// tags of every place where one of them has a zero of the discriminant or
/// a pole (including infinity when relevant), on the final generation.
std::vector<ReductionTag> reduction_tags(const EllCurveFF& e, PlaceRegistry& registry);

/// Reduction data at an arbitrary place; the registry must already be
/// refined against the curve invariants (see reduction_tags).
ReductionTag reduction_at(const EllCurveFF& e, Place place, const PlaceRegistry& registry);

struct SectionDivisor {
  Divisor divisor;
  std::vector<ReductionTag> tags;
};

/// D_P: at each good place the pole order of x(P) on the minimal model,
/// halved. Bad places are excluded and reported in the tags. Throws
/// DomainError for P = O and CertificationError for an odd pole order at a
/// good place.
SectionDivisor ec_section_divisor(const EllCurveFF& e, const EllPointFF& p, PlaceRegistry& registry);

struct EcSequence {
  std::vector<Divisor> divisors;
  std::vector<ReductionTag> tags;
};

/// Section divisors of the given points, all on one final generation.
EcSequence ec_section_sequence(const EllCurveFF& e, const std::vector<EllPointFF>& points,
                               PlaceRegistry& registry, unsigned threads = 1);

/// [D_{nP,Q} for n = 1..n_max]. Throws HypothesisError for a torsion or
/// unresolved base point and when nP = Q for some n.
EcSequence ec_sequence(const EllCurveFF& e, const EllPointFF& p, const std::optional<EllPointFF>& q, int n_max,
                       PlaceRegistry& registry, unsigned threads = 1);

struct TorsionCertificate {
  enum Kind { kNonTorsion, kTorsionOrder, kInconclusive } kind = kInconclusive;
  BigRational witness = 0;  // specialization t = witness, for kNonTorsion
  int order = 0;            // for kTorsionOrder
  std::vector<BigRational> tried;
};

/// Specializes at good values t = 1, 2, 3, -1, 5, then seeded random
/// integers, until some specialization has no multiple n <= 12 equal to O
/// (so P has infinite order by Mazur's bound). Throws DomainError if none of
/// the `trials` candidates has good reduction.
TorsionCertificate ec_nontorsion_certificate(const EllCurveFF& e, const EllPointFF& p, int trials = 20);

/// Places where the parity law fails for some point: at a good place with
/// ord x < 0 on the minimal model, ord x must be even and ord y = 3/2 ord x.
/// Refines the registry against the coordinates.
std::vector<std::pair<int, Place>> parity_violations(const EllCurveFF& e, const std::vector<EllPointFF>& points,
                                                     PlaceRegistry& registry);

}  // namespace divseq
