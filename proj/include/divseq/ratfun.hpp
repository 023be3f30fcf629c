#pragma once

#include <string>

#include "divseq/polynomial.hpp"

namespace divseq {

/// Element of Q(t) in canonical form: denominator monic, numerator and
/// denominator coprime. Zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(const BigRational& c) : RationalFunction(Polynomial::constant(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(BigRational(c)) {}                          // NOLINT

  /// Reduces num/den to canonical form. Throws DomainError if den is zero.
  static RationalFunction fraction(const Polynomial& num, const Polynomial& den);

  /// Trusts that num/den is already reduced and only normalizes the
  /// denominator to be monic.
  static RationalFunction from_coprime(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// Value of a constant function; throws DomainError otherwise.
  BigRational constant_value() const;

  /// Leading-coefficient ratio: f = c * (monic num)/(monic den).
  BigRational unit_part() const;

  RationalFunction inverse() const;
  RationalFunction operator-() const;

  /// Evaluates at t = c; nullopt at a pole.
  std::optional<BigRational> eval(const BigRational& c) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

enum class FieldOp { kAdd, kSub, kMul, kDiv, kNeg, kInv };

/// Dispatches one field operation; unary operations ignore b.
RationalFunction field_op(const RationalFunction& a, const RationalFunction& b, FieldOp op);

/// f^n for any integer n (negative n inverts; f must be nonzero then).
RationalFunction pow(const RationalFunction& f, long n);

/// f^n / g - 1 in canonical form. f and g must be nonzero, n >= 1.
RationalFunction pow_minus(const RationalFunction& f, unsigned long n,
                           const RationalFunction& g = RationalFunction(1));

/// ord at the infinite place: deg den - deg num. Throws for f = 0.
int ord_infinity(const RationalFunction& f);

/// Order of vanishing of p along the Galois cluster cut out by the monic
/// squarefree polynomial `place`. Requires every root of `place` to occur
/// in p with the same multiplicity; throws DomainError otherwise.
int ord_polynomial(const Polynomial& p, const Polynomial& place);

/// Same as ord_polynomial for a rational function (num minus den order).
int ord_finite(const RationalFunction& f, const Polynomial& place);

}  // namespace divseq
