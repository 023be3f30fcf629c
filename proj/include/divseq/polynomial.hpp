#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "divseq/bignum.hpp"
#include "divseq/intpoly.hpp"

namespace divseq {

/// Dense univariate polynomial in t over the rationals.
///
/// Coefficients are stored lowest degree first and the leading coefficient
/// is always nonzero; the zero polynomial has no coefficients and reports
/// degree kZeroDegree rather than -1, so code computing orders at infinity
/// cannot silently treat it as a constant.
class Polynomial {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<BigRational> coeffs);

  static Polynomial constant(const BigRational& c);
  static Polynomial monomial(const BigRational& c, int exponent);
  /// The variable t.
  static Polynomial t();
  /// p = scale * poly for an integer polynomial.
  static Polynomial from_int(const BigRational& scale, const detail::IntPoly& poly);

  int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  /// Coefficient of t^i; zero outside the stored range.
  const BigRational& coeff(int i) const;
  const BigRational& leading() const;
  std::span<const BigRational> coefficients() const { return coeffs_; }

  Polynomial monic() const;
  Polynomial derivative() const;
  Polynomial scaled(const BigRational& c) const;
  BigRational eval(const BigRational& x) const;

  /// Splits p into scale * primitive integer polynomial with positive
  /// leading coefficient. The zero polynomial gives (0, {}).
  std::pair<BigRational, detail::IntPoly> to_primitive() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();

  std::vector<BigRational> coeffs_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Euclidean division over Q. Throws DomainError for a zero divisor.
DivMod divmod(const Polynomial& a, const Polynomial& b);

/// a / b when b divides a exactly, otherwise nullopt.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

/// a / b where the caller knows b divides a; throws CertificationError if not.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// a / b for a divisor already certified (for instance a gcd): skips the
/// multiply-back verification of divide_exact.
Polynomial divide_certified(const Polynomial& a, const Polynomial& b);

Polynomial pow(const Polynomial& base, unsigned long exponent);

}  // namespace divseq
