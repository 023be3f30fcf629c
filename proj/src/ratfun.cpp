#include "divseq/ratfun.hpp"

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"

namespace divseq {

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}

RationalFunction RationalFunction::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) return RationalFunction();
  Polynomial g = poly_gcd(num, den);
  if (g.is_one()) return from_coprime(num, den);
  return from_coprime(divide_certified(num, g), divide_certified(den, g));
}

RationalFunction RationalFunction::from_coprime(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  RationalFunction f;
  if (num.is_zero()) return f;
  if (!den.is_monic()) {
    BigRational inv = 1 / den.leading();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  return f;
}

BigRational RationalFunction::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.is_zero() ? BigRational(0) : num_.coeff(0);
}

BigRational RationalFunction::unit_part() const {
  if (is_zero()) throw DomainError("unit part of the zero function");
  return num_.leading();
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero rational function");
  return from_coprime(den_, num_);
}

RationalFunction RationalFunction::operator-() const { return from_coprime(-num_, den_); }

std::optional<BigRational> RationalFunction::eval(const BigRational& c) const {
  BigRational d = den_.eval(c);
  if (d == 0) return std::nullopt;
  return num_.eval(c) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Polynomial& d1 = a.den();
  const Polynomial& d2 = b.den();
  if (d1.is_one() && d2.is_one()) return RationalFunction(a.num() + b.num());
  // gcd(n1 + n2*d1, d1) = gcd(n1, d1) = 1, so these need no reduction.
  if (d2.is_one()) return RationalFunction::from_coprime(a.num() + b.num() * d1, d1);
  if (d1.is_one()) return RationalFunction::from_coprime(b.num() + a.num() * d2, d2);
  if (d1 == d2) return RationalFunction::fraction(a.num() + b.num(), d1);

  Polynomial g = poly_gcd(d1, d2);
  if (g.is_one()) {
    return RationalFunction::from_coprime(a.num() * d2 + b.num() * d1, d1 * d2);
  }
  Polynomial d1g = divide_certified(d1, g);
  Polynomial d2g = divide_certified(d2, g);
  Polynomial num = a.num() * d2g + b.num() * d1g;
  if (num.is_zero()) return RationalFunction();
  // The only possible cancellation is against g.
  Polynomial h = poly_gcd(num, g);
  if (!h.is_one()) {
    num = divide_certified(num, h);
    g = divide_certified(g, h);
  }
  return RationalFunction::from_coprime(std::move(num), d1g * d2g * g);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  Polynomial n1 = a.num(), d1 = a.den(), n2 = b.num(), d2 = b.den();
  if (!d2.is_one()) {
    Polynomial g = poly_gcd(n1, d2);
    if (!g.is_one()) {
      n1 = divide_certified(n1, g);
      d2 = divide_certified(d2, g);
    }
  }
  if (!d1.is_one()) {
    Polynomial g = poly_gcd(n2, d1);
    if (!g.is_one()) {
      n2 = divide_certified(n2, g);
      d1 = divide_certified(d1, g);
    }
  }
  return RationalFunction::from_coprime(n1 * n2, d1 * d2);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return a * b.inverse();
}

RationalFunction field_op(const RationalFunction& a, const RationalFunction& b, FieldOp op) {
  switch (op) {
    case FieldOp::kAdd: return a + b;
    case FieldOp::kSub: return a - b;
    case FieldOp::kMul: return a * b;
    case FieldOp::kDiv: return a / b;
    case FieldOp::kNeg: return -a;
    case FieldOp::kInv: return a.inverse();
  }
  throw DomainError("unknown field operation");
}

RationalFunction pow(const RationalFunction& f, long n) {
  if (n < 0) return pow(f.inverse(), -n);
  if (n == 0) return RationalFunction(1);
  // Powers of a coprime pair stay coprime.
  auto e = static_cast<unsigned long>(n);
  return RationalFunction::from_coprime(pow(f.num(), e), pow(f.den(), e));
}

RationalFunction pow_minus(const RationalFunction& f, unsigned long n, const RationalFunction& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("pow_minus needs nonzero f and g");
  if (n == 0) throw DomainError("pow_minus needs n >= 1");
  RationalFunction fn = pow(f, static_cast<long>(n));
  RationalFunction q = g.is_one() ? fn : fn * g.inverse();
  // q = N/D coprime, so (N - D)/D is coprime as well.
  return RationalFunction::from_coprime(q.num() - q.den(), q.den());
}

int ord_infinity(const RationalFunction& f) {
  if (f.is_zero()) throw DomainError("order of the zero function is infinite");
  return f.den().degree() - f.num().degree();
}

int ord_polynomial(const Polynomial& p, const Polynomial& place) {
  if (p.is_zero()) throw DomainError("order of the zero function is infinite");
  if (place.is_constant()) throw DomainError("a place must be non-constant");
  const Polynomial pi = place.monic();
  Polynomial g = poly_gcd(p, pi);
  if (g.is_one()) return 0;
  if (!(g == pi)) throw DomainError("place is not refined against the function");
  int k = 0;
  Polynomial rest = p;
  while (auto q = try_divide(rest, pi)) {
    rest = *std::move(q);
    ++k;
  }
  if (!poly_gcd(rest, pi).is_one()) throw DomainError("place is not refined against the function");
  return k;
}

int ord_finite(const RationalFunction& f, const Polynomial& place) {
  if (f.is_zero()) throw DomainError("order of the zero function is infinite");
  int up = ord_polynomial(f.num(), place);
  if (up != 0) return up;
  return -ord_polynomial(f.den(), place);
}

}  // namespace divseq
