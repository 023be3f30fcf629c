#include "divseq/polynomial.hpp"

#include <algorithm>

#include "divseq/errors.hpp"

namespace divseq {

BigRational rational_pow(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero raised to a negative power");
    return rational_pow(BigRational(base.get_den(), base.get_num()), -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

namespace {
const BigRational kZero(0);
}

Polynomial::Polynomial(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void Polynomial::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const BigRational& c) { return Polynomial(std::vector<BigRational>{c}); }

Polynomial Polynomial::monomial(const BigRational& c, int exponent) {
  if (exponent < 0) throw DomainError("negative exponent in monomial");
  std::vector<BigRational> v(static_cast<std::size_t>(exponent) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::t() { return monomial(1, 1); }

Polynomial Polynomial::from_int(const BigRational& scale, const detail::IntPoly& poly) {
  Polynomial p;
  if (scale == 0) return p;
  p.coeffs_.reserve(poly.size());
  for (const auto& c : poly) {
    BigRational q(c);
    q *= scale;
    p.coeffs_.push_back(std::move(q));
  }
  while (!p.coeffs_.empty() && p.coeffs_.back() == 0) p.coeffs_.pop_back();
  return p;
}

const BigRational& Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigRational& Polynomial::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Polynomial Polynomial::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(1 / leading());
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigRational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::scaled(const BigRational& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& x : p.coeffs_) x *= c;
  return p;
}

BigRational Polynomial::eval(const BigRational& x) const {
  BigRational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

std::pair<BigRational, detail::IntPoly> Polynomial::to_primitive() const {
  if (is_zero()) return {BigRational(0), {}};
  BigInt lcm = 1;
  for (const auto& c : coeffs_) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  detail::IntPoly ints(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c == 0) continue;
    mpz_divexact(ints[i].get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    ints[i] *= c.get_num();
  }
  BigInt g = detail::content(ints);
  if (sgn(ints.back()) < 0) g = -g;
  if (g != 1) {
    for (auto& c : ints) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return {make_rational(g, lcm), std::move(ints)};
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.coeff(0));
  if (b.is_constant()) return a.scaled(b.coeff(0));
  auto [sa, pa] = a.to_primitive();
  auto [sb, pb] = b.to_primitive();
  return Polynomial::from_int(sa * sb, detail::mul(pa, pb));
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<BigRational> r(a.coefficients().begin(), a.coefficients().end());
  int db = b.degree();
  std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - db) + 1);
  BigRational inv = 1 / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    BigRational c = r[static_cast<std::size_t>(k + db)] * inv;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b.coeff(j);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

namespace {

std::optional<Polynomial> divide_impl(const Polynomial& a, const Polynomial& b, bool trusted) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a.scaled(1 / b.coeff(0));
  if (a.degree() < b.degree()) return std::nullopt;
  auto [sa, pa] = a.to_primitive();
  auto [sb, pb] = b.to_primitive();
  // pb is primitive, so pb | pa over Q forces an integral quotient.
  auto q = detail::divexact(pa, pb, trusted);
  if (!q) return std::nullopt;
  return Polynomial::from_int(sa / sb, *q);
}

}  // namespace

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  return divide_impl(a, b, false);
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_impl(a, b, false);
  if (!q) throw CertificationError("expected exact polynomial division failed");
  return *std::move(q);
}

Polynomial divide_certified(const Polynomial& a, const Polynomial& b) {
  auto q = divide_impl(a, b, true);
  if (!q) throw CertificationError("certified polynomial division failed");
  return *std::move(q);
}

Polynomial pow(const Polynomial& base, unsigned long exponent) {
  if (base.is_constant()) {
    return Polynomial::constant(rational_pow(base.coeff(0), static_cast<long>(exponent)));
  }
  auto [scale, prim] = base.to_primitive();
  detail::IntPoly result{BigInt(1)};
  detail::IntPoly sq = prim;
  unsigned long e = exponent;
  while (e > 0) {
    if (e & 1UL) result = detail::mul(result, sq);
    e >>= 1;
    if (e > 0) sq = detail::mul(sq, sq);
  }
  return Polynomial::from_int(rational_pow(scale, static_cast<long>(exponent)), result);
}

}  // namespace divseq
