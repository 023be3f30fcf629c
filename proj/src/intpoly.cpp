#include "divseq/intpoly.hpp"

#include <algorithm>
#include <cstdint>

namespace divseq::detail {

namespace {

constexpr std::size_t kWordBits = 64;

// Below these sizes the quadratic algorithms beat the packing overhead.
constexpr int kKroneckerMinDegree = 24;

std::size_t bits_to_words(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

std::size_t bitlen_u(std::size_t v) {
  std::size_t n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

// Evaluates p at 2^(64*words) with signed coefficients.
BigInt pack(const IntPoly& p, std::size_t words) {
  std::vector<std::uint64_t> pos(p.size() * words, 0);
  std::vector<std::uint64_t> neg(p.size() * words, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int s = sgn(p[i]);
    if (s == 0) continue;
    std::uint64_t* dst = (s > 0 ? pos.data() : neg.data()) + i * words;
    std::size_t count = 0;
    mpz_export(dst, &count, -1, sizeof(std::uint64_t), 0, 0, p[i].get_mpz_t());
    any_neg = any_neg || s < 0;
  }
  BigInt result;
  mpz_import(result.get_mpz_t(), pos.size(), -1, sizeof(std::uint64_t), 0, 0, pos.data());
  if (any_neg) {
    BigInt n;
    mpz_import(n.get_mpz_t(), neg.size(), -1, sizeof(std::uint64_t), 0, 0, neg.data());
    result -= n;
  }
  return result;
}

// Inverse of pack for balanced digits in (-2^(k-1), 2^(k-1)].
IntPoly unpack(const BigInt& value, std::size_t words) {
  IntPoly out;
  if (value == 0) return out;
  int sign = sgn(value);
  std::size_t nwords = bits_to_words(mpz_sizeinbase(value.get_mpz_t(), 2));
  std::vector<std::uint64_t> buf(nwords + words, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
  std::size_t digits = (count + words - 1) / words;
  BigInt half = BigInt(1) << static_cast<mp_bitcnt_t>(words * kWordBits - 1);
  BigInt full = half << 1;
  out.reserve(digits + 1);
  int carry = 0;
  BigInt u;
  for (std::size_t i = 0; i < digits; ++i) {
    mpz_import(u.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data() + i * words);
    if (carry) u += 1;
    if (u >= half) {
      u -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out.push_back(sign > 0 ? u : BigInt(-u));
  }
  if (carry) out.push_back(BigInt(sign));
  trim(out);
  return out;
}

}  // namespace

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

std::size_t max_coeff_bits(const IntPoly& p) {
  std::size_t bits = 0;
  for (const auto& c : p) bits = std::max(bits, bit_length(c));
  return bits;
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  BigInt g = content(p);
  if (sgn(p.back()) < 0) g = -g;
  if (g != 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return p;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

IntPoly mul_schoolbook(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(r);
  return r;
}

IntPoly mul_kronecker(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t bits = max_coeff_bits(a) + max_coeff_bits(b) + bitlen_u(terms) + 2;
  std::size_t words = bits_to_words(bits);
  BigInt prod = pack(a, words) * pack(b, words);
  return unpack(prod, words);
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) < static_cast<std::size_t>(kKroneckerMinDegree)) {
    return mul_schoolbook(a, b);
  }
  return mul_kronecker(a, b);
}

IntPoly derivative(const IntPoly& p) {
  if (p.size() <= 1) return {};
  IntPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<unsigned long>(i);
  trim(r);
  return r;
}

std::optional<IntPoly> divexact_schoolbook(const IntPoly& a, const IntPoly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return IntPoly{};
  if (a.size() < b.size()) return std::nullopt;
  IntPoly r = a;
  IntPoly q(a.size() - b.size() + 1);
  const BigInt& lc = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& top = r[k + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  for (std::size_t i = 0; i + 1 < b.size() && i < r.size(); ++i) {
    if (r[i] != 0) return std::nullopt;
  }
  trim(q);
  return q;
}

std::optional<IntPoly> divexact_kronecker(const IntPoly& a, const IntPoly& b, bool trusted) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return IntPoly{};
  if (a.size() < b.size()) return std::nullopt;
  // Any factor q of a satisfies |q|_inf <= 2^deg(q) * |a|_2 (Mignotte).
  std::size_t qdeg = a.size() - b.size();
  std::size_t bits = max_coeff_bits(a) + bitlen_u(a.size()) + qdeg + 3;
  bits = std::max(bits, max_coeff_bits(b) + 3);
  std::size_t words = bits_to_words(bits);
  BigInt av = pack(a, words);
  BigInt bv = pack(b, words);
  if (!mpz_divisible_p(av.get_mpz_t(), bv.get_mpz_t())) return std::nullopt;
  BigInt qv;
  mpz_divexact(qv.get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
  IntPoly q = unpack(qv, words);
  if (degree(q) != static_cast<int>(qdeg)) return std::nullopt;
  if (!trusted && mul(q, b) != a) return std::nullopt;
  return q;
}

std::optional<IntPoly> divexact(const IntPoly& a, const IntPoly& b, bool trusted) {
  if (b.size() == 1) {
    IntPoly q = a;
    for (auto& c : q) {
      if (!mpz_divisible_p(c.get_mpz_t(), b[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b[0].get_mpz_t());
    }
    return q;
  }
  if (a.size() >= b.size() && b.size() >= static_cast<std::size_t>(kKroneckerMinDegree) &&
      a.size() - b.size() >= static_cast<std::size_t>(kKroneckerMinDegree)) {
    return divexact_kronecker(a, b, trusted);
  }
  return divexact_schoolbook(a, b);
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  trim(r);
  if (b.empty()) return r;
  const BigInt& lc = b.back();
  int db = degree(b);
  int e = degree(r) - db + 1;
  while (!r.empty() && degree(r) >= db) {
    BigInt top = r.back();
    int shift = degree(r) - db;
    for (auto& c : r) c *= lc;
    for (int j = 0; j <= db; ++j) r[shift + j] -= top * b[j];
    trim(r);
    --e;
  }
  if (e > 0) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
    for (auto& c : r) c *= f;
  }
  return r;
}

}  // namespace divseq::detail
