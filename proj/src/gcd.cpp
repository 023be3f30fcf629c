#include "divseq/gcd.hpp"

#include <atomic>
#include <random>

#include "divseq/errors.hpp"
#include "divseq/modular.hpp"

namespace divseq {

namespace {

std::atomic<std::uint64_t> g_calls{0};
std::atomic<std::uint64_t> g_primes{0};
std::atomic<std::uint64_t> g_fallbacks{0};

using detail::IntPoly;
using detail::ModPoly;
using detail::Word;

Polynomial monic_from_int(const IntPoly& p) { return Polynomial::from_int(BigRational(1, 1) / p.back(), p); }

// Incremental Chinese remaindering of coefficient vectors.
class CrtAccumulator {
 public:
  void reset() {
    residues_.clear();
    modulus_ = 0;
  }
  bool empty() const { return modulus_ == 0; }

  void add(const ModPoly& image, std::size_t length, Word prime) {
    if (modulus_ == 0) {
      residues_.assign(length, BigInt(0));
      for (std::size_t i = 0; i < length; ++i) residues_[i] = i < image.size() ? image[i] : 0;
      modulus_ = prime;
      return;
    }
    Word m_mod_p = mpz_fdiv_ui(modulus_.get_mpz_t(), prime);
    Word inv = detail::inv_mod(m_mod_p, prime);
    BigInt step;
    for (std::size_t i = 0; i < length; ++i) {
      Word target = i < image.size() ? image[i] : 0;
      Word current = mpz_fdiv_ui(residues_[i].get_mpz_t(), prime);
      Word k = detail::mul_mod(detail::sub_mod(target, current, prime), inv, prime);
      if (k != 0) {
        mpz_mul_ui(step.get_mpz_t(), modulus_.get_mpz_t(), k);
        residues_[i] += step;
      }
    }
    mpz_mul_ui(modulus_.get_mpz_t(), modulus_.get_mpz_t(), prime);
  }

  const std::vector<BigInt>& residues() const { return residues_; }
  const BigInt& modulus() const { return modulus_; }

 private:
  std::vector<BigInt> residues_;
  BigInt modulus_ = 0;
};

// Candidate monic gcd from the current images, or nullopt if some
// coefficient does not reconstruct yet.
std::optional<Polynomial> reconstruct(const CrtAccumulator& crt) {
  const auto& res = crt.residues();
  std::vector<BigRational> coeffs(res.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    auto q = detail::rational_reconstruct(res[i], crt.modulus());
    if (!q) return std::nullopt;
    coeffs[i] = *q;
  }
  return Polynomial(std::move(coeffs));
}

bool divides(const IntPoly& divisor, const IntPoly& dividend) {
  return detail::divexact(dividend, divisor, false).has_value();
}

}  // namespace

GcdStats gcd_stats() { return {g_calls.load(), g_primes.load(), g_fallbacks.load()}; }

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q, std::uint64_t seed) {
  g_calls.fetch_add(1, std::memory_order_relaxed);
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return Polynomial::constant(1);

  IntPoly a = p.to_primitive().second;
  IntPoly b = q.to_primitive().second;
  if (a.size() < b.size()) std::swap(a, b);
  const int db = detail::degree(b);

  const auto& pool = detail::prime_pool();
  std::mt19937_64 rng(seed);
  const std::size_t offset = rng() % pool.size();

  CrtAccumulator crt;
  int best = db + 1;
  bool tried_b = false;
  int probe = -1;
  std::optional<BigRational> previous_probe;
  std::uint64_t used = 0;

  for (std::size_t i = 0; i < pool.size(); ++i) {
    Word prime = pool[(offset + i) % pool.size()];
    if (mpz_fdiv_ui(a.back().get_mpz_t(), prime) == 0 || mpz_fdiv_ui(b.back().get_mpz_t(), prime) == 0) {
      continue;
    }
    ++used;
    ModPoly g = detail::gcd_mod(detail::reduce(a, prime), detail::reduce(b, prime), prime);
    const int d = static_cast<int>(g.size()) - 1;
    if (d == 0) {
      g_primes.fetch_add(used, std::memory_order_relaxed);
      return Polynomial::constant(1);
    }
    if (d > best) continue;  // unlucky prime
    if (d < best || crt.empty()) {
      best = d;
      crt.reset();
      probe = -1;
    }
    if (d == db && !tried_b) {
      tried_b = true;
      if (divides(b, a)) {
        g_primes.fetch_add(used, std::memory_order_relaxed);
        return monic_from_int(b);
      }
      // The true gcd has lower degree; every image of degree db is unlucky.
      best = db - 1;
      crt.reset();
      continue;
    }
    crt.add(g, static_cast<std::size_t>(d) + 1, prime);
    if (probe < 0 || probe >= d) {
      probe = 0;
      for (int k = d - 1; k >= 0; --k) {
        if (g[static_cast<std::size_t>(k)] != 0) {
          probe = k;
          break;
        }
      }
      previous_probe.reset();
    }

    // Full reconstruction only once a probe coefficient has stabilized.
    auto probe_value = detail::rational_reconstruct(crt.residues()[static_cast<std::size_t>(probe)], crt.modulus());
    bool stable = probe_value && previous_probe && *probe_value == *previous_probe;
    previous_probe = probe_value;
    if (!stable) continue;
    auto candidate = reconstruct(crt);
    if (!candidate) continue;
    IntPoly h = candidate->to_primitive().second;
    if (divides(h, a) && divides(h, b)) {
      g_primes.fetch_add(used, std::memory_order_relaxed);
      return *candidate;
    }
  }
  g_primes.fetch_add(used, std::memory_order_relaxed);
  g_fallbacks.fetch_add(1, std::memory_order_relaxed);
  return subresultant_gcd(p, q);
}

Polynomial subresultant_gcd(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return Polynomial::constant(1);
  IntPoly a = p.to_primitive().second;
  IntPoly b = q.to_primitive().second;
  if (a.size() < b.size()) std::swap(a, b);

  BigInt g = 1, h = 1;
  for (;;) {
    const int delta = detail::degree(a) - detail::degree(b);
    IntPoly r = detail::pseudo_remainder(a, b);
    if (r.empty()) return monic_from_int(detail::primitive_part(b));
    if (r.size() == 1) return Polynomial::constant(1);
    a = std::move(b);
    BigInt divisor;
    mpz_pow_ui(divisor.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    divisor *= g;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta - 1)
    if (delta == 0) continue;
    BigInt gd, hd;
    mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
  }
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  if (p.is_constant()) return out;
  Polynomial f = p.monic();
  Polynomial df = f.derivative();
  Polynomial a0 = poly_gcd(f, df);
  Polynomial b = divide_certified(f, a0);
  Polynomial c = divide_certified(df, a0);
  Polynomial d = c - b.derivative();
  for (int i = 1; !b.is_constant(); ++i) {
    Polynomial a = poly_gcd(b, d);
    b = divide_certified(b, a);
    c = divide_certified(d, a);
    d = c - b.derivative();
    if (!a.is_constant()) out.emplace_back(std::move(a), i);
  }
  return out;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("squarefree part of the zero polynomial");
  if (p.is_constant()) return Polynomial::constant(1);
  Polynomial f = p.monic();
  return divide_certified(f, poly_gcd(f, f.derivative()));
}

}  // namespace divseq
