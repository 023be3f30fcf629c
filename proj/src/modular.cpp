#include "divseq/modular.hpp"

#include <utility>

#include "divseq/seed.hpp"

namespace divseq {

namespace {
thread_local std::uint64_t g_seed = kDefaultSeed;
}

std::uint64_t current_seed() { return g_seed; }

SeedScope::SeedScope(std::uint64_t seed) : previous_(g_seed) { g_seed = seed; }
SeedScope::~SeedScope() { g_seed = previous_; }

}  // namespace divseq

namespace divseq::detail {

namespace {

constexpr std::size_t kPoolSize = 2048;

void strip(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

Word pow_mod(Word a, Word e, Word p) {
  Word r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

Word inv_mod(Word a, Word p) { return pow_mod(a, p - 2, p); }

bool is_prime_u64(Word n) {
  if (n < 2) return false;
  for (Word small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  Word d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all 64-bit n.
  for (Word a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    Word x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const std::vector<Word>& prime_pool() {
  static const std::vector<Word> pool = [] {
    std::vector<Word> primes;
    primes.reserve(kPoolSize);
    for (Word c = (Word{1} << 62) - 1; primes.size() < kPoolSize; c -= 2) {
      if (is_prime_u64(c)) primes.push_back(c);
    }
    return primes;
  }();
  return pool;
}

ModPoly reduce(const IntPoly& p, Word prime) {
  ModPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i] = mpz_fdiv_ui(p[i].get_mpz_t(), prime);
  }
  strip(r);
  return r;
}

ModPoly gcd_mod(ModPoly a, ModPoly b, Word prime) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    // a <- a mod b
    Word inv = inv_mod(b.back(), prime);
    std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      Word c = mul_mod(a.back(), inv, prime);
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < db; ++j) {
        a[shift + j] = sub_mod(a[shift + j], mul_mod(c, b[j], prime), prime);
      }
      a.pop_back();
      strip(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Word inv = inv_mod(a.back(), prime);
    for (auto& c : a) c = mul_mod(c, inv, prime);
  }
  return a;
}

std::optional<BigRational> rational_reconstruct(const BigInt& residue, const BigInt& modulus) {
  BigInt bound;
  BigInt half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = modulus;
  BigInt r1;
  mpz_mod(r1.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  BigInt s0 = 0, s1 = 1;
  BigInt q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(tmp);
    tmp = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(tmp);
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rational(r1, s1);
}

}  // namespace divseq::detail
