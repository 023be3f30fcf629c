#include "divseq/mulgrp.hpp"

#include <algorithm>

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"
#include "divseq/parallel.hpp"

namespace divseq {

namespace {

constexpr unsigned long kTrialDivisionBound = 1000000;

// gcd data of (f_j^n / g_j - 1)_j: the numerator gcd and the infinity
// multiplicity. `trivial` is set when every coordinate satisfies f^n = g.
struct GcdTerm {
  Polynomial gcd;
  int infinity = 0;
  bool trivial = true;
};

GcdTerm gcd_term(const GmPoint& p, const GmPoint* q, unsigned long n) {
  GcdTerm term;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    RationalFunction r = q ? pow_minus(p.coords()[j], n, q->coords()[j]) : pow_minus(p.coords()[j], n);
    if (r.is_zero()) continue;
    int inf = std::max(0, ord_infinity(r));
    if (term.trivial) {
      term.gcd = r.num().monic();
      term.infinity = inf;
      term.trivial = false;
    } else {
      term.infinity = std::min(term.infinity, inf);
      if (!term.gcd.is_one()) term.gcd = poly_gcd(term.gcd, r.num());
    }
  }
  return term;
}

void check_dimensions(const GmPoint& p, const GmPoint& q) {
  if (p.dimension() != q.dimension()) {
    throw HypothesisError("dimension_mismatch", "P and Q live in tori of different dimensions");
  }
}

// |n| = prod p^e by trial division; primes are returned in increasing order.
std::vector<std::pair<BigInt, int>> factor_constant(BigInt n) {
  std::vector<std::pair<BigInt, int>> out;
  if (n < 0) n = -n;
  if (n == 0) throw DomainError("cannot factor zero");
  for (unsigned long d = 2; d <= kTrialDivisionBound && BigInt(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    out.emplace_back(BigInt(d), e);
  }
  if (n > 1) {
    // No factor up to the bound, so anything below bound^2 is prime.
    if (n >= BigInt(kTrialDivisionBound) * kTrialDivisionBound) {
      throw DomainError("constant factor " + n.get_str() + " exceeds the trial-division bound 10^6");
    }
    out.emplace_back(n, 1);
  }
  return out;
}

// Exponent vectors of the fs over a common coprime base.
std::vector<std::map<Place, int>> exponent_vectors(const std::vector<RationalFunction>& fs) {
  PlaceRegistry registry;
  std::vector<std::vector<PlaceMultiplicity>> reports;
  for (const auto& f : fs) {
    auto terms = registry.refine(f.num());
    for (auto t : registry.refine(f.den())) {
      t.multiplicity = -t.multiplicity;
      terms.push_back(t);
    }
    reports.push_back(std::move(terms));
  }
  std::vector<std::map<Place, int>> out;
  for (const auto& r : reports) {
    std::map<Place, int> v;
    for (const auto& t : registry.rebase(r)) v[t.place] += t.multiplicity;
    out.push_back(std::move(v));
  }
  return out;
}

void canonicalize(std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return;
  auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
}

// Allowed exponents n for a single coordinate equation a^n = b.
struct ExponentConstraint {
  enum Kind { kAny, kParity, kExact, kNone } kind = kAny;
  long value = 0;
};

ExponentConstraint coordinate_constraint(const RationalFunction& a, const RationalFunction& b, int n_max) {
  using C = ExponentConstraint;
  if (!a.is_constant()) {
    const int da = a.num().degree();
    const int ea = a.den().degree();
    const int db = b.num().is_zero() ? -1 : b.num().degree();
    const int eb = b.den().degree();
    long n = da != 0 ? db / da : eb / ea;
    if (n < 1 || n > n_max || static_cast<long>(da) * n != db || static_cast<long>(ea) * n != eb) return {C::kNone, 0};
    if (!(pow(a, n) == b)) return {C::kNone, 0};
    return {C::kExact, n};
  }
  if (!b.is_constant()) return {C::kNone, 0};
  const BigRational c = a.constant_value();
  const BigRational d = b.constant_value();
  if (c == 1) return d == 1 ? C{C::kAny, 0} : C{C::kNone, 0};
  if (c == -1) {
    if (d == 1) return {C::kParity, 0};
    if (d == -1) return {C::kParity, 1};
    return {C::kNone, 0};
  }
  const std::size_t target = bit_length(d.get_num()) + bit_length(d.get_den());
  BigRational power = c;
  for (long n = 1; n <= n_max; ++n) {
    if (power == d) return {C::kExact, n};
    if (bit_length(power.get_num()) + bit_length(power.get_den()) > target + 1) break;
    power *= c;
  }
  return {C::kNone, 0};
}

}  // namespace

GmPoint::GmPoint(std::vector<RationalFunction> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("a torus point needs at least one coordinate");
  for (const auto& f : coords_) {
    if (f.is_zero()) throw DomainError("torus coordinates must be nonzero");
  }
}

GmPoint GmPoint::identity(std::size_t dimension) {
  return GmPoint(std::vector<RationalFunction>(dimension, RationalFunction(1)));
}

bool GmPoint::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const RationalFunction& f) { return f.is_one(); });
}

bool GmPoint::is_torsion() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const RationalFunction& f) {
    return f.is_constant() && (f.constant_value() == 1 || f.constant_value() == -1);
  });
}

GmPoint gm_power(const GmPoint& p, long n) {
  std::vector<RationalFunction> out;
  for (const auto& f : p.coords()) out.push_back(pow(f, n));
  return GmPoint(std::move(out));
}

Divisor gm_divisor(const GmPoint& p, const std::optional<GmPoint>& q, PlaceRegistry& registry) {
  if (q) check_dimensions(p, *q);
  GcdTerm term = gcd_term(p, q ? &*q : nullptr, 1);
  if (term.trivial) throw HypothesisError("p_equals_q", "D_{P,Q} is undefined for P = Q");
  auto pieces = term.gcd.is_constant() ? std::vector<PlaceMultiplicity>{} : registry.refine(term.gcd);
  return registry.make_divisor(pieces, term.infinity);
}

std::vector<Divisor> gm_sequence(const GmPoint& p, const std::optional<GmPoint>& q, int n_max,
                                 PlaceRegistry& registry, unsigned threads) {
  if (n_max < 1) throw DomainError("sequence horizon must be positive");
  if (p.is_identity()) throw HypothesisError("identity_base_point", "P is the identity");
  if (p.is_torsion()) throw HypothesisError("torsion_base_point", "every coordinate of P is a root of unity");
  if (q) {
    check_dimensions(p, *q);
    if (auto n = is_power_relation(p, *q, n_max)) {
      throw HypothesisError("np_equals_q", "nP = Q for n = " + std::to_string(*n));
    }
  }

  const auto count = static_cast<std::size_t>(n_max);
  std::vector<GcdTerm> terms(count);
  std::vector<std::vector<std::pair<Polynomial, int>>> parts(count);
  parallel_for(count, threads, [&](std::size_t i) {
    terms[i] = gcd_term(p, q ? &*q : nullptr, i + 1);
    if (terms[i].trivial) throw CertificationError("nP = Q slipped past the power-relation check");
    if (!terms[i].gcd.is_constant()) parts[i] = squarefree_decomposition(terms[i].gcd);
  });

  std::vector<std::vector<PlaceMultiplicity>> pieces(count);
  for (std::size_t i = 0; i < count; ++i) pieces[i] = registry.refine_decomposed(parts[i]);

  std::vector<Divisor> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(registry.make_divisor(pieces[i], terms[i].infinity));
  return out;
}

std::vector<std::vector<BigInt>> integer_left_kernel(const std::vector<std::vector<BigInt>>& rows) {
  const std::size_t l = rows.size();
  const std::size_t k = l == 0 ? 0 : rows[0].size();
  std::vector<std::vector<BigInt>> a(l, std::vector<BigInt>(k + l, BigInt(0)));
  for (std::size_t i = 0; i < l; ++i) {
    std::copy(rows[i].begin(), rows[i].end(), a[i].begin());
    a[i][k + i] = 1;
  }
  auto sub_multiple = [](std::vector<BigInt>& dst, const std::vector<BigInt>& src, const BigInt& q) {
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] -= q * src[c];
  };
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < k && pivot < l; ++col) {
    // Euclid on the column until only the pivot row is nonzero.
    for (;;) {
      std::size_t best = l;
      for (std::size_t r = pivot; r < l; ++r) {
        if (a[r][col] != 0 && (best == l || abs(a[r][col]) < abs(a[best][col]))) best = r;
      }
      if (best == l) break;
      std::swap(a[pivot], a[best]);
      bool done = true;
      for (std::size_t r = pivot + 1; r < l; ++r) {
        if (a[r][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][col].get_mpz_t(), a[pivot][col].get_mpz_t());
        sub_multiple(a[r], a[pivot], q);
        if (a[r][col] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<std::vector<BigInt>> kernel;
  for (std::size_t r = pivot; r < l; ++r) kernel.emplace_back(a[r].begin() + static_cast<long>(k), a[r].end());
  return kernel;
}

IndependenceResult mult_independent(const std::vector<RationalFunction>& fs, IndependenceMode mode) {
  if (fs.empty()) throw DomainError("independence test needs at least one function");
  for (const auto& f : fs) {
    if (f.is_zero()) throw DomainError("independence test needs nonzero functions");
  }
  auto vecs = exponent_vectors(fs);

  std::map<Place, std::size_t> place_column;
  for (const auto& v : vecs) {
    for (const auto& [place, e] : v) place_column.emplace(place, 0);
  }
  std::size_t columns = 0;
  for (auto& [place, c] : place_column) c = columns++;

  std::vector<std::vector<std::pair<BigInt, int>>> prime_exps(fs.size());
  std::map<BigInt, std::size_t> prime_column;
  if (mode == IndependenceMode::kExact) {
    for (std::size_t j = 0; j < fs.size(); ++j) {
      BigRational u = fs[j].unit_part();
      for (auto [pr, e] : factor_constant(u.get_num())) prime_exps[j].emplace_back(pr, e);
      for (auto [pr, e] : factor_constant(u.get_den())) prime_exps[j].emplace_back(pr, -e);
      for (const auto& pe : prime_exps[j]) prime_column.emplace(pe.first, 0);
    }
    for (auto& [pr, c] : prime_column) c = columns++;
  }

  std::vector<std::vector<BigInt>> matrix(fs.size(), std::vector<BigInt>(columns, BigInt(0)));
  for (std::size_t j = 0; j < fs.size(); ++j) {
    for (const auto& [place, e] : vecs[j]) matrix[j][place_column[place]] += e;
    for (const auto& [pr, e] : prime_exps[j]) matrix[j][prime_column[pr]] += e;
  }

  auto kernel = integer_left_kernel(matrix);
  IndependenceResult result;
  if (kernel.empty()) return result;
  result.independent = false;
  result.relation.exponents = kernel.front();
  canonicalize(result.relation.exponents);

  RationalFunction product(1);
  BigRational constant = 1;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const BigInt& a = result.relation.exponents[j];
    if (a == 0) continue;
    if (!a.fits_slong_p()) throw CertificationError("relation exponent out of range");
    product = product * pow(fs[j], a.get_si());
    constant *= rational_pow(fs[j].unit_part(), a.get_si());
  }
  if (!product.is_constant() || product.constant_value() != constant) {
    throw CertificationError("relation does not multiply out to a constant");
  }
  result.constant = constant;
  return result;
}

std::optional<int> is_power_relation(const GmPoint& p, const GmPoint& q, int n_max) {
  if (p.dimension() != q.dimension()) throw DomainError("P and Q have different dimensions");
  if (n_max < 1) return std::nullopt;
  bool any = true;
  std::optional<long> parity;
  std::optional<long> exact;
  for (std::size_t j = 0; j < p.dimension(); ++j) {
    auto c = coordinate_constraint(p.coords()[j], q.coords()[j], n_max);
    switch (c.kind) {
      case ExponentConstraint::kNone: return std::nullopt;
      case ExponentConstraint::kAny: break;
      case ExponentConstraint::kParity:
        if (parity && *parity != c.value) return std::nullopt;
        parity = c.value;
        any = false;
        break;
      case ExponentConstraint::kExact:
        if (exact && *exact != c.value) return std::nullopt;
        exact = c.value;
        any = false;
        break;
    }
  }
  if (exact) {
    if (parity && *exact % 2 != *parity) return std::nullopt;
    return static_cast<int>(*exact);
  }
  if (parity) {
    long n = *parity == 1 ? 1 : 2;
    return n <= n_max ? std::optional<int>(static_cast<int>(n)) : std::nullopt;
  }
  return any ? std::optional<int>(1) : std::nullopt;
}

}  // namespace divseq
