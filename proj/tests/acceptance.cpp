#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "divseq/ellff.hpp"
#include "divseq/gcd.hpp"
#include "divseq/mulgrp.hpp"
#include "divseq/seqlab.hpp"
#include "support.hpp"

using namespace divseq;
using testsupport::P;
using testsupport::R;

namespace {

// Every check records its first failure; a criterion passes when nothing was
// recorded and no exception escaped.
struct Checker {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

bool run_criterion(int number, const char* title, double limit_seconds, const std::function<void(Checker&)>& body) {
  Checker c;
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds <= limit_seconds, "exceeded " + std::to_string(limit_seconds) + " s");
  std::printf("criterion %d %s: %s (%.1f s)%s%s\n", number, title, c.failure.empty() ? "PASS" : "FAIL", seconds,
              c.failure.empty() ? "" : " ", c.failure.c_str());
  std::fflush(stdout);
  return c.failure.empty();
}

Place place_of(const PlaceRegistry& registry, const Polynomial& p) {
  for (Place place : registry.live_places()) {
    if (registry.polynomial(place) == p) return place;
  }
  throw std::runtime_error("no live place " + to_string(p));
}

// Dichotomy and divisibility for every place of a sequence.
void expect_structure(Checker& c, const SequenceReport& r, const std::string& label) {
  for (const auto& rec : r.support_table) {
    c.expect(rec.dichotomy_ok, label + ": dichotomy fails");
    c.expect(rec.divisibility_ok, label + ": divisibility fails");
  }
}

void showcase(Checker& c) {
  const int horizon = 300;
  PlaceRegistry registry;
  GmPoint p({R("t"), R("1 - t")});
  auto seq = gm_sequence(p, std::nullopt, horizon, registry, 4);
  Place gamma = place_of(registry, P("t^2 - t + 1"));
  for (int n = 1; n <= horizon; ++n) {
    const Divisor& d = seq[static_cast<std::size_t>(n - 1)];
    Divisor expected(registry.generation());
    if (n % 6 == 0) expected.set(gamma, 1);
    c.expect(d == expected, "D_n wrong at n = " + std::to_string(n));
  }
  // Independent route for small n: the subresultant gcd of the two
  // numerators of f_j^n - 1.
  for (int n = 1; n <= 12; ++n) {
    Polynomial direct = subresultant_gcd(pow_minus(R("t"), n).num(), pow_minus(R("1 - t"), n).num());
    c.expect(finite_part_polynomial(seq[static_cast<std::size_t>(n - 1)], registry) == direct.monic(),
             "direct gcd differs at n = " + std::to_string(n));
  }
  SequenceReport r = analyze(seq, true);
  c.expect(r.support_table.size() == 1, "support table size");
  if (r.support_table.size() == 1) {
    c.expect(r.support_table[0].first_n == 6, "n_gamma");
    c.expect(r.support_table[0].max_multiplicity == 1, "m_gamma");
  }
  Divisor bound(registry.generation());
  bound.set(gamma, 1);
  c.expect(r.bound_divisor == bound, "bound divisor");
  std::vector<int> sixes;
  for (int n = 6; n <= horizon; n += 6) sixes.push_back(n);
  c.expect(r.exceptional_set == sixes, "exceptional set");
  c.expect(r.progressions_match == true, "progressions");
  expect_structure(c, r, "showcase");
}

void order_dichotomy(Checker& c) {
  const int horizon = 100;
  RationalFunction f = R("1 + (t - 1)^2");
  PlaceRegistry registry;
  auto seq = gm_sequence(GmPoint({f}), std::nullopt, horizon, registry, 4);
  Place gamma = place_of(registry, P("t - 1"));
  for (int n = 1; n <= horizon; ++n) {
    c.expect(seq[static_cast<std::size_t>(n - 1)].multiplicity(gamma) == 2, "ord at t - 1, n = " + std::to_string(n));
    // f^n - 1 = (f - 1) * cofactor with f - 1 = (t - 1)^2 and cofactor(1) = n.
    auto [cofactor, rem] = divmod(pow_minus(f, n).num(), (f - RationalFunction(1)).num());
    c.expect(rem.is_zero() && cofactor.eval(1) == n, "cofactor at t = 1, n = " + std::to_string(n));
  }
  expect_structure(c, analyze(seq, false), "order");
}

void pq_bound(Checker& c) {
  const int horizon = 100;
  GmPoint p({R("t"), R("1 - t")});
  GmPoint q({R("t + 1"), R("t - 1")});
  c.expect(!is_power_relation(p, q, horizon).has_value(), "nP = Q for some n");
  PlaceRegistry registry;
  auto seq = gm_sequence(p, q, horizon, registry, 4);
  BoundCheck b = pq_bound_check(seq);
  c.expect(b.stable_tail, "tail is not stable");
  for (const auto& d : seq) c.expect(divisor_leq(d, b.bound), "entry exceeds the bound");
  expect_structure(c, analyze(seq, false), "pq");
}

void elliptic(Checker& c) {
  EllCurveFF e = EllCurveFF::short_form(R("-t^2"), R("t^2"));
  EllPointFF p = EllPointFF::affine(R("t"), R("t"));
  c.expect(ec_add(e, p, p) == EllPointFF::affine(R("t^2 - 2*t"), R("-t^3 + 3*t^2 - t")), "2P");
  auto multiples = ec_multiples(e, p, 20);
  for (std::size_t i = 0; i < multiples.size(); ++i) {
    c.expect(on_curve(e, multiples[i]), "nP off the curve at n = " + std::to_string(i + 1));
    c.expect(ec_mul(e, static_cast<long>(i + 1), p) == multiples[i], "double-and-add differs");
  }
  PlaceRegistry parity_registry;
  c.expect(parity_violations(e, multiples, parity_registry).empty(), "parity law");

  PlaceRegistry registry;
  auto seq = ec_sequence(e, p, std::nullopt, 50, registry, 4);
  SequenceReport r = analyze(seq.divisors, true);
  expect_structure(c, r, "elliptic");
  for (const auto& rec : r.support_table) {
    ReductionTag tag = reduction_at(e, rec.place, registry);
    c.expect(tag.status != ReductionStatus::kBad, "bad place in the support");
  }
  c.expect(!r.support_table.empty(), "empty support");
}

// y^2 = x^3 - x + 1 over Q, affine points as pairs of rationals.
void nontorsion(Checker& c) {
  EllCurveFF e = EllCurveFF::short_form(R("-t^2"), R("t^2"));
  auto cert = ec_nontorsion_certificate(e, EllPointFF::affine(R("t"), R("t")));
  c.expect(cert.kind == TorsionCertificate::kNonTorsion, "not certified nontorsion");
  c.expect(cert.witness == 1, "witness is not t = 1");

  using Q = BigRational;
  struct Pt {
    bool inf;
    Q x, y;
  };
  auto add = [](const Pt& a, const Pt& b) -> Pt {
    if (a.inf) return b;
    if (b.inf) return a;
    Q lambda;
    if (a.x == b.x) {
      if (a.y + b.y == 0) return {true, 0, 0};
      lambda = (3 * a.x * a.x - 1) / (2 * a.y);
    } else {
      lambda = (b.y - a.y) / (b.x - a.x);
    }
    Q x = lambda * lambda - a.x - b.x;
    return {false, x, lambda * (a.x - x) - a.y};
  };
  Pt base{false, 1, 1};
  Pt acc = base;
  for (int n = 1; n <= 12; ++n) {
    c.expect(!acc.inf, "specialization is torsion");
    c.expect(acc.inf || acc.y * acc.y == acc.x * acc.x * acc.x - acc.x + 1, "specialized multiple off the curve");
    acc = add(acc, base);
  }
}

void independence(Checker& c) {
  auto squares = mult_independent({R("t^2"), R("t^3")}, IndependenceMode::kExact);
  c.expect(!squares.independent, "(t^2, t^3) independent");
  c.expect(squares.relation.exponents == std::vector<BigInt>{3, -2} ||
               squares.relation.exponents == std::vector<BigInt>{-3, 2},
           "relation is not (3, -2)");
  c.expect(mult_independent({R("t"), R("1 - t")}, IndependenceMode::kExact).independent, "(t, 1 - t) dependent");
  c.expect(mult_independent({R("2*t"), R("3*t")}, IndependenceMode::kExact).independent, "(2t, 3t) dependent");
}

void integer_comparator(Checker& c) {
  auto s = int_gcd_sequence(2, 3, 300, 4);
  const long head[] = {1, 1, 1, 5, 1, 7};
  for (int n = 1; n <= 6; ++n) c.expect(s.entries[static_cast<std::size_t>(n - 1)].gcd == head[n - 1], "small gcds");
  c.expect(s.entries[11].gcd == 455, "gcd at n = 12");
  for (int m = 1; m <= 300; ++m) {
    for (int n = 2 * m; n <= 300; n += m) {
      c.expect(mpz_divisible_p(s.entries[static_cast<std::size_t>(n - 1)].gcd.get_mpz_t(),
                               s.entries[static_cast<std::size_t>(m - 1)].gcd.get_mpz_t()) != 0,
               "divisibility " + std::to_string(m) + " | " + std::to_string(n));
    }
  }
  std::printf("  tail max log(gcd)/n over n >= %d: %.6f\n", s.tail_start, s.tail_max_log_ratio);
}

void oracles(Checker& c) {
  std::mt19937_64 rng(2024);
  const auto& pool = testsupport::irreducible_pool();
  std::uniform_int_distribution<int> scale(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RationalFunction> coords;
    std::vector<std::vector<int>> num_e, den_e;
    while (coords.size() < 2) {
      auto en = testsupport::random_exponents(rng, 6);
      auto eb = testsupport::random_exponents(rng, 6);
      int k = scale(rng);
      Polynomial n = testsupport::product_of(en).scaled(k);
      Polynomial b = testsupport::product_of(eb);
      if (k == 0 || (n + b).is_zero()) continue;
      // f = (b + N) / b, so f - 1 = N / b.
      coords.push_back(RationalFunction::fraction(b + n, b));
      num_e.push_back(en);
      den_e.push_back(eb);
    }
    PlaceRegistry registry;
    Divisor d = gm_divisor(GmPoint(coords), std::nullopt, registry);
    std::vector<int> expected(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      expected[i] = std::min(std::max(0, num_e[0][i] - den_e[0][i]), std::max(0, num_e[1][i] - den_e[1][i]));
    }
    int expected_inf = 0;
    for (std::size_t j = 0; j < 2; ++j) {
      int deg_n = testsupport::product_of(num_e[j]).degree();
      int deg_b = testsupport::product_of(den_e[j]).degree();
      int inf = std::max(0, deg_b - deg_n);
      expected_inf = j == 0 ? inf : std::min(expected_inf, inf);
    }
    c.expect(finite_part_polynomial(d, registry) == testsupport::product_of(expected),
             "finite part differs in trial " + std::to_string(trial));
    c.expect(d.infinity() == expected_inf, "infinity differs in trial " + std::to_string(trial));
  }

  std::uniform_int_distribution<int> g_deg(0, 20), f_deg(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial g = testsupport::random_int_poly(rng, g_deg(rng), 1000000);
    Polynomial a = g * testsupport::random_int_poly(rng, std::min(f_deg(rng), 60 - g.degree()), 1000000);
    Polynomial b = g * testsupport::random_int_poly(rng, std::min(f_deg(rng), 60 - g.degree()), 1000000);
    c.expect(poly_gcd(a, b) == subresultant_gcd(a, b), "modular gcd differs in trial " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "torus showcase (t, 1 - t), n <= 300", 60, showcase);
  ok &= run_criterion(2, "order dichotomy for 1 + (t - 1)^2, n <= 100", 60, order_dichotomy);
  ok &= run_criterion(3, "bound for P = (t, 1 - t), Q = (t + 1, t - 1)", 60, pq_bound);
  ok &= run_criterion(4, "elliptic group law and divisor pipeline", 300, elliptic);
  ok &= run_criterion(5, "nontorsion certificate at t = 1", 60, nontorsion);
  ok &= run_criterion(6, "multiplicative independence", 60, independence);
  ok &= run_criterion(7, "integer comparator gcd(2^n - 1, 3^n - 1)", 60, integer_comparator);
  ok &= run_criterion(8, "oracle equivalence suite", 120, oracles);
  return ok ? 0 : 1;
}
