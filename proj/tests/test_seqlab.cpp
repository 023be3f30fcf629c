#include <doctest.h>

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"
#include "divseq/mulgrp.hpp"
#include "divseq/seqlab.hpp"
#include "support.hpp"

using namespace divseq;
using testsupport::P;
using testsupport::R;

namespace {

Place place_of(const PlaceRegistry& registry, const Polynomial& p) {
  for (Place place : registry.live_places()) {
    if (registry.polynomial(place) == p) return place;
  }
  FAIL("no live place for " << to_string(p));
  return Place::infinity();
}

std::vector<int> primes_up_to(int n) {
  std::vector<int> out;
  for (int k = 2; k <= n; ++k) {
    bool prime = true;
    for (int d = 2; d * d <= k; ++d) prime = prime && k % d != 0;
    if (prime) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("default window") {
  CHECK(default_window(10) == 20);
  CHECK(default_window(80) == 20);
  CHECK(default_window(300) == 75);
}

TEST_CASE("analyze the torus sequence of (t, 1 - t)") {
  PlaceRegistry registry;
  auto seq = gm_sequence(GmPoint({R("t"), R("1 - t")}), std::nullopt, 60, registry);
  SequenceReport r = analyze(seq, true);
  CHECK(r.horizon == 60);
  CHECK(r.window == 20);
  REQUIRE(r.support_table.size() == 1);
  const PlaceRecord& rec = r.support_table.front();
  CHECK(registry.polynomial(rec.place) == P("t^2 - t + 1"));
  CHECK(rec.first_n == 6);
  CHECK(rec.max_multiplicity == 1);
  CHECK(rec.max_attained_at == 6);
  CHECK(rec.dichotomy_ok);
  CHECK(rec.divisibility_ok);
  std::vector<int> multiples;
  for (int n = 6; n <= 60; n += 6) multiples.push_back(n);
  CHECK(r.exceptional_set == multiples);
  CHECK(r.progression_moduli == std::vector<int>{6});
  CHECK(r.stabilized);
  CHECK(r.progressions_match == true);
  CHECK(r.complement_density == BigRational(5, 6));
  CHECK(r.boundedness_witness);

  BoundCheck b = pq_bound_check(seq);
  CHECK(b.bound == r.bound_divisor);
  CHECK(b.first_attained == 6);
  CHECK(b.stable_tail);
}

TEST_CASE("analyze a sequence of empty divisors") {
  std::vector<Divisor> seq(30, Divisor(0));
  SequenceReport r = analyze(seq, false);
  CHECK(r.support_table.empty());
  CHECK(r.exceptional_set.empty());
  CHECK(r.bound_divisor.empty());
  CHECK(r.stabilized);
  CHECK_FALSE(r.progressions_match.has_value());
  CHECK(r.complement_density == BigRational(1));
  BoundCheck b = pq_bound_check(seq);
  CHECK(b.bound.empty());
  CHECK(b.first_attained == 1);
  CHECK(b.stable_tail);
  CHECK_THROWS_AS(analyze({}, false), DomainError);
}

TEST_CASE("a non-torsion comparison never stabilizes") {
  // f = 1 + (t - 1)^2: each cyclotomic value of f contributes a new place.
  PlaceRegistry registry;
  auto seq = gm_sequence(GmPoint({R("1 + (t - 1)^2")}), std::nullopt, 40, registry);
  SequenceReport r = analyze(seq, false);
  std::vector<int> all;
  for (int n = 2; n <= 40; ++n) all.push_back(n);
  CHECK(r.exceptional_set == all);
  CHECK(r.progression_moduli == all);
  CHECK_FALSE(r.stabilized);
  CHECK(r.bound_divisor.multiplicity(place_of(registry, P("t - 1"))) == 2);
  for (const auto& rec : r.support_table) {
    CHECK(rec.dichotomy_ok);
    CHECK(rec.divisibility_ok);
  }
  // Minimal moduli are the primes up to 40, so the complement density is a
  // product over them.
  BigRational expected = 1;
  for (int p : primes_up_to(40)) expected *= BigRational(p - 1, p);
  REQUIRE(r.complement_density.has_value());
  CHECK(*r.complement_density == expected);
}

TEST_CASE("complement density by inclusion-exclusion") {
  PlaceRegistry registry;
  for (const char* q : {"t", "t - 1", "t - 2"}) registry.refine(P(q));
  Place a = place_of(registry, P("t")), b = place_of(registry, P("t - 1")), c = place_of(registry, P("t - 2"));
  auto build = [&](const std::vector<std::pair<Place, int>>& moduli, int horizon) {
    std::vector<Divisor> seq;
    for (int n = 1; n <= horizon; ++n) {
      Divisor d(registry.generation());
      for (auto [place, m] : moduli) {
        if (n % m == 0) d.set(place, 1);
      }
      seq.push_back(d);
    }
    return seq;
  };
  CHECK(analyze(build({{a, 2}, {b, 4}}, 40), true).complement_density == BigRational(1, 2));
  CHECK(analyze(build({{a, 2}, {b, 3}}, 40), true).complement_density == BigRational(1, 3));
  CHECK(analyze(build({{a, 4}, {b, 6}, {c, 9}}, 40), true).complement_density ==
        BigRational(1) - BigRational(1, 4) - BigRational(1, 6) - BigRational(1, 9) + BigRational(1, 12) +
            BigRational(1, 36) + BigRational(1, 18) - BigRational(1, 36));
  // A progression with a late start is not stable inside the window.
  auto late = analyze(build({{a, 35}}, 40), true);
  CHECK_FALSE(late.stabilized);
  CHECK(late.progressions_match == true);
}

TEST_CASE("bound check on synthetic sequences") {
  PlaceRegistry registry;
  registry.refine(P("t"));
  registry.refine(P("t - 1"));
  Place a = place_of(registry, P("t")), b = place_of(registry, P("t - 1"));
  std::vector<Divisor> constant(25, Divisor(registry.generation()));
  for (auto& d : constant) d.set(a, 2);
  BoundCheck c = pq_bound_check(constant);
  CHECK(c.bound == constant.front());
  CHECK(c.first_attained == 1);
  CHECK(c.stable_tail);

  std::vector<Divisor> growing;
  for (int n = 1; n <= 40; ++n) {
    Divisor d(registry.generation());
    d.set(b, n);
    growing.push_back(d);
  }
  BoundCheck g = pq_bound_check(growing);
  CHECK(g.bound.multiplicity(b) == 40);
  CHECK(g.first_attained == 40);
  CHECK_FALSE(g.stable_tail);
  CHECK_FALSE(analyze(growing, false).boundedness_witness);
  CHECK_FALSE(analyze(growing, false).support_table.front().dichotomy_ok);
  CHECK(pq_bound_check(growing, 0).stable_tail);
}

TEST_CASE("mixed sequence agrees with polynomial gcds") {
  EllCurveFF e = EllCurveFF::short_form(R("-t^2"), R("t^2"));
  EllPointFF p = EllPointFF::affine(R("t"), R("t"));
  RationalFunction f = R("t - 2");
  PlaceRegistry registry;
  auto mixed = mixed_sequence(e, p, f, 10, registry);
  PlaceRegistry other;
  auto ec = ec_sequence(e, p, std::nullopt, 10, other);
  REQUIRE(mixed.divisors.size() == 10);
  for (int n = 1; n <= 10; ++n) {
    const auto& d = mixed.divisors[static_cast<std::size_t>(n - 1)];
    CHECK(d.generation() == registry.generation());
    CHECK(d.infinity() == 0);
    Polynomial expected =
        poly_gcd(finite_part_polynomial(ec.divisors[static_cast<std::size_t>(n - 1)], other), pow_minus(f, n).num());
    CHECK(finite_part_polynomial(d, registry) == expected);
  }
  CHECK(finite_part_polynomial(mixed.divisors[2], registry) == P("t - 3"));
  CHECK_THROWS_AS(mixed_sequence(e, p, R("1"), 5, registry), HypothesisError);
  CHECK_THROWS_AS(mixed_sequence(e, p, R("-1"), 5, registry), HypothesisError);
  CHECK_THROWS_AS(mixed_sequence(e, p, R("0"), 5, registry), HypothesisError);
}

TEST_CASE("integer gcd comparator") {
  auto s = int_gcd_sequence(2, 3, 12);
  std::vector<long> head;
  for (int n = 1; n <= 6; ++n) head.push_back(s.entries[static_cast<std::size_t>(n - 1)].gcd.get_si());
  CHECK(head == std::vector<long>{1, 1, 1, 5, 1, 7});
  CHECK(s.entries[11].gcd == 455);
  CHECK(s.base_gcd == 1);
  CHECK(s.tail_start == 6);
  CHECK(s.entries[11].log_gcd_over_n == doctest::Approx(std::log(455.0) / 12));
  CHECK_THROWS_AS(int_gcd_sequence(3, 3, 5), DomainError);
  CHECK_THROWS_AS(int_gcd_sequence(1, 3, 5), DomainError);
}

TEST_CASE("integer gcds respect divisibility") {
  auto s = int_gcd_sequence(6, 10, 120, 4);
  for (int m = 1; m <= 120; ++m) {
    for (int n = m; n <= 120; n += m) {
      CHECK(mpz_divisible_p(s.entries[static_cast<std::size_t>(n - 1)].gcd.get_mpz_t(),
                            s.entries[static_cast<std::size_t>(m - 1)].gcd.get_mpz_t()) != 0);
    }
  }
  CHECK(s.base_gcd == 1);
  auto serial = int_gcd_sequence(6, 10, 120, 1);
  for (std::size_t i = 0; i < s.entries.size(); ++i) CHECK(s.entries[i].gcd == serial.entries[i].gcd);
}
