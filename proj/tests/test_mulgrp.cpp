#include <doctest.h>

#include <algorithm>

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"
#include "divseq/mulgrp.hpp"
#include "support.hpp"

using namespace divseq;
using testsupport::P;
using testsupport::R;

namespace {

GmPoint G(std::initializer_list<const char*> coords) {
  std::vector<RationalFunction> fs;
  for (const char* c : coords) fs.push_back(R(c));
  return GmPoint(std::move(fs));
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Monic polynomial of a divisor's finite part, for comparisons that do not
// depend on how the registry happened to cluster the roots.
Polynomial finite(const Divisor& d, const PlaceRegistry& registry) { return finite_part_polynomial(d, registry); }

}  // namespace

TEST_CASE("gm_divisor examples") {
  PlaceRegistry registry;
  CHECK(gm_divisor(G({"t", "1 - t"}), std::nullopt, registry).empty());
  Divisor d = gm_divisor(G({"t^6", "(1 - t)^6"}), std::nullopt, registry);
  CHECK(finite(d, registry) == P("t^2 - t + 1"));
  CHECK(d.terms().size() == 1);
  Divisor e = gm_divisor(G({"t", "1"}), std::nullopt, registry);
  CHECK(finite(e, registry) == P("t - 1"));
  CHECK_THROWS_AS(gm_divisor(G({"t", "2"}), G({"t", "2"}), registry), HypothesisError);
}

TEST_CASE("gm_divisor with a comparison point") {
  PlaceRegistry registry;
  // t / (t^2) - 1 = (1 - t)/t and 4 / 2 - 1 = 1.
  Divisor d = gm_divisor(G({"t", "4"}), G({"t^2", "2"}), registry);
  CHECK(d.empty());
  Divisor e = gm_divisor(G({"t + 1"}), G({"3"}), registry);
  CHECK(finite(e, registry) == P("t - 2"));
}

TEST_CASE("Ailon-Rudnick sequence to n = 12") {
  PlaceRegistry registry;
  auto seq = gm_sequence(G({"t", "1 - t"}), std::nullopt, 12, registry);
  REQUIRE(seq.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    const Divisor& d = seq[static_cast<std::size_t>(n - 1)];
    CHECK(d.generation() == registry.generation());
    // Independent route: subresultant gcd of the two coordinate polynomials.
    Polynomial direct = subresultant_gcd(pow(P("t"), n) - P("1"), pow(P("1 - t"), n) - P("1"));
    CHECK(finite(d, registry) == direct);
    if (n % 6 == 0) {
      CHECK(finite(d, registry) == P("t^2 - t + 1"));
    } else {
      CHECK(d.empty());
    }
  }
}

TEST_CASE("order dichotomy example in dimension one") {
  PlaceRegistry registry;
  auto seq = gm_sequence(G({"1 + (t - 1)^2"}), std::nullopt, 5, registry);
  CHECK(seq[0].terms().size() == 1);
  Place gamma = seq[0].terms().begin()->first;
  CHECK(registry.polynomial(gamma) == P("t - 1"));
  for (const auto& d : seq) CHECK(d.multiplicity(gamma) == 2);
}

TEST_CASE("sequence against a comparison point matches brute-force gcds") {
  PlaceRegistry registry;
  auto seq = gm_sequence(G({"t", "1 - t"}), G({"t + 1", "t - 1"}), 3, registry);
  for (int n = 1; n <= 3; ++n) {
    Polynomial a = pow(P("t"), n) - P("t + 1");
    Polynomial b = pow(P("1 - t"), n) - P("t - 1");
    CHECK(finite(seq[static_cast<std::size_t>(n - 1)], registry) == subresultant_gcd(a, b));
    CHECK(seq[static_cast<std::size_t>(n - 1)].infinity() == 0);
  }
}

TEST_CASE("sequence hypotheses") {
  PlaceRegistry registry;
  CHECK_THROWS_AS(gm_sequence(GmPoint::identity(2), std::nullopt, 3, registry), HypothesisError);
  CHECK_THROWS_AS(gm_sequence(G({"-1", "1"}), std::nullopt, 3, registry), HypothesisError);
  CHECK_THROWS_AS(gm_sequence(G({"t"}), G({"t^3"}), 5, registry), HypothesisError);
  CHECK_NOTHROW(gm_sequence(G({"t"}), G({"t^3"}), 2, registry));
  CHECK_THROWS_AS(gm_sequence(G({"t"}), G({"t", "t"}), 2, registry), HypothesisError);
  CHECK_THROWS_AS(GmPoint({}), DomainError);
  CHECK_THROWS_AS(G({"t", "0"}), DomainError);
  CHECK(G({"-1", "1"}).is_torsion());
  CHECK_FALSE(G({"-1", "2"}).is_torsion());
}

TEST_CASE("sequence is identical across thread counts") {
  PlaceRegistry r1, r4;
  auto a = gm_sequence(G({"t^2 + 1", "t - 2"}), std::nullopt, 24, r1, 1);
  auto b = gm_sequence(G({"t^2 + 1", "t - 2"}), std::nullopt, 24, r4, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].terms().size() == b[i].terms().size());
    CHECK(finite(a[i], r1) == finite(b[i], r4));
    CHECK(a[i].infinity() == b[i].infinity());
  }
}

TEST_CASE("dichotomy and divisibility hold along gm sequences") {
  for (auto coords : {std::vector<const char*>{"t", "1 - t"}, {"t^2", "t + 1"}, {"1 + (t - 1)^2"},
                      {"t^3 - 2", "t^2 + t + 1"}, {"(t + 1)/t", "2*t"}}) {
    std::vector<RationalFunction> fs;
    for (const char* c : coords) fs.push_back(R(c));
    PlaceRegistry registry;
    auto seq = gm_sequence(GmPoint(fs), std::nullopt, 30, registry);
    std::map<Place, std::pair<int, int>> first;  // place -> (n_gamma, m_gamma)
    for (int n = 1; n <= 30; ++n) {
      for (const auto& [place, m] : seq[static_cast<std::size_t>(n - 1)].terms()) first.try_emplace(place, n, m);
    }
    for (const auto& [place, nm] : first) {
      for (int n = 1; n <= 30; ++n) {
        int m = seq[static_cast<std::size_t>(n - 1)].multiplicity(place);
        CHECK((m == 0 || m == nm.second));
        CHECK((m != 0) == (n % nm.first == 0));
      }
    }
  }
}

TEST_CASE("mult_independent examples") {
  auto r = mult_independent({R("t^2"), R("t^3")}, IndependenceMode::kExact);
  CHECK_FALSE(r.independent);
  CHECK(r.relation.exponents == ints({3, -2}));
  CHECK(r.constant == 1);
  CHECK(mult_independent({R("t"), R("1 - t")}, IndependenceMode::kExact).independent);
  CHECK(mult_independent({R("2*t"), R("3*t")}, IndependenceMode::kExact).independent);
  auto m = mult_independent({R("2*t"), R("3*t")}, IndependenceMode::kModuloConstants);
  CHECK_FALSE(m.independent);
  CHECK(m.relation.exponents == ints({1, -1}));
  CHECK(m.constant == BigRational(2, 3));
}

TEST_CASE("exact mode works modulo the sign") {
  auto r = mult_independent({R("-t"), R("t")}, IndependenceMode::kExact);
  CHECK_FALSE(r.independent);
  CHECK(r.relation.exponents == ints({1, -1}));
  CHECK(r.constant == -1);
  auto s = mult_independent({R("4*t^2"), R("(t^2 + 1)/(2*t)"), R("t^2 + 1")}, IndependenceMode::kExact);
  CHECK_FALSE(s.independent);
  CHECK(s.relation.exponents == ints({1, 2, -2}));
  CHECK(s.constant == 1);
}

TEST_CASE("relation soundness, permutation and inversion invariance") {
  std::vector<std::vector<const char*>> cases = {
      {"t^2", "t^3"}, {"(t-1)^2*(t+1)", "(t-1)*(t+1)^2", "(t^2-1)^3"}, {"6*t", "2/t", "3*t^2"},
      {"t", "t + 1", "t*(t+1)"}, {"t", "1 - t", "t^2 + 1"}, {"5", "25*t^0"}};
  for (const auto& c : cases) {
    std::vector<RationalFunction> fs;
    for (const char* s : c) fs.push_back(R(s));
    auto base = mult_independent(fs, IndependenceMode::kExact);
    if (!base.independent) {
      RationalFunction prod(1);
      for (std::size_t j = 0; j < fs.size(); ++j) prod = prod * pow(fs[j], base.relation.exponents[j].get_si());
      CHECK(prod == RationalFunction(base.constant));
      BigInt g = 0;
      for (const auto& a : base.relation.exponents) g = gcd(g, a);
      CHECK(g == 1);
    }
    std::vector<std::size_t> order(fs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::reverse(order.begin(), order.end());
    std::vector<RationalFunction> permuted, inverted = fs;
    for (auto i : order) permuted.push_back(fs[i]);
    inverted[0] = fs[0].inverse();
    auto rp = mult_independent(permuted, IndependenceMode::kExact);
    auto ri = mult_independent(inverted, IndependenceMode::kExact);
    CHECK(rp.independent == base.independent);
    CHECK(ri.independent == base.independent);
    if (!base.independent && fs.size() == 2) {
      // Rank-one kernels: the relation is unique up to sign.
      auto expect = std::vector<BigInt>{base.relation.exponents[1], base.relation.exponents[0]};
      if (expect[0] < 0) expect = {-expect[0], -expect[1]};
      CHECK(rp.relation.exponents == expect);
      auto flipped = std::vector<BigInt>{-base.relation.exponents[0], base.relation.exponents[1]};
      if (flipped[0] < 0) flipped = {-flipped[0], -flipped[1]};
      CHECK(ri.relation.exponents == flipped);
    }
  }
}

TEST_CASE("constants beyond the trial-division bound are rejected") {
  // 1000003 * 1000033 has no factor below 10^6 and exceeds 10^12.
  CHECK_THROWS_AS(mult_independent({R("1000036000099*t"), R("t")}, IndependenceMode::kExact), DomainError);
  CHECK_NOTHROW(mult_independent({R("1000036000099*t"), R("t")}, IndependenceMode::kModuloConstants));
  CHECK_FALSE(mult_independent({R("999983*t"), R("t")}, IndependenceMode::kModuloConstants).independent);
  CHECK(mult_independent({R("999983*t"), R("t")}, IndependenceMode::kExact).independent);
}

TEST_CASE("integer kernel") {
  auto k = integer_left_kernel({ints({2, 4}), ints({3, 6}), ints({1, 1})});
  REQUIRE(k.size() == 1);
  CHECK((k[0] == ints({3, -2, 0}) || k[0] == ints({-3, 2, 0})));
  CHECK(integer_left_kernel({ints({1, 0}), ints({0, 1})}).empty());
  CHECK(integer_left_kernel({ints({0, 0})}).size() == 1);
}

TEST_CASE("is_power_relation examples") {
  CHECK(is_power_relation(G({"t"}), G({"t^5"}), 10) == 5);
  CHECK_FALSE(is_power_relation(G({"t"}), G({"2*t"}), 10));
  CHECK(is_power_relation(G({"t/(t+1)"}), G({"t^2/(t+1)^2"}), 10) == 2);
  CHECK_FALSE(is_power_relation(G({"t"}), G({"t^5"}), 4));
  CHECK(is_power_relation(G({"2", "t"}), G({"8", "t^3"}), 10) == 3);
  CHECK_FALSE(is_power_relation(G({"2", "t"}), G({"4", "t^3"}), 10));
  CHECK(is_power_relation(G({"-1", "t"}), G({"-1", "t^3"}), 10) == 3);
  CHECK_FALSE(is_power_relation(G({"-1", "t"}), G({"1", "t^3"}), 10));
  CHECK(is_power_relation(G({"-1"}), G({"1"}), 10) == 2);
  CHECK(is_power_relation(G({"1/2*t^2"}), G({"1/8*t^6"}), 10) == 3);
}
