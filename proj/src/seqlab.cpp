#include "divseq/seqlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "divseq/errors.hpp"
#include "divseq/mulgrp.hpp"
#include "divseq/parallel.hpp"

namespace divseq {

namespace {

constexpr std::size_t kMaxDensityModuli = 20;

void check_sequence(const std::vector<Divisor>& seq) {
  if (seq.empty()) throw DomainError("cannot analyze an empty sequence");
  for (const auto& d : seq) {
    if (d.generation() != seq.front().generation()) {
      throw GenerationMismatch("sequence entries belong to different registry generations");
    }
  }
}

int resolve_window(int horizon, std::optional<int> window) {
  if (window && *window < 0) throw DomainError("stabilization window must be nonnegative");
  return window ? *window : default_window(horizon);
}

// Moduli not divisible by a smaller modulus in the list.
std::vector<long> minimal_moduli(const std::vector<int>& moduli) {
  std::vector<long> out;
  for (int m : moduli) {
    if (std::none_of(out.begin(), out.end(), [&](long k) { return m % k == 0; })) out.push_back(m);
  }
  return out;
}

// Density of integers divisible by none of the moduli.
BigRational complement_density(const std::vector<long>& moduli) {
  BigRational covered = 0;
  const std::size_t k = moduli.size();
  for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
    BigInt l = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1UL) l = lcm(l, BigInt(moduli[i]));
    }
    BigRational term(BigInt(1), l);
    if (__builtin_popcountl(mask) % 2 == 1) {
      covered += term;
    } else {
      covered -= term;
    }
  }
  return 1 - covered;
}

}  // namespace

int default_window(int horizon) { return std::max(20, horizon / 4); }

SequenceReport analyze(const std::vector<Divisor>& seq, bool torsion_comparison, std::optional<int> window) {
  check_sequence(seq);
  SequenceReport r;
  r.horizon = static_cast<int>(seq.size());
  r.window = resolve_window(r.horizon, window);
  r.torsion_comparison = torsion_comparison;

  std::map<Place, PlaceRecord> records;
  r.bound_divisor = Divisor(seq.front().generation());
  for (int n = 1; n <= r.horizon; ++n) {
    const Divisor& d = seq[static_cast<std::size_t>(n - 1)];
    for (const auto& [place, m] : d.terms()) {
      if (m < 0) throw DomainError("sequence entries must be effective");
      auto [it, fresh] = records.try_emplace(place);
      PlaceRecord& rec = it->second;
      if (fresh) {
        rec.place = place;
        rec.first_n = n;
        rec.max_multiplicity = m;
        rec.max_attained_at = n;
      } else if (m > rec.max_multiplicity) {
        rec.max_multiplicity = m;
        rec.max_attained_at = n;
      }
    }
    if (d != seq.front()) r.exceptional_set.push_back(n);
  }

  const Divisor& first = seq.front();
  for (auto& [place, rec] : records) {
    for (int n = 1; n <= r.horizon; ++n) {
      int m = seq[static_cast<std::size_t>(n - 1)].multiplicity(place);
      if (m != 0 && m != rec.max_multiplicity) rec.dichotomy_ok = false;
      if ((m != 0) != (n % rec.first_n == 0)) rec.divisibility_ok = false;
    }
    r.bound_divisor.set(place, rec.max_multiplicity);
    if (rec.first_n > r.horizon - r.window) r.stabilized = false;
    if (2 * rec.max_attained_at > r.horizon && rec.max_attained_at > 1) r.boundedness_witness = false;
    if (first.multiplicity(place) == 0) r.progression_moduli.push_back(rec.first_n);
    r.support_table.push_back(rec);
  }
  std::sort(r.progression_moduli.begin(), r.progression_moduli.end());
  r.progression_moduli.erase(std::unique(r.progression_moduli.begin(), r.progression_moduli.end()),
                             r.progression_moduli.end());

  auto minimal = minimal_moduli(r.progression_moduli);
  if (minimal.size() <= kMaxDensityModuli) r.complement_density = complement_density(minimal);

  if (torsion_comparison) {
    std::vector<int> predicted;
    for (int n = 1; n <= r.horizon; ++n) {
      if (std::any_of(minimal.begin(), minimal.end(), [&](long m) { return n % m == 0; })) predicted.push_back(n);
    }
    r.progressions_match = predicted == r.exceptional_set;
  }
  return r;
}

BoundCheck pq_bound_check(const std::vector<Divisor>& seq, std::optional<int> window) {
  check_sequence(seq);
  const int horizon = static_cast<int>(seq.size());
  const int w = resolve_window(horizon, window);
  BoundCheck out;
  out.bound = Divisor(seq.front().generation());
  for (const auto& d : seq) out.bound = divisor_sup(out.bound, d);
  out.first_attained = 1;
  for (const auto& [place, m] : out.bound.terms()) {
    for (int n = 1; n <= horizon; ++n) {
      if (seq[static_cast<std::size_t>(n - 1)].multiplicity(place) == m) {
        out.first_attained = std::max(out.first_attained, n);
        break;
      }
    }
  }
  out.stable_tail = out.first_attained == 1 || out.first_attained <= horizon - w;
  return out;
}

EcSequence mixed_sequence(const EllCurveFF& e, const EllPointFF& qe, const RationalFunction& f, int n_max,
                          PlaceRegistry& registry, unsigned threads) {
  if (f.is_zero()) throw HypothesisError("zero_coordinate", "f must be nonzero");
  if (f.is_constant() && (f.constant_value() == 1 || f.constant_value() == -1)) {
    throw HypothesisError("torsion_base_point", "f is a root of unity");
  }
  EcSequence ec = ec_sequence(e, qe, std::nullopt, n_max, registry, threads);
  auto gm = gm_sequence(GmPoint({f}), std::nullopt, n_max, registry, threads);
  EcSequence out;
  for (std::size_t i = 0; i < gm.size(); ++i) {
    out.divisors.push_back(divisor_min(registry.rebase(ec.divisors[i]), gm[i]));
  }
  out.tags = reduction_tags(e, registry);
  return out;
}

IntGcdSummary int_gcd_sequence(const BigInt& a, const BigInt& b, int n_max, unsigned threads) {
  if (a < 2 || b < 2 || a == b) throw DomainError("integer comparator needs a, b >= 2 with a != b");
  if (n_max < 1) throw DomainError("sequence horizon must be positive");
  IntGcdSummary out;
  out.entries.resize(static_cast<std::size_t>(n_max));
  parallel_for(out.entries.size(), threads, [&](std::size_t i) {
    const auto n = static_cast<unsigned long>(i + 1);
    BigInt an, bn, g;
    mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), n);
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
    an -= 1;
    bn -= 1;
    mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, g.get_mpz_t());
    double log_g = std::log(mant) + static_cast<double>(exp) * std::log(2.0);
    out.entries[i] = {static_cast<int>(n), g, log_g / static_cast<double>(n)};
  });
  out.base_gcd = gcd(BigInt(a - 1), BigInt(b - 1));
  out.tail_start = std::max(1, n_max / 2);
  for (const auto& e : out.entries) {
    if (e.gcd == out.base_gcd) ++out.base_gcd_count;
    if (e.n >= out.tail_start) out.tail_max_log_ratio = std::max(out.tail_max_log_ratio, e.log_gcd_over_n);
  }
  return out;
}

}  // namespace divseq
