#include "divseq/places.hpp"

#include <algorithm>

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"
#include "divseq/text.hpp"

namespace divseq {

namespace {

constexpr detail::Word kMersenne61 = (detail::Word{1} << 61) - 1;

detail::ModPoly filter_image(const Polynomial& p, detail::Word prime) {
  auto prim = p.to_primitive().second;
  if (prim.empty() || mpz_fdiv_ui(prim.back().get_mpz_t(), prime) == 0) return {};
  return detail::reduce(prim, prime);
}

void check_same_generation(const Divisor& a, const Divisor& b) {
  if (a.generation() != b.generation()) {
    throw GenerationMismatch("divisors belong to registry generations " + std::to_string(a.generation()) +
                             " and " + std::to_string(b.generation()));
  }
}

void check_effective(const Divisor& d) {
  if (!d.effective()) throw DomainError("operation requires an effective divisor");
}

}  // namespace

int Divisor::multiplicity(Place p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

void Divisor::set(Place p, int m) {
  if (m == 0) {
    terms_.erase(p);
  } else {
    terms_[p] = m;
  }
}

bool Divisor::effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

PlaceRegistry::PlaceRegistry() : filter_prime_(kMersenne61) {}

std::uint32_t PlaceRegistry::add_entry(Polynomial poly) {
  Entry e;
  e.image = filter_image(poly, filter_prime_);
  e.poly = std::move(poly);
  entries_.push_back(std::move(e));
  return static_cast<std::uint32_t>(entries_.size() - 1);
}

std::vector<PlaceMultiplicity> PlaceRegistry::refine(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("cannot refine against the zero polynomial");
  if (p.is_constant()) return {};
  return refine_decomposed(squarefree_decomposition(p));
}

std::vector<PlaceMultiplicity> PlaceRegistry::refine_decomposed(
    const std::vector<std::pair<Polynomial, int>>& parts) {
  std::vector<PlaceMultiplicity> pieces;
  for (const auto& [part, mult] : parts) {
    Polynomial rest = part.monic();
    if (rest.is_constant()) continue;
    detail::ModPoly rest_image = filter_image(rest, filter_prime_);
    const std::size_t existing = entries_.size();
    for (std::size_t i = 0; i < existing && !rest.is_constant(); ++i) {
      if (!entries_[i].children.empty()) continue;
      // Cheap coprimality filter: a unit gcd modulo a prime not dividing
      // either leading coefficient certifies a unit gcd over Q.
      if (!rest_image.empty() && !entries_[i].image.empty()) {
        auto g = detail::gcd_mod(entries_[i].image, rest_image, filter_prime_);
        if (g.size() == 1) continue;
      }
      Polynomial g = poly_gcd(entries_[i].poly, rest);
      if (g.is_one()) continue;
      auto idx = static_cast<std::uint32_t>(i);
      if (g == entries_[i].poly) {
        pieces.push_back({Place::finite(idx), mult});
      } else {
        Polynomial other = divide_certified(entries_[i].poly, g);
        std::uint32_t a = add_entry(g);
        std::uint32_t b = add_entry(std::move(other));
        entries_[i].children = {a, b};
        ++generation_;
        pieces.push_back({Place::finite(a), mult});
      }
      rest = divide_certified(rest, g);
      rest_image = filter_image(rest, filter_prime_);
    }
    if (!rest.is_constant()) {
      pieces.push_back({Place::finite(add_entry(std::move(rest))), mult});
    }
  }
  return rebase(pieces);
}

std::vector<Place> PlaceRegistry::live_places() const {
  std::vector<Place> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].children.empty()) out.push_back(Place::finite(static_cast<std::uint32_t>(i)));
  }
  return out;
}

bool PlaceRegistry::is_live(Place p) const {
  if (p.is_infinite()) return true;
  return p.index < entries_.size() && entries_[p.index].children.empty();
}

const Polynomial& PlaceRegistry::polynomial(Place p) const {
  if (p.is_infinite() || p.index >= entries_.size()) throw DomainError("not a finite registry place");
  return entries_[p.index].poly;
}

int PlaceRegistry::degree(Place p) const { return p.is_infinite() ? 1 : polynomial(p).degree(); }

std::string PlaceRegistry::label(Place p) const {
  return p.is_infinite() ? std::string("infinity") : to_string(polynomial(p));
}

void PlaceRegistry::expand(std::uint32_t index, int multiplicity, std::map<Place, int>& out) const {
  if (index >= entries_.size()) throw DomainError("place index outside the registry");
  const Entry& e = entries_[index];
  if (e.children.empty()) {
    out[Place::finite(index)] += multiplicity;
    return;
  }
  for (auto child : e.children) expand(child, multiplicity, out);
}

Divisor PlaceRegistry::rebase(const Divisor& d) const {
  Divisor out(generation_);
  std::map<Place, int> terms;
  for (const auto& [place, m] : d.terms()) {
    if (place.is_infinite()) {
      terms[place] += m;
    } else {
      expand(place.index, m, terms);
    }
  }
  for (const auto& [place, m] : terms) out.set(place, m);
  return out;
}

std::vector<PlaceMultiplicity> PlaceRegistry::rebase(const std::vector<PlaceMultiplicity>& terms) const {
  std::map<Place, int> merged;
  for (const auto& t : terms) {
    if (t.place.is_infinite()) {
      merged[t.place] += t.multiplicity;
    } else {
      expand(t.place.index, t.multiplicity, merged);
    }
  }
  std::vector<PlaceMultiplicity> out;
  for (const auto& [place, m] : merged) {
    if (m != 0) out.push_back({place, m});
  }
  return out;
}

Divisor PlaceRegistry::make_divisor(const std::vector<PlaceMultiplicity>& terms, int infinity) const {
  Divisor d(generation_);
  for (const auto& t : rebase(terms)) d.set(t.place, t.multiplicity);
  if (infinity != 0) d.set(Place::infinity(), infinity);
  return d;
}

int ord_at(const RationalFunction& f, Place place, const PlaceRegistry& registry) {
  if (f.is_zero()) throw DomainError("order of the zero function is infinite");
  if (place.is_infinite()) return ord_infinity(f);
  return ord_finite(f, registry.polynomial(place));
}

Divisor zero_divisor(const RationalFunction& f, PlaceRegistry& registry) {
  if (f.is_zero()) throw DomainError("zero divisor of the zero function is undefined");
  auto terms = registry.refine(f.num());
  return registry.make_divisor(terms, std::max(0, ord_infinity(f)));
}

Divisor divisor_min(const Divisor& a, const Divisor& b) {
  check_same_generation(a, b);
  check_effective(a);
  check_effective(b);
  Divisor out(a.generation());
  for (const auto& [place, m] : a.terms()) out.set(place, std::min(m, b.multiplicity(place)));
  return out;
}

Divisor divisor_sup(const Divisor& a, const Divisor& b) {
  check_same_generation(a, b);
  check_effective(a);
  check_effective(b);
  Divisor out = a;
  for (const auto& [place, m] : b.terms()) out.set(place, std::max(m, a.multiplicity(place)));
  return out;
}

bool divisor_leq(const Divisor& a, const Divisor& b) {
  check_same_generation(a, b);
  for (const auto& [place, m] : a.terms()) {
    if (m > b.multiplicity(place)) return false;
  }
  for (const auto& [place, m] : b.terms()) {
    if (m < 0 && a.multiplicity(place) > m) return false;
  }
  return true;
}

long divisor_degree(const Divisor& d, const PlaceRegistry& registry) {
  long total = 0;
  for (const auto& [place, m] : d.terms()) total += static_cast<long>(m) * registry.degree(place);
  return total;
}

std::vector<Place> divisor_support(const Divisor& d) {
  std::vector<Place> out;
  for (const auto& [place, m] : d.terms()) out.push_back(place);
  return out;
}

Polynomial finite_part_polynomial(const Divisor& d, const PlaceRegistry& registry) {
  check_effective(d);
  Polynomial acc = Polynomial::constant(1);
  for (const auto& [place, m] : d.terms()) {
    if (place.is_infinite()) continue;
    acc *= pow(registry.polynomial(place), static_cast<unsigned long>(m));
  }
  return acc;
}

}  // namespace divseq
