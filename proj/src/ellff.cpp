#include "divseq/ellff.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "divseq/errors.hpp"
#include "divseq/gcd.hpp"
#include "divseq/parallel.hpp"

namespace divseq {

namespace {

constexpr int kMazurBound = 12;
constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

int ord_or_infinite(const RationalFunction& f, Place place, const PlaceRegistry& registry) {
  return f.is_zero() ? kInfiniteOrder : ord_at(f, place, registry);
}

// Coordinates on the short model y^2 = x^3 - 27 c4 x - 54 c6.
RationalFunction short_x(const EllCurveFF& e, const EllPointFF& p) {
  return RationalFunction(36) * p.x() + RationalFunction(3) * e.b2();
}

RationalFunction short_y(const EllCurveFF& e, const EllPointFF& p) {
  return RationalFunction(108) * (RationalFunction(2) * p.y() + e.a1() * p.x() + e.a3());
}

int ceil_div(int a, int b) {
  int q = a / b;
  return (a % b != 0 && ((a > 0) == (b > 0))) ? q + 1 : q;
}

ReductionTag tag_from_orders(Place place, int ord_c4, int ord_c6, int ord_delta) {
  int e = std::numeric_limits<int>::min();
  if (ord_c4 != kInfiniteOrder) e = std::max(e, ceil_div(-ord_c4, 4));
  if (ord_c6 != kInfiniteOrder) e = std::max(e, ceil_div(-ord_c6, 6));
  ReductionTag tag;
  tag.place = place;
  tag.scaling = e;
  tag.ord_discriminant = ord_delta + 12 * e;
  if (tag.ord_discriminant != 0) {
    tag.status = ReductionStatus::kBad;
  } else {
    tag.status = e == 0 ? ReductionStatus::kGood : ReductionStatus::kMinimizedThenGood;
  }
  return tag;
}

// Registry pieces covering every place where the discriminant vanishes or
// where c4, c6 or the discriminant has a pole.
std::vector<PlaceMultiplicity> candidate_pieces(const EllCurveFF& e, PlaceRegistry& registry) {
  std::vector<PlaceMultiplicity> out;
  auto add = [&](const Polynomial& p, bool keep) {
    if (p.is_zero() || p.is_constant()) return;
    auto r = registry.refine(p);
    if (keep) out.insert(out.end(), r.begin(), r.end());
  };
  const auto& d = e.discriminant();
  add(d.num(), true);
  add(d.den(), true);
  for (const auto* f : {&e.c4(), &e.c6()}) {
    add(f->num(), false);
    add(f->den(), true);
  }
  for (auto& piece : out) piece.multiplicity = 1;
  return out;
}

std::set<Place> live_candidates(const std::vector<PlaceMultiplicity>& pieces, const PlaceRegistry& registry) {
  std::set<Place> out;
  for (const auto& t : registry.rebase(pieces)) out.insert(t.place);
  return out;
}

// --- curves over Q, for specializations ---

struct QCurve {
  std::array<BigRational, 5> a;  // a1 a2 a3 a4 a6
};

struct QPoint {
  bool infinity = true;
  BigRational x, y;
  friend bool operator==(const QPoint&, const QPoint&) = default;
};

BigRational q_discriminant(const QCurve& c) {
  const auto& [a1, a2, a3, a4, a6] = c.a;
  BigRational b2 = a1 * a1 + 4 * a2;
  BigRational b4 = 2 * a4 + a1 * a3;
  BigRational b6 = a3 * a3 + 4 * a6;
  BigRational b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

QPoint q_add(const QCurve& c, const QPoint& p, const QPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const auto& [a1, a2, a3, a4, a6] = c.a;
  BigRational lambda, nu;
  if (p.x == q.x) {
    BigRational denom = 2 * p.y + a1 * p.x + a3;
    if (p.y + q.y + a1 * q.x + a3 == 0 || denom == 0) return QPoint{};
    lambda = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / denom;
    nu = (-p.x * p.x * p.x + a4 * p.x + 2 * a6 - a3 * p.y) / denom;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  QPoint r;
  r.infinity = false;
  r.x = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  r.y = -(lambda + a1) * r.x - nu - a3;
  return r;
}

std::optional<QCurve> specialize_curve(const EllCurveFF& e, const BigRational& c) {
  QCurve out;
  const RationalFunction* coeffs[] = {&e.a1(), &e.a2(), &e.a3(), &e.a4(), &e.a6()};
  for (int i = 0; i < 5; ++i) {
    auto v = coeffs[i]->eval(c);
    if (!v) return std::nullopt;
    out.a[static_cast<std::size_t>(i)] = *v;
  }
  if (q_discriminant(out) == 0) return std::nullopt;
  return out;
}

}  // namespace

EllCurveFF::EllCurveFF(RationalFunction a1, RationalFunction a2, RationalFunction a3, RationalFunction a4,
                       RationalFunction a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const auto& [c1, c2, c3, c4v, c6v] = a_;
  using R = RationalFunction;
  b2_ = c1 * c1 + R(4) * c2;
  b4_ = R(2) * c4v + c1 * c3;
  b6_ = c3 * c3 + R(4) * c6v;
  b8_ = c1 * c1 * c6v + R(4) * c2 * c6v - c1 * c3 * c4v + c2 * c3 * c3 - c4v * c4v;
  c4_ = b2_ * b2_ - R(24) * b4_;
  c6_ = -(b2_ * b2_ * b2_) + R(36) * b2_ * b4_ - R(216) * b6_;
  delta_ = -(b2_ * b2_ * b8_) - R(8) * b4_ * b4_ * b4_ - R(27) * b6_ * b6_ + R(9) * b2_ * b4_ * b6_;
  if (delta_.is_zero()) throw HypothesisError("singular_curve", "the Weierstrass model has zero discriminant");
}

EllCurveFF EllCurveFF::short_form(const RationalFunction& a, const RationalFunction& b) {
  return EllCurveFF(0, 0, 0, a, b);
}

EllPointFF EllPointFF::affine(RationalFunction x, RationalFunction y) {
  EllPointFF p;
  p.identity_ = false;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  return p;
}

const RationalFunction& EllPointFF::x() const {
  if (identity_) throw DomainError("the identity has no affine coordinates");
  return x_;
}

const RationalFunction& EllPointFF::y() const {
  if (identity_) throw DomainError("the identity has no affine coordinates");
  return y_;
}

bool on_curve(const EllCurveFF& e, const EllPointFF& p) {
  if (p.is_identity()) return true;
  const auto& x = p.x();
  const auto& y = p.y();
  RationalFunction lhs = y * y + e.a1() * x * y + e.a3() * y;
  RationalFunction rhs = x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
  return lhs == rhs;
}

void require_on_curve(const EllCurveFF& e, const EllPointFF& p) {
  if (!on_curve(e, p)) throw DomainError("point is not on the curve");
}

EllPointFF ec_neg(const EllCurveFF& e, const EllPointFF& p) {
  if (p.is_identity()) return p;
  return EllPointFF::affine(p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

EllPointFF ec_add(const EllCurveFF& e, const EllPointFF& p, const EllPointFF& q) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  const auto& x1 = p.x();
  const auto& y1 = p.y();
  const auto& x2 = q.x();
  const auto& y2 = q.y();
  RationalFunction lambda, nu;
  if (x1 == x2) {
    RationalFunction denom = RationalFunction(2) * y1 + e.a1() * x1 + e.a3();
    if ((y1 + y2 + e.a1() * x2 + e.a3()).is_zero() || denom.is_zero()) return EllPointFF::identity();
    RationalFunction x1sq = x1 * x1;
    lambda = (RationalFunction(3) * x1sq + RationalFunction(2) * e.a2() * x1 + e.a4() - e.a1() * y1) / denom;
    nu = (-(x1sq * x1) + e.a4() * x1 + RationalFunction(2) * e.a6() - e.a3() * y1) / denom;
  } else {
    RationalFunction dx = x2 - x1;
    lambda = (y2 - y1) / dx;
    nu = y1 - lambda * x1;
  }
  RationalFunction x3 = lambda * lambda + e.a1() * lambda - e.a2() - x1 - x2;
  RationalFunction y3 = -((lambda + e.a1()) * x3) - nu - e.a3();
  return EllPointFF::affine(std::move(x3), std::move(y3));
}

EllPointFF ec_mul(const EllCurveFF& e, long n, const EllPointFF& p) {
  if (n < 0) return ec_neg(e, ec_mul(e, -n, p));
  EllPointFF acc;
  EllPointFF base = p;
  auto k = static_cast<unsigned long>(n);
  while (k != 0) {
    if (k & 1UL) acc = ec_add(e, acc, base);
    k >>= 1;
    if (k != 0) base = ec_add(e, base, base);
  }
  return acc;
}

std::vector<EllPointFF> ec_multiples(const EllCurveFF& e, const EllPointFF& p, int n_max) {
  std::vector<EllPointFF> out;
  if (n_max < 1) return out;
  out.reserve(static_cast<std::size_t>(n_max));
  out.push_back(p);
  for (int n = 2; n <= n_max; ++n) out.push_back(ec_add(e, out.back(), p));
  return out;
}

const char* to_string(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::kGood: return "good";
    case ReductionStatus::kBad: return "bad";
    case ReductionStatus::kMinimizedThenGood: return "minimized_then_good";
  }
  return "unknown";
}

ReductionTag reduction_at(const EllCurveFF& e, Place place, const PlaceRegistry& registry) {
  return tag_from_orders(place, ord_or_infinite(e.c4(), place, registry), ord_or_infinite(e.c6(), place, registry),
                         ord_at(e.discriminant(), place, registry));
}

std::vector<ReductionTag> reduction_tags(const EllCurveFF& e, PlaceRegistry& registry) {
  auto pieces = candidate_pieces(e, registry);
  std::vector<ReductionTag> out;
  for (Place place : live_candidates(pieces, registry)) out.push_back(reduction_at(e, place, registry));
  ReductionTag inf = reduction_at(e, Place::infinity(), registry);
  if (inf.status != ReductionStatus::kGood || inf.scaling != 0) out.push_back(inf);
  return out;
}

EcSequence ec_section_sequence(const EllCurveFF& e, const std::vector<EllPointFF>& points, PlaceRegistry& registry,
                               unsigned threads) {
  for (const auto& p : points) {
    if (p.is_identity()) throw DomainError("the section divisor of the identity is undefined");
  }
  auto candidates = candidate_pieces(e, registry);
  bool need_numerators = reduction_at(e, Place::infinity(), registry).scaling < 0;
  for (Place place : live_candidates(candidates, registry)) {
    need_numerators |= reduction_at(e, place, registry).scaling < 0;
  }

  struct Work {
    RationalFunction xs;
    std::vector<std::pair<Polynomial, int>> den_parts, num_parts;
  };
  std::vector<Work> work(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    work[i].xs = short_x(e, points[i]);
    const auto& xs = work[i].xs;
    if (!xs.den().is_constant()) work[i].den_parts = squarefree_decomposition(xs.den());
    if (need_numerators && !xs.num().is_zero() && !xs.num().is_constant()) {
      work[i].num_parts = squarefree_decomposition(xs.num());
    }
  });
  std::vector<std::vector<PlaceMultiplicity>> den_pieces(points.size()), num_pieces(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    den_pieces[i] = registry.refine_decomposed(work[i].den_parts);
    num_pieces[i] = registry.refine_decomposed(work[i].num_parts);
  }

  const std::set<Place> special = live_candidates(candidates, registry);
  std::map<Place, ReductionTag> tags;
  for (Place place : special) tags.emplace(place, reduction_at(e, place, registry));
  const ReductionTag inf_tag = reduction_at(e, Place::infinity(), registry);
  auto tag_of = [&](Place place) {
    if (place.is_infinite()) return inf_tag;
    auto it = tags.find(place);
    return it != tags.end() ? it->second : ReductionTag{place, ReductionStatus::kGood, 0, 0};
  };

  EcSequence out;
  for (const auto& [place, tag] : tags) out.tags.push_back(tag);
  if (inf_tag.status != ReductionStatus::kGood || inf_tag.scaling != 0) out.tags.push_back(inf_tag);

  for (std::size_t i = 0; i < points.size(); ++i) {
    std::map<Place, int> ord_x;
    for (const auto& t : registry.rebase(den_pieces[i])) ord_x[t.place] -= t.multiplicity;
    for (const auto& t : registry.rebase(num_pieces[i])) ord_x[t.place] += t.multiplicity;
    for (const auto& [place, tag] : tags) {
      if (tag.scaling < 0) ord_x.emplace(place, 0);
    }
    ord_x[Place::infinity()] = work[i].xs.is_zero() ? kInfiniteOrder : ord_infinity(work[i].xs);

    Divisor d(registry.generation());
    for (const auto& [place, ord] : ord_x) {
      if (ord == kInfiniteOrder) continue;
      ReductionTag tag = tag_of(place);
      if (tag.status == ReductionStatus::kBad) continue;
      const int scaled = ord + 2 * tag.scaling;
      if (scaled >= 0) continue;
      if (scaled % 2 != 0) {
        throw CertificationError("odd pole order of x at a place of good reduction: " + registry.label(place));
      }
      d.set(place, -scaled / 2);
    }
    out.divisors.push_back(std::move(d));
  }
  return out;
}

SectionDivisor ec_section_divisor(const EllCurveFF& e, const EllPointFF& p, PlaceRegistry& registry) {
  auto seq = ec_section_sequence(e, {p}, registry);
  return {std::move(seq.divisors.front()), std::move(seq.tags)};
}

EcSequence ec_sequence(const EllCurveFF& e, const EllPointFF& p, const std::optional<EllPointFF>& q, int n_max,
                       PlaceRegistry& registry, unsigned threads) {
  if (n_max < 1) throw DomainError("sequence horizon must be positive");
  if (p.is_identity()) throw HypothesisError("identity_base_point", "P is the identity");
  require_on_curve(e, p);
  if (q) require_on_curve(e, *q);
  auto cert = ec_nontorsion_certificate(e, p);
  if (cert.kind == TorsionCertificate::kTorsionOrder) {
    throw HypothesisError("torsion_base_point", "P is torsion of order " + std::to_string(cert.order));
  }
  if (cert.kind == TorsionCertificate::kInconclusive) {
    throw HypothesisError("torsion_unresolved", "could not certify that P has infinite order");
  }
  auto multiples = ec_multiples(e, p, n_max);
  if (q && !q->is_identity()) {
    EllPointFF minus_q = ec_neg(e, *q);
    for (std::size_t i = 0; i < multiples.size(); ++i) {
      if (multiples[i] == *q) throw HypothesisError("np_equals_q", "nP = Q for n = " + std::to_string(i + 1));
      multiples[i] = ec_add(e, multiples[i], minus_q);
    }
  }
  return ec_section_sequence(e, multiples, registry, threads);
}

TorsionCertificate ec_nontorsion_certificate(const EllCurveFF& e, const EllPointFF& p, int trials) {
  if (p.is_identity()) throw DomainError("the identity is torsion");
  TorsionCertificate cert;
  std::vector<BigRational> fixed = {1, 2, 3, -1, 5};
  std::mt19937_64 rng(current_seed());
  std::uniform_int_distribution<long> dist(-10000, 10000);
  std::set<BigRational> seen;
  bool any_good = false;
  for (int k = 0; k < trials; ++k) {
    BigRational c;
    if (static_cast<std::size_t>(k) < fixed.size()) {
      c = fixed[static_cast<std::size_t>(k)];
    } else {
      do {
        c = dist(rng);
      } while (seen.count(c) != 0);
    }
    seen.insert(c);
    cert.tried.push_back(c);
    auto curve = specialize_curve(e, c);
    if (!curve) continue;
    auto x = p.x().eval(c);
    auto y = p.y().eval(c);
    if (!x || !y) continue;
    any_good = true;
    QPoint base{false, *x, *y};
    QPoint acc = base;
    bool finite = false;
    for (int n = 1; n <= kMazurBound; ++n) {
      if (acc.infinity) {
        finite = true;
        break;
      }
      acc = q_add(*curve, acc, base);
    }
    if (!finite) {
      cert.kind = TorsionCertificate::kNonTorsion;
      cert.witness = c;
      return cert;
    }
  }
  if (!any_good) throw DomainError("no specialization with good reduction among the candidates");
  EllPointFF acc = p;
  for (int n = 1; n <= kMazurBound; ++n) {
    if (acc.is_identity()) {
      cert.kind = TorsionCertificate::kTorsionOrder;
      cert.order = n;
      return cert;
    }
    acc = ec_add(e, acc, p);
  }
  cert.kind = TorsionCertificate::kInconclusive;
  return cert;
}

std::vector<std::pair<int, Place>> parity_violations(const EllCurveFF& e, const std::vector<EllPointFF>& points,
                                                     PlaceRegistry& registry) {
  candidate_pieces(e, registry);
  std::vector<RationalFunction> xs, ys;
  std::vector<std::vector<PlaceMultiplicity>> pieces;
  for (const auto& p : points) {
    if (p.is_identity()) {
      xs.emplace_back();
      ys.emplace_back();
      pieces.emplace_back();
      continue;
    }
    xs.push_back(short_x(e, p));
    ys.push_back(short_y(e, p));
    pieces.push_back(xs.back().den().is_constant() ? std::vector<PlaceMultiplicity>{}
                                                   : registry.refine(xs.back().den()));
    if (!ys.back().is_zero() && !ys.back().den().is_constant()) registry.refine(ys.back().den());
  }
  std::vector<std::pair<int, Place>> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].is_identity()) continue;
    std::vector<Place> places;
    for (const auto& t : registry.rebase(pieces[i])) places.push_back(t.place);
    places.push_back(Place::infinity());
    for (Place place : places) {
      ReductionTag tag = reduction_at(e, place, registry);
      if (tag.status == ReductionStatus::kBad) continue;
      const int ox = (place.is_infinite() ? ord_infinity(xs[i]) : -ord_polynomial(xs[i].den(), registry.polynomial(place))) +
                     2 * tag.scaling;
      if (ox >= 0) continue;
      int oy;
      if (ys[i].is_zero()) {
        oy = kInfiniteOrder;
      } else if (place.is_infinite()) {
        oy = ord_infinity(ys[i]);
      } else {
        oy = -ord_polynomial(ys[i].den(), registry.polynomial(place));
      }
      if (oy != kInfiniteOrder) oy += 3 * tag.scaling;
      if (ox % 2 != 0 || oy == kInfiniteOrder || 2 * oy != 3 * ox) out.emplace_back(static_cast<int>(i) + 1, place);
    }
  }
  return out;
}

}  // namespace divseq
