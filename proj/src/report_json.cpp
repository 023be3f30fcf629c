#include "divseq/report.hpp"

#include <cstdio>
#include <sstream>

#include "divseq/text.hpp"

namespace divseq {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json int_list(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

}  // namespace

Json divisor_json(const Divisor& d, const PlaceRegistry& registry) {
  Json places = Json::array();
  for (const auto& [place, m] : d.terms()) {
    if (place.is_infinite()) continue;
    places.push_back(Json{{"poly", registry.label(place)}, {"mult", m}});
  }
  return Json{{"places", std::move(places)}, {"infinity", d.infinity()}, {"generation", d.generation()}};
}

Json reduction_tag_json(const ReductionTag& tag, const PlaceRegistry& registry) {
  return Json{{"place", registry.label(tag.place)},
              {"status", to_string(tag.status)},
              {"scaling", tag.scaling},
              {"ord_discriminant", tag.ord_discriminant}};
}

Json sequence_report_json(const SequenceReport& r, const PlaceRegistry& registry) {
  Json table = Json::array();
  for (const auto& rec : r.support_table) {
    table.push_back(Json{{"place", registry.label(rec.place)},
                         {"degree", registry.degree(rec.place)},
                         {"n_gamma", rec.first_n},
                         {"m_gamma", rec.max_multiplicity},
                         {"max_attained_at", rec.max_attained_at},
                         {"dichotomy_ok", rec.dichotomy_ok},
                         {"divisibility_ok", rec.divisibility_ok}});
  }
  Json bad = Json::array();
  for (const auto& tag : r.bad_places) bad.push_back(reduction_tag_json(tag, registry));
  Json out;
  out["horizon"] = r.horizon;
  out["window"] = r.window;
  out["torsion_comparison"] = r.torsion_comparison;
  out["support_table"] = std::move(table);
  out["bound_divisor"] = divisor_json(r.bound_divisor, registry);
  out["exceptional_set"] = int_list(r.exceptional_set);
  out["progression_moduli"] = int_list(r.progression_moduli);
  out["stabilized"] = r.stabilized;
  out["progressions_match"] = r.progressions_match ? Json(*r.progressions_match) : Json(nullptr);
  out["complement_density"] = r.complement_density ? Json(r.complement_density->get_str()) : Json(nullptr);
  out["boundedness_witness"] = r.boundedness_witness;
  out["bad_places"] = std::move(bad);
  return out;
}

Json bound_check_json(const BoundCheck& check, const PlaceRegistry& registry) {
  return Json{{"bound", divisor_json(check.bound, registry)},
              {"first_attained", check.first_attained},
              {"stable_tail", check.stable_tail}};
}

Json certificate_json(const TorsionCertificate& cert) {
  Json out;
  switch (cert.kind) {
    case TorsionCertificate::kNonTorsion:
      out["verdict"] = "nontorsion";
      out["witness_t"] = cert.witness.get_str();
      break;
    case TorsionCertificate::kTorsionOrder:
      out["verdict"] = "torsion";
      out["order"] = cert.order;
      break;
    case TorsionCertificate::kInconclusive: out["verdict"] = "inconclusive"; break;
  }
  Json tried = Json::array();
  for (const auto& c : cert.tried) tried.push_back(c.get_str());
  out["tried"] = std::move(tried);
  return out;
}

Json independence_json(const IndependenceResult& result, IndependenceMode mode) {
  Json out;
  out["mode"] = mode == IndependenceMode::kExact ? "exact" : "modulo_constants";
  out["verdict"] = result.independent ? "independent" : "dependent";
  if (!result.independent) {
    Json rel = Json::array();
    for (const auto& a : result.relation.exponents) {
      if (a.fits_slong_p()) {
        rel.push_back(a.get_si());
      } else {
        rel.push_back(a.get_str());
      }
    }
    out["relation"] = std::move(rel);
    out["constant"] = result.constant.get_str();
  }
  return out;
}

Json int_gcd_json(const IntGcdSummary& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) entries.push_back(Json{{"n", e.n}, {"gcd", e.gcd.get_str()}});
  return Json{{"base_gcd", s.base_gcd.get_str()},
              {"base_gcd_count", s.base_gcd_count},
              {"tail_start", s.tail_start},
              {"tail_max_log_gcd_over_n", format_double(s.tail_max_log_ratio)},
              {"entries", std::move(entries)}};
}

std::string series_csv(const std::vector<Divisor>& seq, const PlaceRegistry& registry) {
  std::ostringstream out;
  out << "n,degree,support_size,equals_D1\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out << i + 1 << ',' << divisor_degree(seq[i], registry) << ',' << seq[i].terms().size() << ','
        << (seq[i] == seq.front() ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string int_gcd_csv(const IntGcdSummary& s) {
  std::ostringstream out;
  out << "n,gcd,log_gcd_over_n\n";
  for (const auto& e : s.entries) out << e.n << ',' << e.gcd.get_str() << ',' << format_double(e.log_gcd_over_n) << '\n';
  return out.str();
}

}  // namespace divseq
