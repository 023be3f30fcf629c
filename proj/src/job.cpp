#include "divseq/job.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "divseq/ellff.hpp"
#include "divseq/errors.hpp"
#include "divseq/seqlab.hpp"
#include "divseq/text.hpp"

namespace divseq {

namespace {

struct RawValue {
  bool is_list = false;
  std::vector<TextField> items;
  int line = 0;
  int column = 0;
};

[[noreturn]] void fail(const std::string& what, int line, int column) {
  throw ParseError(what + " at line " + std::to_string(line) + ", column " + std::to_string(column), line, column);
}

class LineLexer {
 public:
  LineLexer(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  TextField item() {
    skip_space();
    TextField f;
    f.line = line_;
    if (peek() == '"') {
      ++pos_;
      f.column = column();
      auto end = text_.find('"', pos_);
      if (end == std::string_view::npos) fail("unterminated string", line_, f.column - 1);
      f.text = std::string(text_.substr(pos_, end - pos_));
      pos_ = end + 1;
      return f;
    }
    f.column = column();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '[') ++pos_;
    std::string_view raw = text_.substr(start, pos_ - start);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    if (raw.empty()) fail("expected a value", line_, f.column);
    f.text = std::string(raw);
    return f;
  }

  RawValue value() {
    skip_space();
    RawValue v;
    v.line = line_;
    v.column = column();
    if (peek() != '[') {
      v.items.push_back(item());
      return v;
    }
    v.is_list = true;
    ++pos_;
    skip_space();
    if (peek() == ']') {
      ++pos_;
      return v;
    }
    for (;;) {
      v.items.push_back(item());
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']'", line_, column());
    }
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

const TextField& scalar(const std::string& key, const RawValue& v) {
  if (v.is_list || v.items.size() != 1) fail("key '" + key + "' expects a single value", v.line, v.column);
  return v.items.front();
}

template <class Int>
Int integer(const std::string& key, const RawValue& v, Int min_value) {
  const TextField& f = scalar(key, v);
  Int out{};
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), out);
  if (ec != std::errc() || ptr != f.text.data() + f.text.size() || out < min_value) {
    fail("key '" + key + "' expects an integer >= " + std::to_string(min_value), f.line, f.column);
  }
  return out;
}

BigInt big_integer(const std::string& key, const RawValue& v) {
  const TextField& f = scalar(key, v);
  BigInt out;
  if (f.text.empty() || out.set_str(f.text, 10) != 0) fail("key '" + key + "' expects an integer", f.line, f.column);
  return out;
}

RationalFunction parse_field(const TextField& f) { return parse_rational_function(f.text, f.line, f.column - 1); }

std::vector<RationalFunction> parse_fields(const std::vector<TextField>& fs) {
  std::vector<RationalFunction> out;
  for (const auto& f : fs) out.push_back(parse_field(f));
  return out;
}

[[noreturn]] void missing(const std::string& key, JobGroup g) {
  throw ParseError("job of group '" + std::string(to_string(g)) + "' requires key '" + key + "'", 0, 0);
}

void require_count(const std::string& key, const std::vector<TextField>& v, std::size_t n, JobGroup g) {
  if (v.empty()) missing(key, g);
  if (v.size() != n) {
    fail("key '" + key + "' expects " + std::to_string(n) + " entries", v.front().line, v.front().column);
  }
}

Json text_list(const std::vector<RationalFunction>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

Json divisor_list(const std::vector<Divisor>& seq, const PlaceRegistry& registry) {
  Json out = Json::array();
  for (const auto& d : seq) out.push_back(divisor_json(d, registry));
  return out;
}

EllCurveFF curve_of(const JobSpec& spec) {
  require_count("a_invariants", spec.a_invariants, 5, spec.group);
  auto a = parse_fields(spec.a_invariants);
  return EllCurveFF(a[0], a[1], a[2], a[3], a[4]);
}

EllPointFF point_of(const std::vector<TextField>& fields) {
  auto c = parse_fields(fields);
  return EllPointFF::affine(c[0], c[1]);
}

Json header(const JobSpec& spec) {
  Json out;
  out["group"] = to_string(spec.group);
  out["nmax"] = spec.nmax;
  out["seed"] = spec.seed;
  return out;
}

Json sequence_section(const std::vector<Divisor>& seq, const std::vector<ReductionTag>& tags, bool torsion_comparison,
                      const JobSpec& spec, const PlaceRegistry& registry) {
  SequenceReport report = analyze(seq, torsion_comparison, spec.window);
  for (const auto& tag : tags) {
    if (tag.status != ReductionStatus::kGood) report.bad_places.push_back(tag);
  }
  return sequence_report_json(report, registry);
}

JobOutput run_gm(const JobSpec& spec) {
  if (spec.coords.empty()) missing("coords", spec.group);
  GmPoint p(parse_fields(spec.coords));
  std::optional<GmPoint> q;
  if (!spec.q_coords.empty()) q = GmPoint(parse_fields(spec.q_coords));
  PlaceRegistry registry;
  auto seq = gm_sequence(p, q, spec.nmax, registry, spec.threads);

  Json out = header(spec);
  out["input"] = Json{{"coords", text_list(p.coords())}, {"q_coords", q ? text_list(q->coords()) : Json(nullptr)}};
  out["independence_mod_constants"] =
      independence_json(mult_independent(p.coords(), IndependenceMode::kModuloConstants),
                        IndependenceMode::kModuloConstants);
  out["report"] = sequence_section(seq, {}, !q, spec, registry);
  out["pq_bound"] = q ? bound_check_json(pq_bound_check(seq, spec.window), registry) : Json(nullptr);
  out["sequence"] = divisor_list(seq, registry);
  out["registry_generation"] = registry.generation();
  return {std::move(out), series_csv(seq, registry)};
}

JobOutput run_ec(const JobSpec& spec) {
  EllCurveFF e = curve_of(spec);
  require_count("point", spec.point, 2, spec.group);
  EllPointFF p = point_of(spec.point);
  require_on_curve(e, p);
  std::optional<EllPointFF> q;
  if (!spec.q_point.empty()) {
    require_count("q_point", spec.q_point, 2, spec.group);
    q = point_of(spec.q_point);
  }
  auto cert = ec_nontorsion_certificate(e, p);
  PlaceRegistry registry;
  auto seq = ec_sequence(e, p, q, spec.nmax, registry, spec.threads);

  Json out = header(spec);
  out["input"] = Json{{"a_invariants", text_list({e.a1(), e.a2(), e.a3(), e.a4(), e.a6()})},
                      {"point", text_list({p.x(), p.y()})},
                      {"q_point", q ? text_list({q->x(), q->y()}) : Json(nullptr)}};
  out["discriminant"] = to_string(e.discriminant());
  out["certificate"] = certificate_json(cert);
  Json tags = Json::array();
  for (const auto& tag : seq.tags) tags.push_back(reduction_tag_json(tag, registry));
  out["reduction_tags"] = std::move(tags);
  out["report"] = sequence_section(seq.divisors, seq.tags, !q, spec, registry);
  out["pq_bound"] = q ? bound_check_json(pq_bound_check(seq.divisors, spec.window), registry) : Json(nullptr);
  out["sequence"] = divisor_list(seq.divisors, registry);
  out["registry_generation"] = registry.generation();
  return {std::move(out), series_csv(seq.divisors, registry)};
}

JobOutput run_mixed(const JobSpec& spec) {
  EllCurveFF e = curve_of(spec);
  require_count("point", spec.point, 2, spec.group);
  if (!spec.f) missing("f", spec.group);
  EllPointFF qe = point_of(spec.point);
  require_on_curve(e, qe);
  RationalFunction f = parse_field(*spec.f);
  PlaceRegistry registry;
  auto seq = mixed_sequence(e, qe, f, spec.nmax, registry, spec.threads);

  Json out = header(spec);
  out["input"] = Json{{"a_invariants", text_list({e.a1(), e.a2(), e.a3(), e.a4(), e.a6()})},
                      {"point", text_list({qe.x(), qe.y()})},
                      {"f", to_string(f)}};
  out["certificate"] = certificate_json(ec_nontorsion_certificate(e, qe));
  Json tags = Json::array();
  for (const auto& tag : seq.tags) tags.push_back(reduction_tag_json(tag, registry));
  out["reduction_tags"] = std::move(tags);
  out["report"] = sequence_section(seq.divisors, seq.tags, true, spec, registry);
  out["sequence"] = divisor_list(seq.divisors, registry);
  out["registry_generation"] = registry.generation();
  return {std::move(out), series_csv(seq.divisors, registry)};
}

JobOutput run_indep(const JobSpec& spec) {
  if (spec.coords.empty()) missing("coords", spec.group);
  auto fs = parse_fields(spec.coords);
  Json out;
  out["group"] = to_string(spec.group);
  out["input"] = Json{{"coords", text_list(fs)}};
  out["result"] = independence_json(mult_independent(fs, spec.mode), spec.mode);
  return {std::move(out), std::nullopt};
}

JobOutput run_intseq(const JobSpec& spec) {
  auto summary = int_gcd_sequence(spec.a, spec.b, spec.nmax, spec.threads);
  Json out = header(spec);
  out.erase("seed");
  out["input"] = Json{{"a", spec.a.get_str()}, {"b", spec.b.get_str()}};
  out["result"] = int_gcd_json(summary);
  return {std::move(out), int_gcd_csv(summary)};
}

}  // namespace

const char* to_string(JobGroup g) {
  switch (g) {
    case JobGroup::kGm: return "gm";
    case JobGroup::kEc: return "ec";
    case JobGroup::kMixed: return "mixed";
    case JobGroup::kIndep: return "indep";
    case JobGroup::kIntseq: return "intseq";
  }
  return "unknown";
}

JobSpec parse_job(std::string_view text) {
  std::map<std::string, RawValue> values;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = strip_comment(text.substr(start, end - start));
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("expected 'key = value'", line_no, static_cast<int>(line.find_first_not_of(" \t")) + 1);
    }
    std::string_view key = line.substr(0, eq);
    auto first = key.find_first_not_of(" \t");
    auto last = key.find_last_not_of(" \t");
    if (first == std::string_view::npos) fail("missing key", line_no, 1);
    key = key.substr(first, last - first + 1);
    for (char c : key) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        fail("invalid key '" + std::string(key) + "'", line_no, static_cast<int>(first) + 1);
      }
    }
    // Lex the value against the full line so columns stay absolute.
    std::string padded(eq + 1, ' ');
    padded.append(line.substr(eq + 1));
    LineLexer lexer(padded, line_no);
    RawValue v = lexer.value();
    if (!lexer.done()) fail("unexpected trailing text", line_no, lexer.column());
    if (!values.emplace(std::string(key), std::move(v)).second) {
      fail("duplicate key '" + std::string(key) + "'", line_no, static_cast<int>(first) + 1);
    }
  }

  static const std::set<std::string> known = {"group", "coords", "q_coords", "a_invariants", "point",
                                              "q_point", "f", "mode", "a", "b", "nmax", "seed",
                                              "threads", "window", "format"};
  for (const auto& [key, v] : values) {
    if (known.count(key) == 0) fail("unknown key '" + key + "'", v.line, 1);
  }

  JobSpec spec;
  auto it = values.find("group");
  if (it == values.end()) throw ParseError("job file has no 'group' key", 0, 0);
  const TextField& g = scalar("group", it->second);
  static const std::map<std::string, JobGroup> groups = {{"gm", JobGroup::kGm},
                                                         {"ec", JobGroup::kEc},
                                                         {"mixed", JobGroup::kMixed},
                                                         {"indep", JobGroup::kIndep},
                                                         {"intseq", JobGroup::kIntseq}};
  auto gi = groups.find(g.text);
  if (gi == groups.end()) fail("unknown group '" + g.text + "'", g.line, g.column);
  spec.group = gi->second;

  auto list = [&](const char* key, std::vector<TextField>& dst) {
    auto f = values.find(key);
    if (f == values.end()) return;
    if (!f->second.is_list) fail(std::string("key '") + key + "' expects a list", f->second.line, f->second.column);
    dst = f->second.items;
  };
  list("coords", spec.coords);
  list("q_coords", spec.q_coords);
  list("a_invariants", spec.a_invariants);
  list("point", spec.point);
  list("q_point", spec.q_point);
  if (auto f = values.find("f"); f != values.end()) spec.f = scalar("f", f->second);
  if (auto f = values.find("mode"); f != values.end()) {
    const TextField& m = scalar("mode", f->second);
    if (m.text == "exact") {
      spec.mode = IndependenceMode::kExact;
    } else if (m.text == "modulo_constants") {
      spec.mode = IndependenceMode::kModuloConstants;
    } else {
      fail("mode must be 'exact' or 'modulo_constants'", m.line, m.column);
    }
  }
  if (auto f = values.find("a"); f != values.end()) spec.a = big_integer("a", f->second);
  if (auto f = values.find("b"); f != values.end()) spec.b = big_integer("b", f->second);
  if (auto f = values.find("nmax"); f != values.end()) spec.nmax = integer<int>("nmax", f->second, 1);
  if (auto f = values.find("seed"); f != values.end()) spec.seed = integer<std::uint64_t>("seed", f->second, 0);
  if (auto f = values.find("threads"); f != values.end()) spec.threads = integer<unsigned>("threads", f->second, 1);
  if (auto f = values.find("window"); f != values.end()) spec.window = integer<int>("window", f->second, 0);
  if (auto f = values.find("format"); f != values.end()) {
    const TextField& fm = scalar("format", f->second);
    if (fm.text != "json" && fm.text != "csv" && fm.text != "both") {
      fail("format must be json, csv or both", fm.line, fm.column);
    }
    spec.format = fm.text;
  }
  if (spec.group == JobGroup::kIntseq && values.count("a") + values.count("b") != 2) missing("a' and 'b", spec.group);
  return spec;
}

JobOutput run_job(const JobSpec& spec) {
  SeedScope seed(spec.seed);
  switch (spec.group) {
    case JobGroup::kGm: return run_gm(spec);
    case JobGroup::kEc: return run_ec(spec);
    case JobGroup::kMixed: return run_mixed(spec);
    case JobGroup::kIndep: return run_indep(spec);
    case JobGroup::kIntseq: return run_intseq(spec);
  }
  throw DomainError("unknown job group");
}

}  // namespace divseq
