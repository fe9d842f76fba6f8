#include "zipstrata/cli/commands.hpp"

#include <chrono>
#include <sstream>

#include "zipstrata/functor.hpp"
#include "zipstrata/hasse.hpp"
#include "zipstrata/oracle.hpp"

namespace zipstrata::cli {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(json& sink) : sink_(sink), start_(Clock::now()) {}
  void lap(const std::string& name) {
    auto now = Clock::now();
    sink_[name] = std::chrono::duration<double>(now - start_).count();
    start_ = now;
  }

 private:
  using Clock = std::chrono::steady_clock;
  json& sink_;
  Clock::time_point start_;
};

std::string u128_text(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

json header(const std::string& command, const ExperimentConfig& c) {
  return json{{"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", command},
              {"config", c.echo()}};
}

json datum_json(const ZipDatum& zd) {
  return json{{"group", zd.group.name()},
              {"p", zd.p},
              {"cocharacter", zd.chi.weights},
              {"root_datum", zd.group.root_datum().tag()},
              {"levi_type", zd.levi_type.indices()},
              {"J", zd.J.indices()},
              {"K", zd.K.indices()},
              {"dim_P", zd.dim_P},
              {"dim_G", zd.dim_G},
              {"g0_word", word_to_string(zd.g0_word)}};
}

json stratum_json(const Stratum& s) {
  return json{{"index", s.index},           {"word", word_to_string(s.word)},
              {"length", s.length},         {"dim_orbit", s.dim_orbit},
              {"rep_word", word_to_string(s.rep_word)}, {"mu_ordinary", s.mu_ordinary},
              {"superspecial", s.superspecial}};
}

json character_json(const Character& l) { return json{{"weights", l.weights}, {"similitude", l.similitude}}; }

json certificate_json(const ExponentCertificate& c) {
  return json{{"w", c.stratum},
              {"lambda", character_json(c.lambda)},
              {"N", c.lower_bound},
              {"depths", c.depths_used},
              {"per_depth", c.per_depth},
              {"stabilized", c.stabilized}};
}

json report_json(const ClassificationReport& r) {
  return json{{"m", r.m},
              {"r_max", r.r_max},
              {"total_points", r.total_points},
              {"orbit_count", r.orbit_count},
              {"zip_group_order", r.zip_group_order},
              {"per_stratum_counts", r.per_stratum_counts},
              {"unresolved", r.unresolved},
              {"unresolved_by_depth", r.unresolved_by_depth},
              {"extension_depth_used", r.extension_depth_used},
              {"resolved_by",
               {{"representative", r.by_representative},
                {"torus_seed", r.by_torus_seed},
                {"extension", r.by_extension}}}};
}

ClassifyOptions options(const ExperimentConfig& c) {
  ClassifyOptions o;
  o.r_max = c.r_max;
  o.torus_seeds = c.torus_seeds;
  o.budget = c.budget;
  return o;
}

Character parse_lambda(const std::string& text, const ZipDatum& zd, const std::function<Character()>& hodge) {
  if (text == "hodge") return hodge();
  if (text == "trivial") return trivial_character(zd);
  Character l;
  std::string weights = text, sim;
  if (auto semi = text.find(';'); semi != std::string::npos) {
    weights = text.substr(0, semi);
    sim = text.substr(semi + 1);
  }
  std::stringstream ss(weights);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) l.weights.push_back(std::stoi(item));
    if (!sim.empty()) l.similitude = std::stoi(sim);
  } catch (const std::exception&) {
    throw Error(ErrorKind::config_error, "field 'lambda': cannot parse '" + text + "'");
  }
  check_character(zd, l);
  return l;
}

std::uint64_t fingerprint(const ExperimentConfig& c) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : c.echo())
    for (char ch : k + "=" + v + ";") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::budget_exceeded: return kBudget;
    case ErrorKind::incomplete_classification: return kIncomplete;
    case ErrorKind::config_error:
    case ErrorKind::unsupported_series:
    case ErrorKind::unsupported_group:
    case ErrorKind::invalid_cocharacter:
    case ErrorKind::non_minuscule:
    case ErrorKind::non_dominant:
    case ErrorKind::invalid_field:
    case ErrorKind::not_a_character:
    case ErrorKind::no_siegel_target: return kConfigError;
    default: return kFailure;
  }
}

CommandResult cmd_strata(const ExperimentConfig& c) {
  CommandResult r;
  Stopwatch sw(r.timings);
  auto zd = c.datum();
  auto poset = closure_order(zd, c.order_flavor);
  json strata = json::array();
  for (const auto& s : poset.strata) strata.push_back(stratum_json(s));
  json covers = json::array();
  for (auto [a, b] : poset.covers) covers.push_back({a, b});
  r.payload = header("strata", c);
  r.payload["datum"] = datum_json(zd);
  r.payload["strata"] = strata;
  r.payload["order"] = {{"flavor", to_string(poset.flavor)}, {"covers", covers}, {"leq", poset.leq}};
  r.dot = to_dot(zd, poset);
  sw.lap("strata");
  return r;
}

CommandResult cmd_oracle_verify(const ExperimentConfig& c) {
  CommandResult r;
  Stopwatch sw(r.timings);
  auto zd = c.datum();
  auto strata = enumerate_strata(zd);
  r.payload = header("oracle-verify", c);
  r.payload["datum"] = datum_json(zd);
  std::vector<ClassificationReport> reports;
  json cls = json::array();
  std::uint64_t unresolved = 0;
  for (int m = 1; m <= c.m_max; ++m) {
    reports.push_back(classify_all(zd, m, options(c)));
    reports.back().keys.clear();
    reports.back().labels.clear();
    cls.push_back(report_json(reports.back()));
    unresolved += reports.back().unresolved;
    sw.lap("classify_m" + std::to_string(m));
  }
  r.payload["classification"] = cls;
  bool dims_pass = true;
  if (c.m_max >= 2) {
    json dims = json::array();
    for (const auto& d : estimate_dimensions(zd, reports)) {
      bool pass = d.estimate == d.expected && d.complete;
      dims_pass &= pass;
      dims.push_back({{"w", word_to_string(strata[d.stratum].word)},
                      {"expected", d.expected},
                      {"estimate", d.estimate},
                      {"codim_log", d.codim_log},
                      {"naive_log_ratio", d.naive_log_ratio},
                      {"complete", d.complete},
                      {"pass", pass}});
    }
    r.payload["dimensions"] = dims;
    sw.lap("dimensions");
  }
  auto slope = zip_group_log_slope(zd, std::max(3, c.m_max), c.budget);
  r.payload["zip_group"] = {{"orders", slope.orders},
                            {"log_slope", slope.raw},
                            {"rounded", slope.slope},
                            {"dim_G", zd.dim_G},
                            {"pass", slope.slope == zd.dim_G}};
  sw.lap("zip_group");
  json stabs = json::array();
  for (const auto& s : strata) {
    json rows = json::array();
    for (int m = 1; m <= c.m_max; ++m) {
      auto st = stabilizer(zd, s, m, c.budget);
      std::uint64_t expect = 1;
      for (int i = 0; i < (zd.dim_G - s.dim_orbit) * m; ++i) expect *= zd.p;
      rows.push_back({{"m", m},
                      {"order", st.order},
                      {"p_part", st.p_part},
                      {"prime_to_p_part", st.prime_to_p_part},
                      {"expected_p_part", expect},
                      {"exact", st.p_part == expect}});
    }
    stabs.push_back({{"w", word_to_string(s.word)}, {"depths", rows}});
  }
  r.payload["stabilizers"] = stabs;
  sw.lap("stabilizers");
  r.payload["verdict"] = {{"dimensions_pass", dims_pass}, {"unresolved", unresolved}};
  if (unresolved) r.exit_code = kIncomplete;
  return r;
}

CommandResult cmd_hasse(const ExperimentConfig& c) {
  CommandResult r;
  Stopwatch sw(r.timings);
  auto zd = c.datum();
  Character lambda = parse_lambda(c.lambda, zd, [&] {
    if (!c.embedding.empty()) {
      auto f = embedding_by_name(c.embedding);
      return hodge_character(f, zd, build_zip_datum(f.target, f.push(zd.chi), zd.p));
    }
    return hodge_character(zd);
  });
  r.payload = header("hasse", c);
  r.payload["datum"] = datum_json(zd);
  r.payload["lambda"] = character_json(lambda);
  r.payload["ample"] = is_ample(lambda, zd);
  const std::uint64_t seed = fingerprint(c);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& s : enumerate_strata(zd)) {
    auto cert = exponent_lower_bound(zd, s, lambda, c.exponent_m_max, c.budget);
    json sections = json::array();
    for (int d : c.d) {
      long long n = static_cast<long long>(cert.lower_bound) * d;
      json row{{"d", d}, {"n", n}, {"m", c.section_m}};
      try {
        auto t = build_section(zd, s, lambda, n, c.section_m, c.budget);
        auto chk = check_section(zd, t, c.budget);
        ZipContext ctx(zd, FiniteField::get(zd.p, c.section_m));
        auto all = ctx.enumerate(c.budget);
        auto u = build_section_from(zd, s, lambda, n, c.section_m, all[seed % all.size()], c.budget);
        bool one_dim = proportionality(ctx.field(), t, u).has_value();
        row["points"] = t.values.size();
        row["checksum"] = t.checksum();
        row["non_vanishing"] = chk.non_vanishing;
        row["equivariant"] = chk.equivariant;
        row["extension_by_zero"] = chk.extension_by_zero;
        row["pairs_checked"] = chk.pairs_checked;
        row["second_build_proportional"] = one_dim;
        all_ok &= chk.non_vanishing && chk.equivariant && chk.extension_by_zero && one_dim;
      } catch (const IllDefinedSection& e) {
        const auto& F = *FiniteField::get(zd.p, c.section_m);
        row["ill_defined"] = {{"e1", {to_string(F, e.e1.x), to_string(F, e.e1.y)}},
                              {"e2", {to_string(F, e.e2.x), to_string(F, e.e2.y)}},
                              {"values", {F.to_string(e.v1), F.to_string(e.v2)}}};
        all_ok = false;
      }
      sections.push_back(row);
    }
    rows.push_back({{"w", word_to_string(s.word)}, {"certificate", certificate_json(cert)}, {"sections", sections}});
    sw.lap("stratum_" + std::to_string(s.index));
  }
  r.payload["strata"] = rows;
  r.payload["verdict"] = {{"sections_ok", all_ok}};
  if (!all_ok) r.exit_code = kFailure;
  return r;
}

CommandResult cmd_functor(const ExperimentConfig& c) {
  CommandResult r;
  Stopwatch sw(r.timings);
  if (c.embedding.empty()) throw Error(ErrorKind::config_error, "field 'embedding' is required for functor");
  auto f = embedding_by_name(c.embedding);
  auto zd1 = c.datum();
  auto zd2 = build_zip_datum(f.target, f.push(zd1.chi), zd1.p);
  Character lambda = parse_lambda(c.lambda, zd2, [&] { return hodge_character(zd2); });
  r.payload = header("functor", c);
  r.payload["source"] = datum_json(zd1);
  r.payload["target"] = datum_json(zd2);
  r.payload["embedding"] = {{"name", f.name}, {"coord_map", f.coord_map}};
  r.payload["lambda"] = character_json(lambda);
  Character pulled = pullback_character(lambda, f, zd1);
  r.payload["pullback"] = character_json(pulled);
  r.payload["ample"] = {{"target", is_ample(lambda, zd2)}, {"source", is_ample(pulled, zd1)}};
  json depths = json::array();
  bool preimage_ok = true;
  std::uint64_t unresolved = 0;
  for (int m = 1; m <= c.m_max; ++m) {
    json d{{"m", m}};
    auto zm = induced_zip_map(f, zd1, zd2, m, c.budget);
    d["zip_map"] = {{"pairs_checked", zm.pairs_checked}, {"products_checked", zm.products_checked}};
    auto r1 = classify_all(zd1, m, options(c));
    auto r2 = classify_all(zd2, m, options(c));
    d["source_classification"] = report_json(r1);
    d["target_classification"] = report_json(r2);
    unresolved += r1.unresolved + r2.unresolved;
    if (r1.unresolved || r2.unresolved) {
      d["preimage_check"] = "incomplete";
      preimage_ok = false;
      depths.push_back(d);
      continue;
    }
    json images = json::array();
    for (const auto& s : enumerate_strata(zd1)) images.push_back(orbit_image(f, zd1, zd2, s, r2));
    d["orbit_images"] = images;
    auto pc = check_preimage_open(f, zd1, zd2, r1, r2);
    d["preimage_check"] = {{"holds", pc.holds},
                           {"target_stratum", pc.target_stratum},
                           {"points", pc.points},
                           {"source_open_points", pc.source_open_points}};
    if (pc.witness) d["preimage_check"]["witness"] = to_string(*FiniteField::get(zd1.p, m), unpack(*FiniteField::get(zd1.p, m), zd1.group.dim(), *pc.witness));
    preimage_ok &= pc.holds;
    json rows = json::array();
    for (const auto& row : check_divisibility(f, zd1, zd2, lambda, r2, c.exponent_m_max, c.budget))
      rows.push_back({{"source", row.source_stratum},
                      {"target", row.target_stratum},
                      {"N1", row.n1.lower_bound},
                      {"N2", row.n2.lower_bound},
                      {"N1_stabilized", row.n1.stabilized},
                      {"N2_stabilized", row.n2.stabilized},
                      {"divides", row.divides},
                      {"status", to_string(row.status)}});
    d["divisibility"] = rows;
    depths.push_back(d);
    sw.lap("depth_" + std::to_string(m));
  }
  r.payload["depths"] = depths;
  r.payload["verdict"] = {{"preimage_check", preimage_ok}, {"unresolved", unresolved}};
  if (unresolved) r.exit_code = kIncomplete;
  return r;
}

CommandResult run_command(const std::string& name, const ExperimentConfig& c) {
  try {
    if (name == "strata") return cmd_strata(c);
    if (name == "oracle-verify") return cmd_oracle_verify(c);
    if (name == "hasse") return cmd_hasse(c);
    if (name == "functor") return cmd_functor(c);
    throw Error(ErrorKind::config_error, "unknown command " + name);
  } catch (const Error& e) {
    CommandResult r;
    r.payload = header(name, c);
    r.payload["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (e.kind() == ErrorKind::budget_exceeded) {
      auto zd = c.datum();
      std::uint64_t q = 1;
      for (int i = 0; i < c.m_max; ++i) q *= zd.p;
      r.payload["error"]["cardinality_estimate"] = {{"field_size", q},
                                                    {"group_order", u128_text(group_order(zd.group, q))},
                                                    {"max_elements", c.budget.max_elements},
                                                    {"max_actions", c.budget.max_actions}};
    }
    r.exit_code = exit_code_for(e.kind());
    return r;
  }
}

}  // namespace zipstrata::cli
