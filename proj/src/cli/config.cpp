#include "zipstrata/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "zipstrata/error.hpp"
#include "zipstrata/functor.hpp"

namespace zipstrata::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Where {
  const std::string& origin;
  int line;
  const std::string& key;
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::config_error,
                origin + ":" + std::to_string(line) + ": field '" + key + "': " + what);
  }
};

long long parse_int(const std::string& v, const Where& w) {
  long long x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) w.fail("expected an integer, got '" + v + "'");
  return x;
}

std::vector<int> parse_list(const std::string& v, const Where& w) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(parse_int(trim(item), w)));
  if (out.empty()) w.fail("empty list");
  return out;
}

bool parse_bool(const std::string& v, const Where& w) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  w.fail("expected true or false, got '" + v + "'");
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  ExperimentConfig c;
  c.source_path = origin;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::config_error, origin + ":" + std::to_string(line) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    Where w{origin, line, key};
    if (seen.count(key)) w.fail("duplicate (first set on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;
    if (value.empty()) w.fail("empty value");
    if (key == "group") c.group = value;
    else if (key == "p") c.p = static_cast<int>(parse_int(value, w));
    else if (key == "cocharacter") c.cocharacter = parse_list(value, w);
    else if (key == "m_max") c.m_max = static_cast<int>(parse_int(value, w));
    else if (key == "r_max") c.r_max = static_cast<int>(parse_int(value, w));
    else if (key == "max_elements") c.budget.max_elements = static_cast<std::uint64_t>(parse_int(value, w));
    else if (key == "max_actions") c.budget.max_actions = static_cast<std::uint64_t>(parse_int(value, w));
    else if (key == "order_flavor") {
      try {
        c.order_flavor = parse_flavor(value);
      } catch (const Error& e) {
        w.fail(e.what());
      }
    } else if (key == "torus_seeds") c.torus_seeds = parse_bool(value, w);
    else if (key == "out") c.out = value;
    else if (key == "lambda") c.lambda = value;
    else if (key == "d") c.d = parse_list(value, w);
    else if (key == "section_m") c.section_m = static_cast<int>(parse_int(value, w));
    else if (key == "exponent_m_max") c.exponent_m_max = static_cast<int>(parse_int(value, w));
    else if (key == "embedding") c.embedding = value;
    else w.fail("unknown key");
    if ((key == "m_max" && c.m_max < 1) || (key == "r_max" && c.r_max < 1) || (key == "section_m" && c.section_m < 1) ||
        (key == "exponent_m_max" && c.exponent_m_max < 1))
      w.fail("must be at least 1");
    if (key == "max_elements" || key == "max_actions")
      if (parse_int(value, w) < 1) w.fail("budgets must be positive");
    if (key == "d")
      for (int x : c.d)
        if (x < 1) w.fail("d must be at least 1");
  }
  if (c.group.empty() && c.embedding.empty())
    throw Error(ErrorKind::config_error, origin + ": one of 'group' or 'embedding' is required");
  if (c.cocharacter.empty()) throw Error(ErrorKind::config_error, origin + ": field 'cocharacter' is required");
  if (!c.embedding.empty()) {
    auto f = embedding_by_name(c.embedding);
    if (c.group.empty()) c.group = f.source.name();
    if (c.group != f.source.name())
      throw Error(ErrorKind::config_error, origin + ": group " + c.group + " is not the source of " + c.embedding);
  }
  c.datum();  // surfaces invalid group and cocharacter data now
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config_error, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

ZipDatum ExperimentConfig::datum() const {
  return build_zip_datum(GroupDescriptor::parse(group), Cocharacter{cocharacter}, p);
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> e{{"group", group},
                                       {"p", std::to_string(p)},
                                       {"cocharacter", join(cocharacter)},
                                       {"m_max", std::to_string(m_max)},
                                       {"r_max", std::to_string(r_max)},
                                       {"max_elements", std::to_string(budget.max_elements)},
                                       {"max_actions", std::to_string(budget.max_actions)},
                                       {"order_flavor", to_string(order_flavor)},
                                       {"torus_seeds", torus_seeds ? "true" : "false"},
                                       {"lambda", lambda},
                                       {"d", join(d)},
                                       {"section_m", std::to_string(section_m)},
                                       {"exponent_m_max", std::to_string(exponent_m_max)}};
  if (!embedding.empty()) e["embedding"] = embedding;
  return e;
}

}  // namespace zipstrata::cli
