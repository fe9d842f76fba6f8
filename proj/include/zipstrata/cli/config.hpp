#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zipstrata/budget.hpp"
#include "zipstrata/zip_datum.hpp"

namespace zipstrata::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Plain key = value lines; '#' starts a comment. Keys:
//   group, p, cocharacter (comma separated), m_max, r_max, max_elements,
//   max_actions, order_flavor, torus_seeds, out,
//   lambda (hodge | trivial | w1,w2,...[;similitude]), d (comma separated),
//   section_m, exponent_m_max, embedding.
struct ExperimentConfig {
  std::string group;
  int p = 2;
  std::vector<int> cocharacter;
  int m_max = 1;
  int r_max = 4;
  Budget budget;
  OrderFlavor order_flavor = OrderFlavor::twisted;
  bool torus_seeds = true;
  std::string out;
  std::string lambda = "hodge";
  std::vector<int> d{1};
  int section_m = 1;
  // Depths 1..exponent_m_max for exponent certificates (hasse, functor).
  int exponent_m_max = 3;
  std::string embedding;
  std::string source_path;

  // Datum of the group, or of the embedding source when an embedding is named.
  ZipDatum datum() const;
  std::map<std::string, std::string> echo() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace zipstrata::cli
