#pragma once

#include <cstdint>
#include <vector>

#include "zipstrata/budget.hpp"
#include "zipstrata/zip_group.hpp"

namespace zipstrata {

// FNV-1a over the canonical fingerprints of sorted packed points.
std::uint64_t points_checksum(const FiniteField& F, int n, const std::vector<std::uint64_t>& sorted_keys);

struct OrbitRecord {
  int stratum = 0;
  int m = 1;
  std::uint64_t size = 0;
  std::uint64_t checksum = 0;
  // Sorted packed points; empty when size exceeds the retention limit.
  std::vector<std::uint64_t> keys;
};

// E(F_{p^m})-orbit of the representative, by closure under the generators.
OrbitRecord orbit_points(const ZipDatum& zd, const Stratum& s, int m, const Budget& budget,
                         std::uint64_t retain_limit = 1'000'000);

struct StabilizerRecord {
  int m = 1;
  std::uint64_t order = 0;
  std::uint64_t p_part = 1;
  std::uint64_t prime_to_p_part = 1;
  int solution_dim = 0;
  // Distinct Levi parts of the first coordinates, packed; capped by the budget.
  std::vector<Matrix> levi_parts;
};

// Stabilizer of g in E(F_{p^m}); g has entries in GF(p^m).
StabilizerRecord stabilizer(const ZipContext& ctx, const Matrix& g, const Budget& budget);
StabilizerRecord stabilizer(const ZipDatum& zd, const Stratum& s, int m, const Budget& budget);

struct ClassifyOptions {
  int r_max = 4;
  // Points t . rep with t in T(F_q) lie in the geometric orbit of rep (Lang's
  // theorem for the torus map t -> t w(phi(t))^-1); used as extra seeds.
  bool torus_seeds = true;
  Budget budget;
};

enum class Resolution : std::int8_t { none = 0, representative = 1, torus_seed = 2, extension = 3 };

struct ClassificationReport {
  int m = 1;
  int r_max = 4;
  std::uint64_t total_points = 0;
  std::uint64_t orbit_count = 0;  // E(F_q)-orbits
  std::uint64_t zip_group_order = 0;
  std::vector<std::uint64_t> per_stratum_counts;
  std::uint64_t unresolved = 0;
  // Unresolved points after depth r = 1..r_max.
  std::vector<std::uint64_t> unresolved_by_depth;
  int extension_depth_used = 1;
  std::uint64_t by_representative = 0;
  std::uint64_t by_torus_seed = 0;
  std::uint64_t by_extension = 0;

  // Point level data, not serialized.
  std::vector<std::uint64_t> keys;
  std::vector<std::int8_t> labels;  // stratum index or -1
  int label_of(const FiniteField& F, const Matrix& g) const;
};

ClassificationReport classify_all(const ZipDatum& zd, int m, const ClassifyOptions& options);

struct DimensionEstimate {
  int stratum = 0;
  int expected = 0;
  int estimate = 0;
  // log_p of |O(F_{p^hi})| / |O(F_{p^lo})|, before rounding.
  double naive_log_ratio = 0;
  // log_p of the ratio of the E-normalized counts, per unit of depth.
  double codim_log = 0;
  bool complete = true;
};

// Counts at two depths; the codimension in E is read off |E(F_q)| / |O(F_q)| = q^codim.
DimensionEstimate estimate_dimension(const ZipDatum& zd, const Stratum& s, const ClassificationReport& lo,
                                     const ClassificationReport& hi);
std::vector<DimensionEstimate> estimate_dimensions(const ZipDatum& zd,
                                                   const std::vector<ClassificationReport>& reports);

struct SlopeEstimate {
  std::vector<std::uint64_t> orders;  // |E(F_{p^m})| for m = 1..m_max
  double raw = 0;                     // log_p of the last consecutive ratio
  int slope = 0;
};

SlopeEstimate zip_group_log_slope(const ZipDatum& zd, int m_max, const Budget& budget);

}  // namespace zipstrata
