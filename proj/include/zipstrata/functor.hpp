#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zipstrata/hasse.hpp"
#include "zipstrata/oracle.hpp"

namespace zipstrata {

// Block placement of source matrices into target matrices: source coordinate a
// goes to target coordinate coord_map[a]. Bijective on coordinates.
struct GroupEmbedding {
  std::string name;
  GroupDescriptor source;
  GroupDescriptor target;
  std::vector<int> coord_map;

  Matrix apply(const Matrix& x) const;
  ZipPair apply(const ZipPair& e) const { return {apply(e.x), apply(e.y)}; }
  Cocharacter push(const Cocharacter& chi) const;
};

// Validates injectivity and that generators land in the target (form compatibility).
GroupEmbedding make_embedding(std::string name, GroupDescriptor source, GroupDescriptor target,
                              std::vector<int> coord_map);
GroupEmbedding identity_embedding(const GroupDescriptor& G);
// SL2 x SL2 -> Sp4 as the orthogonal sum of the planes <e0, e3> and <e1, e2>.
GroupEmbedding catalog_embedding();
GroupEmbedding embedding_by_name(const std::string& name);

// lambda o f on the source datum.
Character pullback_character(const Character& lambda, const GroupEmbedding& f, const ZipDatum& zd1);
// Hodge character of the target pulled back.
Character hodge_character(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2);

struct ZipMapCheck {
  std::uint64_t pairs_checked = 0;
  std::uint64_t products_checked = 0;
};
// Every e in E1(F_q) maps into E2(F_q), and f(ab) = f(a) f(b) on generator pairs.
ZipMapCheck induced_zip_map(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2, int m,
                            const Budget& budget);

// Target stratum of the image of the source representative of s1.
int orbit_image(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2, const Stratum& s1,
                const ClassificationReport& target);

struct PreimageCheck {
  bool holds = true;
  int target_stratum = -1;
  std::uint64_t points = 0;
  std::uint64_t source_open_points = 0;
  std::optional<std::uint64_t> witness;  // packed source point violating the equivalence
};
// g in C1 iff f(g) in C2 over all of G1(F_q), C1 open and C2 the stratum containing f(C1).
PreimageCheck check_preimage_open(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2,
                                  const ClassificationReport& source, const ClassificationReport& target);

enum class DivisibilityStatus { ok, alarm, not_stabilized };
const char* to_string(DivisibilityStatus s);

struct DivisibilityRow {
  int source_stratum = 0;
  int target_stratum = 0;
  ExponentCertificate n1;
  ExponentCertificate n2;
  bool divides = true;
  DivisibilityStatus status = DivisibilityStatus::ok;
};
// One row per source stratum, matched through orbit_image at the classification depth.
std::vector<DivisibilityRow> check_divisibility(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2,
                                                const Character& lambda, const ClassificationReport& target,
                                                int m_max, const Budget& budget);

}  // namespace zipstrata
