#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zipstrata/budget.hpp"
#include "zipstrata/zip_group.hpp"

namespace zipstrata {

// Character of E, through X*(E) = X*(P) = X*(L). Weights are exponents per
// diagonal coordinate, constant on each Levi block, so that
// lambda(x, y) = prod_B det(levi(x)_B)^{w_B} * sim(x)^s over symplectic similitude factors.
struct Character {
  std::vector<int> weights;
  int similitude = 0;
  bool operator==(const Character& o) const { return weights == o.weights && similitude == o.similitude; }
};

Character trivial_character(const ZipDatum& zd);
Character operator+(const Character& a, const Character& b);
Character operator-(const Character& a);
Character scaled(const Character& a, int k);

// Levi blocks: coordinates of one factor with equal cocharacter weight.
std::vector<std::vector<int>> levi_blocks(const ZipDatum& zd);
// Throws not_a_character unless the weights are constant on Levi blocks.
void check_character(const ZipDatum& zd, const Character& lambda);
std::vector<Character> character_lattice(const ZipDatum& zd);
// Restriction to the diagonal torus: epsilon part and total similitude exponent,
// normalized on SL factors. Equal keys iff equal characters.
std::pair<Weight, int> torus_weight(const ZipDatum& zd, const Character& lambda);
bool same_character(const ZipDatum& zd, const Character& a, const Character& b);
int coroot_pairing(const ZipDatum& zd, const Character& lambda, int simple_index);

Elem evaluate_character(const ZipContext& ctx, const Character& lambda, const ZipPair& e);
Elem evaluate_on_levi(const ZipContext& ctx, const Character& lambda, const Matrix& levi_part);

// Strict cone: <lambda, a^v> > 0 for every simple a outside the Levi type. Empty
// when the Levi type is everything.
bool is_ample(const Character& lambda, const ZipDatum& zd);
// Determinant of the weight-one Levi block of the symplectic factor (GL2 read as GSp2).
Character hodge_character(const ZipDatum& zd);

struct ExponentCertificate {
  int stratum = 0;
  Character lambda;
  std::uint64_t lower_bound = 1;
  std::vector<int> depths_used;
  std::vector<std::uint64_t> per_depth;  // lcm at depth m alone
  bool stabilized = false;
};

// N = lcm over m <= m_max and stabilizer elements a of ord(lambda(a)).
ExponentCertificate exponent_lower_bound(const ZipDatum& zd, const Stratum& s, const Character& lambda, int m_max,
                                         const Budget& budget);

struct SectionTable {
  int stratum = 0;
  Character lambda;
  long long n = 1;
  int p = 2;
  int m = 1;
  // Sorted by packed point.
  std::vector<std::pair<std::uint64_t, Elem>> values;
  std::uint64_t checksum() const;
  std::optional<Elem> value(std::uint64_t key) const;
};

// Raised by build_section: e1 . rep = e2 . rep but lambda(e1)^n != lambda(e2)^n.
class IllDefinedSection : public Error {
 public:
  IllDefinedSection(ZipPair e1, ZipPair e2, Elem v1, Elem v2, const std::string& what)
      : Error(ErrorKind::ill_defined_section, what), e1(std::move(e1)), e2(std::move(e2)), v1(v1), v2(v2) {}
  ZipPair e1, e2;
  Elem v1, v2;
};

// f(e . rep) = lambda(e)^n, propagated along the generators from f(rep) = 1.
SectionTable build_section(const ZipDatum& zd, const Stratum& s, const Character& lambda, long long n, int m,
                           const Budget& budget);
// Independent build: f'(e . base) = lambda(e)^n over all of E(F_q), base = e0 . rep.
SectionTable build_section_from(const ZipDatum& zd, const Stratum& s, const Character& lambda, long long n, int m,
                                const ZipPair& e0, const Budget& budget);

struct SectionCheck {
  bool non_vanishing = true;
  bool equivariant = true;
  bool extension_by_zero = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t points_checked = 0;
};
// f(e . g) = lambda(e)^n f(g) for every e in E(F_q) and every tabulated g; with
// f = 0 off the table the same relation at every point of G(F_q) under the generators.
SectionCheck check_section(const ZipDatum& zd, const SectionTable& t, const Budget& budget);
// c with b = c a pointwise, if it exists.
std::optional<Elem> proportionality(const FiniteField& F, const SectionTable& a, const SectionTable& b);

}  // namespace zipstrata
