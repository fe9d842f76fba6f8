#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zipstrata/group_descriptor.hpp"
#include "zipstrata/weyl.hpp"

namespace zipstrata {

// Weights of the cocharacter on the standard basis vectors, one per matrix
// coordinate. A root at entry (a, b) pairs with it as chi[a] - chi[b].
struct Cocharacter {
  std::vector<int> weights;
};

int pairing(const GroupDescriptor& G, const Cocharacter& chi, const Weight& root);
bool is_minuscule(const GroupDescriptor& G, const RootDatum& rd, const Cocharacter& chi);
// Simple roots with zero pairing (the type of the common Levi).
ParabolicType parabolic_type_of(const GroupDescriptor& G, const WeylGroup& W, const Cocharacter& chi);

struct ZipDatum {
  GroupDescriptor group;
  std::shared_ptr<const WeylGroup> weyl;
  Cocharacter chi;
  int p = 2;
  ParabolicType levi_type;
  // Type of P (lower block triangular) and of Q (upper block triangular).
  ParabolicType J;
  ParabolicType K;
  int dim_P = 0;
  int dim_G = 0;
  WeylElement g0;
  std::vector<int> g0_word;

  const WeylGroup& W() const { return *weyl; }
  int pairing(const Weight& root) const { return zipstrata::pairing(group, chi, root); }
  // Roots of the unipotent radicals and of the Levi.
  std::vector<Weight> roots_with_sign(int sign) const;
};

ZipDatum build_zip_datum(const GroupDescriptor& G, const Cocharacter& chi, int p);

struct Stratum {
  int index = 0;
  WeylElement w;
  std::vector<int> word;
  int length = 0;
  int dim_orbit = 0;
  // Concatenation word(g0) + word(w); its lift is the matrix representative.
  std::vector<int> rep_word;
  bool mu_ordinary = false;
  bool superspecial = false;
};

std::vector<Stratum> enumerate_strata(const ZipDatum& zd);

enum class OrderFlavor { bruhat, twisted };
const char* to_string(OrderFlavor f);
OrderFlavor parse_flavor(const std::string& s);

struct StrataPoset {
  OrderFlavor flavor = OrderFlavor::bruhat;
  std::vector<Stratum> strata;
  // leq[i][j]: stratum i lies in the closure of stratum j.
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<int, int>> covers;
};

StrataPoset closure_order(const ZipDatum& zd, OrderFlavor flavor);
std::string to_dot(const ZipDatum& zd, const StrataPoset& poset);

}  // namespace zipstrata
