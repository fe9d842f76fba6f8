#pragma once

#include <string>
#include <vector>

#include "zipstrata/weyl.hpp"

namespace zipstrata {

enum class GroupKind { GL, SL, Sp, GSp, Product };

const char* to_string(GroupKind kind);

struct GroupFactor {
  GroupKind kind;
  int size;        // matrix size of the factor
  int offset;      // first matrix coordinate
  int eps_offset;  // first epsilon coordinate
};

// Split classical group realized by block diagonal matrices, one block per factor.
class GroupDescriptor {
 public:
  static GroupDescriptor simple(GroupKind kind, int size);
  static GroupDescriptor product(const std::vector<GroupDescriptor>& parts);
  // "GL2", "SL3", "Sp4", "GSp4", "SL2xSL2".
  static GroupDescriptor parse(const std::string& text);

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<GroupFactor>& factors() const { return factors_; }
  const std::string& name() const { return name_; }
  SeriesDescriptor series() const;
  RootDatum root_datum() const { return RootDatum(series()); }

  int factor_of(int coord) const;
  bool symplectic(int factor) const;
  // Mirror coordinate inside a symplectic factor.
  int mirror(int coord) const;
  // Sign of the form: Omega(e_a, e_{mirror a}) = form_sign(a).
  int form_sign(int coord) const;
  // Torus weight of the coordinate vector e_a, in epsilon coordinates.
  Weight coordinate_weight(int coord) const;
  int eps_dim() const { return eps_dim_; }

  struct Entry {
    int row;
    int col;
  };
  // Least matrix entry (row, col) of weight equal to the root.
  Entry root_entry(const Weight& root) const;

 private:
  GroupKind kind_ = GroupKind::GL;
  int dim_ = 0;
  int eps_dim_ = 0;
  std::vector<GroupFactor> factors_;
  std::string name_;
};

}  // namespace zipstrata
