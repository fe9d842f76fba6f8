#pragma once

#include <cstdint>
#include <vector>

#include "zipstrata/budget.hpp"
#include "zipstrata/group_descriptor.hpp"
#include "zipstrata/matrix.hpp"
#include "zipstrata/weyl.hpp"

namespace zipstrata {

using u128 = unsigned __int128;

// Order of G(F_q) from the classical product formulas.
u128 group_order(const GroupDescriptor& G, std::uint64_t q);
std::uint64_t checked_u64(u128 v);

bool is_member(const FiniteField& F, const GroupDescriptor& G, const Matrix& x);
// Multiplier c with x^T Omega x = c Omega on a symplectic factor; 1 for Sp.
Elem similitude(const FiniteField& F, const GroupDescriptor& G, const Matrix& x, int factor);

// Block diagonal form with the symplectic forms on symplectic factors and zero elsewhere.
Matrix form_matrix(const FiniteField& F, const GroupDescriptor& G);

// X_a with x_a(t) = 1 + t X_a; symplectic factors pair entry (i,j) with its mirror.
Matrix root_vector(const FiniteField& F, const GroupDescriptor& G, const Weight& root);
Matrix root_element(const FiniteField& F, const GroupDescriptor& G, const Weight& root, Elem t);
// x_a(1) x_{-a}(-1) x_a(1) for the i-th simple root.
Matrix simple_lift(const FiniteField& F, const GroupDescriptor& G, const WeylGroup& W, int i);
Matrix weyl_lift(const FiniteField& F, const GroupDescriptor& G, const WeylGroup& W, const std::vector<int>& word);

// Elements 1, t, ..., t^(m-1): an additive basis of F over F_p.
std::vector<Elem> prime_field_basis(const FiniteField& F);
std::vector<Matrix> torus_generators(const FiniteField& F, const GroupDescriptor& G);
std::vector<Matrix> torus_points(const FiniteField& F, const GroupDescriptor& G, std::uint64_t limit);
std::vector<Matrix> group_generators(const FiniteField& F, const GroupDescriptor& G);

// All of G(F_q) as sorted packed keys, by closure under group_generators.
std::vector<std::uint64_t> enumerate_group(const FiniteField& F, const GroupDescriptor& G, const Budget& budget);

}  // namespace zipstrata
