#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zipstrata/field.hpp"

namespace zipstrata {

constexpr int kMaxDim = 8;

struct Matrix {
  int n = 0;
  std::array<Elem, kMaxDim * kMaxDim> a{};

  Elem& operator()(int i, int j) { return a[i * n + j]; }
  Elem operator()(int i, int j) const { return a[i * n + j]; }
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
};

Matrix zero_matrix(int n);
Matrix identity_matrix(int n);
Matrix mul(const FiniteField& F, const Matrix& x, const Matrix& y);
Matrix add(const FiniteField& F, const Matrix& x, const Matrix& y);
Matrix sub(const FiniteField& F, const Matrix& x, const Matrix& y);
Matrix scale(const FiniteField& F, Elem c, const Matrix& x);
Matrix transpose(const Matrix& x);
Elem determinant(const FiniteField& F, const Matrix& x);
std::optional<Matrix> inverse(const FiniteField& F, const Matrix& x);
// Entrywise p-power.
Matrix frobenius(const FiniteField& F, const Matrix& x);
Matrix map_entries(const Matrix& x, const std::vector<Elem>& map);
// Integer matrix reduced into F.
Matrix from_ints(const FiniteField& F, int n, const std::vector<long long>& rows);
std::string to_string(const FiniteField& F, const Matrix& x);

// Row-major mixed radix packing; requires q^(n*n) <= 2^64.
bool packable(const FiniteField& F, int n);
std::uint64_t pack(const FiniteField& F, const Matrix& x);
Matrix unpack(const FiniteField& F, int n, std::uint64_t key);
// Canonical bytes: row-major entries, each entry as its m base-p coefficients.
std::vector<std::uint8_t> fingerprint(const FiniteField& F, const Matrix& x);

// Gaussian elimination helpers over F on dense row-major systems.
// Returns a basis of {v : A v = 0} for A with `cols` columns.
std::vector<std::vector<Elem>> kernel_basis(const FiniteField& F, std::vector<std::vector<Elem>> A, int cols);
int rank_of(const FiniteField& F, std::vector<std::vector<Elem>> A, int cols);

}  // namespace zipstrata
