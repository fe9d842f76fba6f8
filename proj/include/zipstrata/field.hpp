#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zipstrata/error.hpp"

namespace zipstrata {

// Field elements are encoded by their coefficient vector in the polynomial
// basis 1, t, ..., t^(m-1), read as a base-p integer (c_0 least significant).
using Elem = std::uint32_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

class FiniteField {
 public:
  // GF(p^m) = F_p[t]/(f) with f the least monic irreducible of degree m,
  // ordering f by (c_{m-1}, ..., c_0) lexicographically.
  FiniteField(int p, int m);
  static FieldPtr get(int p, int m);

  int p() const { return p_; }
  int degree() const { return m_; }
  Elem order() const { return q_; }
  // Coefficients c_0..c_{m-1} of the monic modulus.
  const std::vector<int>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_.empty()) return mul_[static_cast<std::size_t>(a) * q_ + b];
    if (a == 0 || b == 0) return 0;
    std::uint32_t k = log_[a] + log_[b];
    if (k >= q_ - 1) k -= q_ - 1;
    return exp_[k];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long e) const;
  Elem frobenius(Elem a) const { return frob_[a]; }
  Elem from_int(long long v) const;
  // Discrete log base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(long long k) const;
  std::uint64_t multiplicative_order(Elem a) const;

  std::vector<int> coefficients(Elem a) const;
  Elem from_coefficients(const std::vector<int>& c) const;
  std::string to_string(Elem a) const;

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem poly_mul(Elem a, Elem b) const;

  int p_;
  int m_;
  Elem q_;
  std::vector<int> modulus_;
  Elem gen_ = 1;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> frob_;
  std::vector<Elem> pow_p_;
};

bool is_prime(long long n);
bool is_irreducible_mod_p(const std::vector<int>& monic_low_coeffs, int p);
std::vector<int> least_irreducible(int p, int m);

// Field embedding GF(p^d) -> GF(p^m) for d | m, sending t to the least root of
// the smaller modulus. Entry a is the image of element a.
const std::vector<Elem>& subfield_embedding(const FiniteField& sub, const FiniteField& super);

}  // namespace zipstrata
