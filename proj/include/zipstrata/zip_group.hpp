#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zipstrata/budget.hpp"
#include "zipstrata/group.hpp"
#include "zipstrata/zip_datum.hpp"

namespace zipstrata {

struct ZipPair {
  Matrix x;
  Matrix y;
  bool operator==(const ZipPair& o) const { return x == o.x && y == o.y; }
};

// The zip group E = {(x, y) in P x Q : phi(levi x) = levi y} over one finite
// field, acting on G by (x, y) . g = x g y^-1.
class ZipContext {
 public:
  ZipContext(const ZipDatum& zd, FieldPtr F);

  const ZipDatum& datum() const { return zd_; }
  const FiniteField& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  int dim() const { return zd_.group.dim(); }

  bool in_P(const Matrix& x) const;
  bool in_Q(const Matrix& x) const;
  // Block diagonal part; x must lie in P or Q.
  Matrix levi(const Matrix& x) const;
  Matrix phi(const Matrix& levi_part) const { return frobenius(*F_, levi_part); }
  bool is_element(const ZipPair& e) const;
  ZipPair compose(const ZipPair& a, const ZipPair& b) const;
  ZipPair inverse(const ZipPair& e) const;
  Matrix act(const ZipPair& e, const Matrix& g) const;
  // Lift of word(g0) + word(w).
  Matrix representative(const Stratum& s) const;

  struct Generator {
    ZipPair e;
    Matrix y_inv;
  };
  // Generators of E(F_q): (l, phi(l)) for Levi generators, (u, 1), (1, v).
  const std::vector<Generator>& generators() const { return gens_; }
  Matrix apply(const Generator& g, const Matrix& h) const { return mul(*F_, mul(*F_, g.e.x, h), g.y_inv); }

  std::vector<Matrix> levi_elements(const Budget& budget) const;
  // Elements of the unipotent radical with roots of pairing sign (-1: P, +1: Q).
  std::vector<Matrix> unipotent_elements(int sign, const Budget& budget) const;
  int unipotent_dim(int sign) const;
  // |E(F_q)| = |L(F_q)| q^(dim R_u P + dim R_u Q).
  u128 order(const Budget& budget) const;
  std::vector<ZipPair> enumerate(const Budget& budget) const;

  // Every e in E(F_q) with e . h = g. The conditions on x are F_p-linear
  // (y = g^-1 x h); the solution space is scanned and filtered by x in G.
  // The callback returns false to stop. Returns the F_p-dimension scanned.
  int solve(const Matrix& g, const Matrix& h, const std::function<bool(const ZipPair&)>& cb,
            const Budget& budget) const;
  std::optional<ZipPair> find_element(const Matrix& g, const Matrix& h, const Budget& budget) const;

 private:
  ZipDatum zd_;
  FieldPtr F_;
  std::vector<char> P_, Q_, L_;
  std::vector<Generator> gens_;
  std::vector<Matrix> levi_gens_;
};

}  // namespace zipstrata
