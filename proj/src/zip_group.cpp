#include "zipstrata/zip_group.hpp"

#include <unordered_set>

#include "zipstrata/error.hpp"

namespace zipstrata {

ZipContext::ZipContext(const ZipDatum& zd, FieldPtr F) : zd_(zd), F_(std::move(F)) {
  if (F_->p() != zd_.p) throw Error(ErrorKind::invalid_field, "field characteristic differs from the datum");
  const int n = dim();
  const auto& G = zd_.group;
  const auto& chi = zd_.chi.weights;
  P_.assign(n * n, 0);
  Q_.assign(n * n, 0);
  L_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (G.factor_of(a) != G.factor_of(b)) continue;
      P_[a * n + b] = chi[a] <= chi[b];
      Q_[a * n + b] = chi[a] >= chi[b];
      L_[a * n + b] = chi[a] == chi[b];
    }

  const auto& W = zd_.W();
  const auto basis = prime_field_basis(*F_);
  Matrix one = identity_matrix(n);
  levi_gens_ = torus_generators(*F_, G);
  for (int i = 0; i < W.rank(); ++i) {
    if (!zd_.levi_type.contains(i)) continue;
    Weight a = W.root_datum().simple_roots()[i];
    Weight na = a;
    for (int& v : na) v = -v;
    for (Elem t : basis) {
      levi_gens_.push_back(root_element(*F_, G, a, t));
      levi_gens_.push_back(root_element(*F_, G, na, t));
    }
  }
  for (const auto& l : levi_gens_) {
    Matrix fl = phi(l);
    gens_.push_back({{l, fl}, *zipstrata::inverse(*F_, fl)});
  }
  for (const auto& r : zd_.roots_with_sign(-1))
    for (Elem t : basis) gens_.push_back({{root_element(*F_, G, r, t), one}, one});
  for (const auto& r : zd_.roots_with_sign(+1))
    for (Elem t : basis) {
      Matrix v = root_element(*F_, G, r, t);
      gens_.push_back({{one, v}, *zipstrata::inverse(*F_, v)});
    }
}

bool ZipContext::in_P(const Matrix& x) const {
  for (int i = 0; i < x.n * x.n; ++i)
    if (x.a[i] && !P_[i]) return false;
  return is_member(*F_, zd_.group, x);
}

bool ZipContext::in_Q(const Matrix& x) const {
  for (int i = 0; i < x.n * x.n; ++i)
    if (x.a[i] && !Q_[i]) return false;
  return is_member(*F_, zd_.group, x);
}

Matrix ZipContext::levi(const Matrix& x) const {
  bool inp = true, inq = true;
  for (int i = 0; i < x.n * x.n; ++i) {
    if (x.a[i] && !P_[i]) inp = false;
    if (x.a[i] && !Q_[i]) inq = false;
  }
  if (!inp && !inq) throw Error(ErrorKind::element_not_in_parabolic, to_string(*F_, x));
  Matrix l = x;
  for (int i = 0; i < x.n * x.n; ++i)
    if (!L_[i]) l.a[i] = 0;
  return l;
}

bool ZipContext::is_element(const ZipPair& e) const {
  if (!in_P(e.x) || !in_Q(e.y)) return false;
  return phi(levi(e.x)) == levi(e.y);
}

ZipPair ZipContext::compose(const ZipPair& a, const ZipPair& b) const {
  return {mul(*F_, a.x, b.x), mul(*F_, a.y, b.y)};
}

ZipPair ZipContext::inverse(const ZipPair& e) const {
  auto xi = zipstrata::inverse(*F_, e.x);
  auto yi = zipstrata::inverse(*F_, e.y);
  if (!xi || !yi) throw Error(ErrorKind::division_by_zero, "singular zip element");
  return {*xi, *yi};
}

Matrix ZipContext::act(const ZipPair& e, const Matrix& g) const {
  auto yi = zipstrata::inverse(*F_, e.y);
  if (!yi) throw Error(ErrorKind::division_by_zero, "singular zip element");
  return mul(*F_, mul(*F_, e.x, g), *yi);
}

Matrix ZipContext::representative(const Stratum& s) const {
  return weyl_lift(*F_, zd_.group, zd_.W(), s.rep_word);
}

std::vector<Matrix> ZipContext::levi_elements(const Budget& budget) const {
  std::unordered_set<std::uint64_t> seen;
  Matrix one = identity_matrix(dim());
  std::vector<Matrix> all{one};
  seen.insert(pack(*F_, one));
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& s : levi_gens_) {
      Matrix h = mul(*F_, all[i], s);
      if (seen.insert(pack(*F_, h)).second) {
        all.push_back(h);
        if (all.size() > budget.max_elements) throw Error(ErrorKind::budget_exceeded, "Levi subgroup too large");
      }
    }
  }
  return all;
}

int ZipContext::unipotent_dim(int sign) const { return static_cast<int>(zd_.roots_with_sign(sign).size()); }

std::vector<Matrix> ZipContext::unipotent_elements(int sign, const Budget& budget) const {
  auto roots = zd_.roots_with_sign(sign);
  u128 total = 1;
  for (std::size_t i = 0; i < roots.size(); ++i) total *= F_->order();
  if (total > budget.max_elements) throw Error(ErrorKind::budget_exceeded, "unipotent radical too large");
  std::vector<Matrix> out;
  std::vector<Elem> t(roots.size(), 0);
  const auto& G = zd_.group;
  for (u128 k = 0; k < total; ++k) {
    Matrix u = identity_matrix(dim());
    for (std::size_t i = 0; i < roots.size(); ++i) u = mul(*F_, u, root_element(*F_, G, roots[i], t[i]));
    out.push_back(u);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (++t[i] < F_->order()) break;
      t[i] = 0;
    }
  }
  return out;
}

u128 ZipContext::order(const Budget& budget) const {
  u128 total = levi_elements(budget).size();
  int u = unipotent_dim(-1) + unipotent_dim(+1);
  for (int i = 0; i < u; ++i) total *= F_->order();
  return total;
}

std::vector<ZipPair> ZipContext::enumerate(const Budget& budget) const {
  if (order(budget) > budget.max_elements) throw Error(ErrorKind::budget_exceeded, "zip group too large");
  auto L = levi_elements(budget);
  auto U = unipotent_elements(-1, budget);
  auto V = unipotent_elements(+1, budget);
  std::vector<ZipPair> out;
  out.reserve(L.size() * U.size() * V.size());
  for (const auto& l : L) {
    Matrix fl = phi(l);
    for (const auto& u : U) {
      Matrix x = mul(*F_, l, u);
      for (const auto& v : V) out.push_back({x, mul(*F_, fl, v)});
    }
  }
  return out;
}

int ZipContext::solve(const Matrix& g, const Matrix& h, const std::function<bool(const ZipPair&)>& cb,
                      const Budget& budget) const {
  const int n = dim();
  const int M = F_->degree();
  const int p = F_->p();
  auto ginv_opt = zipstrata::inverse(*F_, g);
  if (!ginv_opt) throw Error(ErrorKind::division_by_zero, "singular target");
  const Matrix& ginv = *ginv_opt;

  std::vector<int> unknowns;
  for (int i = 0; i < n * n; ++i)
    if (P_[i]) unknowns.push_back(i);
  // Constrained entries of y: inside a factor block and either outside Q or on the Levi.
  std::vector<int> conditions;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int i = a * n + b;
      bool in_block = P_[i] || Q_[i];
      if (in_block && (!Q_[i] || L_[i])) conditions.push_back(i);
    }

  const int cols = static_cast<int>(unknowns.size()) * M;
  const int rows = static_cast<int>(conditions.size()) * M;
  auto Fp = FiniteField::get(p, 1);
  std::vector<std::vector<Elem>> A(rows, std::vector<Elem>(cols, 0));
  const auto basis = prime_field_basis(*F_);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    int a = unknowns[u] / n, b = unknowns[u] % n;
    for (int d = 0; d < M; ++d) {
      Elem e = basis[d];
      int col = static_cast<int>(u) * M + d;
      for (std::size_t c = 0; c < conditions.size(); ++c) {
        int r = conditions[c] / n, s = conditions[c] % n;
        // (g^-1 E_ab e h)_rs = g^-1_ra e h_bs
        Elem v = F_->mul(F_->mul(ginv(r, a), e), h(b, s));
        if (L_[conditions[c]] && r == a && s == b) v = F_->sub(v, F_->frobenius(e));
        auto co = F_->coefficients(v);
        for (int k = 0; k < M; ++k) A[c * M + k][col] = static_cast<Elem>(co[k]);
      }
    }
  }
  auto kernel = kernel_basis(*Fp, std::move(A), cols);
  const int s = static_cast<int>(kernel.size());

  // Echelonize the kernel on the Levi coordinates first: rows [0, dl) have
  // independent Levi parts, the remaining rows lie in the unipotent radical.
  std::vector<char> levi_col(cols, 0);
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    if (L_[unknowns[u]])
      for (int d = 0; d < M; ++d) levi_col[u * M + d] = 1;
  int dl = 0;
  for (int c = 0; c < cols && dl < s; ++c) {
    if (!levi_col[c]) continue;
    int piv = -1;
    for (int r = dl; r < s; ++r)
      if (kernel[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(kernel[dl], kernel[piv]);
    Elem iv = Fp->inv(kernel[dl][c]);
    for (auto& v : kernel[dl]) v = Fp->mul(v, iv);
    for (int r = 0; r < s; ++r) {
      if (r == dl || !kernel[r][c]) continue;
      Elem f = kernel[r][c];
      for (int k = 0; k < cols; ++k) kernel[r][k] = Fp->sub(kernel[r][k], Fp->mul(f, kernel[dl][k]));
    }
    ++dl;
  }
  long double levi_total = 1;
  for (int i = 0; i < dl; ++i) levi_total *= p;
  if (levi_total > static_cast<long double>(budget.max_actions))
    throw Error(ErrorKind::budget_exceeded, "Levi solution space of F_p-dimension " + std::to_string(dl));

  std::vector<Matrix> B;
  for (const auto& v : kernel) {
    Matrix X = zero_matrix(n);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      std::vector<int> co(M);
      for (int d = 0; d < M; ++d) co[d] = static_cast<int>(v[u * M + d]);
      X.a[unknowns[u]] = F_->from_coefficients(co);
    }
    B.push_back(X);
  }
  const int du = s - dl;
  const Matrix omega = form_matrix(*F_, zd_.group);
  bool has_form = false;
  for (std::size_t f = 0; f < zd_.group.factors().size(); ++f) has_form |= zd_.group.symplectic(static_cast<int>(f));
  auto gram = [&](const Matrix& x) { return mul(*F_, mul(*F_, transpose(x), omega), x); };
  std::uint64_t actions = 0;

  // For fixed Levi part l the unipotent radical is abelian (minuscule), so
  // x = x0 + sum c_j U_j lies in G iff an affine F_p-system in c holds.
  auto fiber = [&](const Matrix& x0) -> bool {
    Matrix l = x0;
    for (int i = 0; i < n * n; ++i)
      if (!L_[i]) l.a[i] = 0;
    if (!is_member(*F_, zd_.group, l)) return true;
    std::vector<std::vector<Elem>> part;  // particular solution first, then homogeneous
    if (!has_form) {
      part.emplace_back(du, 0);
      for (int j = 0; j < du; ++j) {
        part.emplace_back(du, 0);
        part.back()[j] = 1;
      }
    } else {
      Matrix target = gram(l);
      Matrix r0 = sub(*F_, gram(x0), target);
      std::vector<Matrix> lin;
      for (int j = 0; j < du; ++j) lin.push_back(sub(*F_, gram(add(*F_, x0, B[dl + j])), gram(x0)));
      std::vector<std::vector<Elem>> S;
      for (int i = 0; i < n * n; ++i)
        for (int k = 0; k < M; ++k) {
          std::vector<Elem> row(du + 1);
          for (int j = 0; j < du; ++j) row[j] = static_cast<Elem>(F_->coefficients(lin[j].a[i])[k]);
          row[du] = static_cast<Elem>(F_->coefficients(r0.a[i])[k]);
          S.push_back(std::move(row));
        }
      auto ker = kernel_basis(*Fp, std::move(S), du + 1);
      int lead = -1;
      for (std::size_t i = 0; i < ker.size(); ++i)
        if (ker[i][du]) lead = static_cast<int>(i);
      if (lead < 0) return true;
      std::swap(ker[0], ker[lead]);
      Elem iv = Fp->inv(ker[0][du]);
      for (auto& v : ker[0]) v = Fp->mul(v, iv);
      for (std::size_t i = 1; i < ker.size(); ++i) {
        Elem f = ker[i][du];
        for (int k = 0; k <= du; ++k) ker[i][k] = Fp->sub(ker[i][k], Fp->mul(f, ker[0][k]));
      }
      // ker[0] = (c, 1) with lin c + r0 = 0.
      for (auto& row : ker) {
        row.pop_back();
        part.push_back(row);
      }
    }
    Matrix x = x0;
    for (int j = 0; j < du; ++j)
      if (part[0][j]) x = add(*F_, x, scale(*F_, part[0][j], B[dl + j]));
    std::vector<Matrix> H;
    for (std::size_t i = 1; i < part.size(); ++i) {
      Matrix X = zero_matrix(n);
      for (int j = 0; j < du; ++j)
        if (part[i][j]) X = add(*F_, X, scale(*F_, part[i][j], B[dl + j]));
      H.push_back(X);
    }
    std::vector<int> digits(H.size(), 0);
    while (true) {
      if (++actions > budget.max_actions) throw Error(ErrorKind::budget_exceeded, "too many solutions");
      if (!is_member(*F_, zd_.group, x)) throw Error(ErrorKind::constraint_violation, "fiber left the group");
      if (!cb(ZipPair{x, mul(*F_, mul(*F_, ginv, x), h)})) return false;
      std::size_t j = 0;
      for (; j < H.size(); ++j) {
        x = add(*F_, x, H[j]);
        if (++digits[j] < p) break;
        digits[j] = 0;
      }
      if (j == H.size()) return true;
    }
  };

  // Odometer over F_p-combinations; bumping digit j by one adds B[j], also on wrap-around.
  Matrix x = zero_matrix(n);
  std::vector<int> digits(dl, 0);
  while (true) {
    if (!fiber(x)) return s;
    int j = 0;
    for (; j < dl; ++j) {
      x = add(*F_, x, B[j]);
      if (++digits[j] < p) break;
      digits[j] = 0;
    }
    if (j == dl) break;
  }
  return s;
}

std::optional<ZipPair> ZipContext::find_element(const Matrix& g, const Matrix& h, const Budget& budget) const {
  std::optional<ZipPair> found;
  solve(g, h,
        [&](const ZipPair& e) {
          found = e;
          return false;
        },
        budget);
  return found;
}

}  // namespace zipstrata
