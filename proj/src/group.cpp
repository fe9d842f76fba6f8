#include "zipstrata/group.hpp"

#include <algorithm>
#include <unordered_set>

#include "zipstrata/error.hpp"

namespace zipstrata {

namespace {

u128 upow(u128 b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Matrix block(const Matrix& x, int offset, int size) {
  Matrix b = zero_matrix(size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) b(i, j) = x(offset + i, offset + j);
  return b;
}

// x^T Omega x for a symplectic block.
Matrix gram(const FiniteField& F, const Matrix& b) {
  const int n = b.n;
  Matrix omega = zero_matrix(n);
  for (int a = 0; a < n; ++a) omega(a, n - 1 - a) = a < n / 2 ? 1 : F.neg(1);
  return mul(F, mul(F, transpose(b), omega), b);
}

}  // namespace

u128 group_order(const GroupDescriptor& G, std::uint64_t q) {
  u128 total = 1;
  for (const auto& f : G.factors()) {
    u128 o = 1;
    int n = f.size;
    switch (f.kind) {
      case GroupKind::GL:
      case GroupKind::SL:
        for (int i = 0; i < n; ++i) o *= upow(q, n) - upow(q, i);
        if (f.kind == GroupKind::SL) o /= (q - 1);
        break;
      case GroupKind::Sp:
      case GroupKind::GSp: {
        int r = n / 2;
        o = upow(q, r * r);
        for (int i = 1; i <= r; ++i) o *= upow(q, 2 * i) - 1;
        if (f.kind == GroupKind::GSp) o *= (q - 1);
        break;
      }
      case GroupKind::Product: break;
    }
    total *= o;
  }
  return total;
}

std::uint64_t checked_u64(u128 v) {
  if (v > static_cast<u128>(UINT64_MAX)) throw Error(ErrorKind::budget_exceeded, "count exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

bool is_member(const FiniteField& F, const GroupDescriptor& G, const Matrix& x) {
  if (x.n != G.dim()) return false;
  for (int a = 0; a < x.n; ++a)
    for (int b = 0; b < x.n; ++b)
      if (x(a, b) && G.factor_of(a) != G.factor_of(b)) return false;
  for (std::size_t fi = 0; fi < G.factors().size(); ++fi) {
    const auto& f = G.factors()[fi];
    Matrix b = block(x, f.offset, f.size);
    Elem det = determinant(F, b);
    if (det == 0) return false;
    if (f.kind == GroupKind::SL && det != 1) return false;
    if (G.symplectic(static_cast<int>(fi))) {
      Matrix g = gram(F, b);
      Elem c = g(0, f.size - 1);
      if (c == 0) return false;
      if (f.kind == GroupKind::Sp && c != 1) return false;
      for (int i = 0; i < f.size; ++i)
        for (int j = 0; j < f.size; ++j) {
          Elem expect = 0;
          if (j == f.size - 1 - i) expect = i < f.size / 2 ? c : F.neg(c);
          if (g(i, j) != expect) return false;
        }
    }
  }
  return true;
}

Elem similitude(const FiniteField& F, const GroupDescriptor& G, const Matrix& x, int factor) {
  if (!G.symplectic(factor)) throw Error(ErrorKind::constraint_violation, "no similitude on this factor");
  const auto& f = G.factors()[factor];
  return gram(F, block(x, f.offset, f.size))(0, f.size - 1);
}

Matrix form_matrix(const FiniteField& F, const GroupDescriptor& G) {
  Matrix omega = zero_matrix(G.dim());
  for (std::size_t fi = 0; fi < G.factors().size(); ++fi) {
    if (!G.symplectic(static_cast<int>(fi))) continue;
    const auto& f = G.factors()[fi];
    for (int a = 0; a < f.size; ++a)
      omega(f.offset + a, f.offset + f.size - 1 - a) = a < f.size / 2 ? 1 : F.neg(1);
  }
  return omega;
}

Matrix root_vector(const FiniteField& F, const GroupDescriptor& G, const Weight& root) {
  auto e = G.root_entry(root);
  Matrix X = zero_matrix(G.dim());
  X(e.row, e.col) = 1;
  if (G.symplectic(G.factor_of(e.row))) {
    int r = G.mirror(e.col), c = G.mirror(e.row);
    if (r != e.row || c != e.col) {
      int s = G.form_sign(G.mirror(e.row)) * G.form_sign(e.col);
      X(r, c) = F.from_int(s);
    }
  }
  return X;
}

Matrix root_element(const FiniteField& F, const GroupDescriptor& G, const Weight& root, Elem t) {
  return add(F, identity_matrix(G.dim()), scale(F, t, root_vector(F, G, root)));
}

Matrix simple_lift(const FiniteField& F, const GroupDescriptor& G, const WeylGroup& W, int i) {
  const Weight& a = W.root_datum().simple_roots().at(i);
  Weight neg = a;
  for (int& v : neg) v = -v;
  Matrix u = root_element(F, G, a, 1);
  return mul(F, mul(F, u, root_element(F, G, neg, F.neg(1))), u);
}

Matrix weyl_lift(const FiniteField& F, const GroupDescriptor& G, const WeylGroup& W, const std::vector<int>& word) {
  Matrix x = identity_matrix(G.dim());
  for (int i : word) x = mul(F, x, simple_lift(F, G, W, i));
  return x;
}

std::vector<Elem> prime_field_basis(const FiniteField& F) {
  std::vector<Elem> out;
  Elem b = 1;
  for (int k = 0; k < F.degree(); ++k) {
    out.push_back(b);
    b *= static_cast<Elem>(F.p());
  }
  return out;
}

std::vector<Matrix> torus_generators(const FiniteField& F, const GroupDescriptor& G) {
  std::vector<Matrix> out;
  Elem z = F.generator();
  if (z == 1) return out;
  Elem zi = F.inv(z);
  for (std::size_t fi = 0; fi < G.factors().size(); ++fi) {
    const auto& f = G.factors()[fi];
    int o = f.offset;
    auto base = identity_matrix(G.dim());
    switch (f.kind) {
      case GroupKind::GL:
        for (int i = 0; i < f.size; ++i) {
          Matrix t = base;
          t(o + i, o + i) = z;
          out.push_back(t);
        }
        break;
      case GroupKind::SL:
        for (int i = 0; i + 1 < f.size; ++i) {
          Matrix t = base;
          t(o + i, o + i) = z;
          t(o + i + 1, o + i + 1) = zi;
          out.push_back(t);
        }
        break;
      case GroupKind::Sp:
      case GroupKind::GSp:
        for (int i = 0; i < f.size / 2; ++i) {
          Matrix t = base;
          t(o + i, o + i) = z;
          t(G.mirror(o + i), G.mirror(o + i)) = zi;
          out.push_back(t);
        }
        if (f.kind == GroupKind::GSp) {
          Matrix t = base;
          for (int i = f.size / 2; i < f.size; ++i) t(o + i, o + i) = z;
          out.push_back(t);
        }
        break;
      case GroupKind::Product: break;
    }
  }
  return out;
}

std::vector<Matrix> torus_points(const FiniteField& F, const GroupDescriptor& G, std::uint64_t limit) {
  // Free parameters per factor, each ranging over F^x.
  int free = 0;
  for (const auto& f : G.factors()) {
    if (f.kind == GroupKind::GL) free += f.size;
    if (f.kind == GroupKind::SL) free += f.size - 1;
    if (f.kind == GroupKind::Sp) free += f.size / 2;
    if (f.kind == GroupKind::GSp) free += f.size / 2 + 1;
  }
  u128 total = upow(F.order() - 1, free);
  if (total > limit) throw Error(ErrorKind::budget_exceeded, "torus too large");
  std::vector<Matrix> out;
  std::vector<std::uint32_t> digits(free, 0);
  const std::uint32_t base = F.order() - 1;
  for (u128 step = 0; step < total; ++step) {
    Matrix t = identity_matrix(G.dim());
    int k = 0;
    for (const auto& f : G.factors()) {
      int o = f.offset;
      if (f.kind == GroupKind::GL || f.kind == GroupKind::SL) {
        Elem prod = 1;
        int n = f.kind == GroupKind::GL ? f.size : f.size - 1;
        for (int i = 0; i < n; ++i) {
          t(o + i, o + i) = F.exp(digits[k++]);
          prod = F.mul(prod, t(o + i, o + i));
        }
        if (f.kind == GroupKind::SL) t(o + f.size - 1, o + f.size - 1) = F.inv(prod);
      } else {
        int r = f.size / 2;
        std::vector<Elem> ts(r);
        for (int i = 0; i < r; ++i) ts[i] = F.exp(digits[k++]);
        Elem c = f.kind == GroupKind::GSp ? F.exp(digits[k++]) : 1;
        for (int i = 0; i < r; ++i) {
          t(o + i, o + i) = ts[i];
          t(G.mirror(o + i), G.mirror(o + i)) = F.div(c, ts[i]);
        }
      }
    }
    out.push_back(t);
    for (int i = 0; i < free; ++i) {
      if (++digits[i] < base) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<Matrix> group_generators(const FiniteField& F, const GroupDescriptor& G) {
  std::vector<Matrix> out = torus_generators(F, G);
  WeylGroup W(G.root_datum());
  for (const auto& a : W.root_datum().simple_roots()) {
    Weight neg = a;
    for (int& v : neg) v = -v;
    for (Elem t : prime_field_basis(F)) {
      out.push_back(root_element(F, G, a, t));
      out.push_back(root_element(F, G, neg, t));
    }
  }
  return out;
}

std::vector<std::uint64_t> enumerate_group(const FiniteField& F, const GroupDescriptor& G, const Budget& budget) {
  u128 order = group_order(G, F.order());
  if (order > budget.max_elements)
    throw Error(ErrorKind::budget_exceeded, G.name() + " over GF(" + std::to_string(F.order()) + ") has too many elements");
  if (!packable(F, G.dim())) throw Error(ErrorKind::budget_exceeded, "points do not fit a 64-bit key");
  auto gens = group_generators(F, G);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(order) * 2);
  std::vector<Matrix> frontier{identity_matrix(G.dim())};
  seen.insert(pack(F, frontier[0]));
  std::vector<std::uint64_t> keys{pack(F, frontier[0])};
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Matrix h = mul(F, g, s);
        auto k = pack(F, h);
        if (seen.insert(k).second) {
          keys.push_back(k);
          next.push_back(h);
        }
      }
    frontier.swap(next);
  }
  if (keys.size() != order)
    throw Error(ErrorKind::constraint_violation, "generated " + std::to_string(keys.size()) + " elements, expected " +
                                                     std::to_string(static_cast<std::uint64_t>(order)));
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace zipstrata
