#include "zipstrata/matrix.hpp"

#include <limits>
#include <utility>

namespace zipstrata {

bool Matrix::operator==(const Matrix& o) const {
  if (n != o.n) return false;
  for (int i = 0; i < n * n; ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

Matrix zero_matrix(int n) {
  if (n < 1 || n > kMaxDim) throw Error(ErrorKind::unsupported_group, "matrix size " + std::to_string(n));
  Matrix m;
  m.n = n;
  return m;
}

Matrix identity_matrix(int n) {
  Matrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix mul(const FiniteField& F, const Matrix& x, const Matrix& y) {
  const int n = x.n;
  Matrix z;
  z.n = n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Elem c = x.a[i * n + k];
      if (!c) continue;
      for (int j = 0; j < n; ++j) {
        Elem d = y.a[k * n + j];
        if (d) z.a[i * n + j] = F.add(z.a[i * n + j], F.mul(c, d));
      }
    }
  }
  return z;
}

Matrix add(const FiniteField& F, const Matrix& x, const Matrix& y) {
  Matrix z = x;
  for (int i = 0; i < x.n * x.n; ++i) z.a[i] = F.add(x.a[i], y.a[i]);
  return z;
}

Matrix sub(const FiniteField& F, const Matrix& x, const Matrix& y) {
  Matrix z = x;
  for (int i = 0; i < x.n * x.n; ++i) z.a[i] = F.sub(x.a[i], y.a[i]);
  return z;
}

Matrix scale(const FiniteField& F, Elem c, const Matrix& x) {
  Matrix z = x;
  for (int i = 0; i < x.n * x.n; ++i) z.a[i] = F.mul(c, x.a[i]);
  return z;
}

Matrix transpose(const Matrix& x) {
  Matrix z = x;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) z(i, j) = x(j, i);
  return z;
}

Elem determinant(const FiniteField& F, const Matrix& x) {
  Matrix m = x;
  const int n = m.n;
  Elem det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    Elem inv = F.inv(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (!m(r, c)) continue;
      Elem f = F.mul(m(r, c), inv);
      for (int j = c; j < n; ++j) m(r, j) = F.sub(m(r, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const FiniteField& F, const Matrix& x) {
  const int n = x.n;
  Matrix m = x;
  Matrix r = identity_matrix(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(r(c, j), r(piv, j));
      }
    Elem inv = F.inv(m(c, c));
    for (int j = 0; j < n; ++j) {
      m(c, j) = F.mul(m(c, j), inv);
      r(c, j) = F.mul(r(c, j), inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || !m(i, c)) continue;
      Elem f = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
        r(i, j) = F.sub(r(i, j), F.mul(f, r(c, j)));
      }
    }
  }
  return r;
}

Matrix frobenius(const FiniteField& F, const Matrix& x) {
  Matrix z = x;
  for (int i = 0; i < x.n * x.n; ++i) z.a[i] = F.frobenius(x.a[i]);
  return z;
}

Matrix map_entries(const Matrix& x, const std::vector<Elem>& map) {
  Matrix z = x;
  for (int i = 0; i < x.n * x.n; ++i) z.a[i] = map.at(x.a[i]);
  return z;
}

Matrix from_ints(const FiniteField& F, int n, const std::vector<long long>& rows) {
  if (static_cast<int>(rows.size()) != n * n) throw Error(ErrorKind::constraint_violation, "entry count");
  Matrix z = zero_matrix(n);
  for (int i = 0; i < n * n; ++i) z.a[i] = F.from_int(rows[i]);
  return z;
}

std::string to_string(const FiniteField& F, const Matrix& x) {
  std::string s = "[";
  for (int i = 0; i < x.n; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < x.n; ++j) {
      if (j) s += " ";
      s += F.to_string(x(i, j));
    }
  }
  return s + "]";
}

bool packable(const FiniteField& F, int n) {
  long double bits = 0;
  unsigned long long q = F.order();
  int b = 0;
  while ((1ull << b) < q) ++b;
  bits = static_cast<long double>(n) * n * b;
  if (bits <= 64) return true;
  long double total = 1;
  for (int i = 0; i < n * n; ++i) total *= static_cast<long double>(q);
  return total <= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()) + 1.0L;
}

std::uint64_t pack(const FiniteField& F, const Matrix& x) {
  std::uint64_t k = 0;
  const std::uint64_t q = F.order();
  for (int i = 0; i < x.n * x.n; ++i) k = k * q + x.a[i];
  return k;
}

Matrix unpack(const FiniteField& F, int n, std::uint64_t key) {
  Matrix z = zero_matrix(n);
  const std::uint64_t q = F.order();
  for (int i = n * n - 1; i >= 0; --i) {
    z.a[i] = static_cast<Elem>(key % q);
    key /= q;
  }
  return z;
}

std::vector<std::uint8_t> fingerprint(const FiniteField& F, const Matrix& x) {
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(x.n) * x.n * F.degree());
  for (int i = 0; i < x.n * x.n; ++i)
    for (int c : F.coefficients(x.a[i])) out.push_back(static_cast<std::uint8_t>(c));
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const FiniteField& F, std::vector<std::vector<Elem>>& A, int cols) {
  std::vector<int> pivots;
  int row = 0;
  const int rows = static_cast<int>(A.size());
  for (int c = 0; c < cols && row < rows; ++c) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (A[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[row], A[piv]);
    Elem inv = F.inv(A[row][c]);
    for (int j = c; j < cols; ++j) A[row][j] = F.mul(A[row][j], inv);
    for (int r = 0; r < rows; ++r) {
      if (r == row || !A[r][c]) continue;
      Elem f = A[r][c];
      for (int j = c; j < cols; ++j)
        if (A[row][j]) A[r][j] = F.sub(A[r][j], F.mul(f, A[row][j]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Elem>> kernel_basis(const FiniteField& F, std::vector<std::vector<Elem>> A, int cols) {
  auto pivots = rref(F, A, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(A[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

int rank_of(const FiniteField& F, std::vector<std::vector<Elem>> A, int cols) {
  return static_cast<int>(rref(F, A, cols).size());
}

}  // namespace zipstrata
