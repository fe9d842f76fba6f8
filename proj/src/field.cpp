#include "zipstrata/field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace zipstrata {

namespace {

constexpr Elem kMaxOrder = 1u << 22;

using Poly = std::vector<int>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  int lead_inv = 1;
  for (int x = 1; x < p; ++x)
    if ((b.back() * x) % p == 1) lead_inv = x;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    int c = (a.back() * lead_inv) % p;
    for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<int>& low, int p) {
  int m = static_cast<int>(low.size());
  if (m == 0) return false;
  Poly f(low.begin(), low.end());
  f.push_back(1);
  // Trial division by every monic polynomial of degree 1..m/2.
  for (int d = 1; 2 * d <= m; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> least_irreducible(int p, int m) {
  long long count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    // code read with c_{m-1} as the most significant digit.
    std::vector<int> low(m, 0);
    long long c = code;
    for (int i = 0; i < m; ++i) {
      low[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (is_irreducible_mod_p(low, p)) return low;
  }
  throw Error(ErrorKind::invalid_field, "no irreducible polynomial");
}

FiniteField::FiniteField(int p, int m) : p_(p), m_(m) {
  if (!is_prime(p) || m < 1) throw Error(ErrorKind::invalid_field, "GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
  unsigned long long q = 1;
  for (int i = 0; i < m; ++i) {
    q *= static_cast<unsigned long long>(p);
    if (q > kMaxOrder) throw Error(ErrorKind::budget_exceeded, "field of order above 2^22");
  }
  q_ = static_cast<Elem>(q);
  modulus_ = least_irreducible(p, m);
  pow_p_.resize(m + 1);
  pow_p_[0] = 1;
  for (int i = 1; i <= m; ++i) pow_p_[i] = pow_p_[i - 1] * p;

  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    auto c = coefficients(a);
    for (int& x : c) x = (p - x) % p;
    neg_[a] = from_coefficients(c);
  }
  if (p != 2 && q_ <= 729) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) add_[static_cast<std::size_t>(a) * q_ + b] = add_slow(a, b);
  }

  // Least primitive element.
  auto factors = prime_factors(static_cast<long long>(q_) - 1);
  auto slow_pow = [&](Elem a, unsigned long long e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = poly_mul(r, a);
      a = poly_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  gen_ = 0;
  for (Elem g = 1; g < q_; ++g) {
    bool primitive = true;
    for (long long r : factors)
      if (slow_pow(g, (q_ - 1) / r) == 1) primitive = false;
    if (primitive) {
      gen_ = g;
      break;
    }
  }
  if (q_ == 2) gen_ = 1;
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Elem x = 1;
  for (Elem k = 0; k + 1 < q_; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = poly_mul(x, gen_);
  }
  if (q_ <= 256) {
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem v = 0;
        if (a && b) {
          std::uint32_t k = (log_[a] + log_[b]) % (q_ - 1);
          v = exp_[k];
        }
        mul_[static_cast<std::size_t>(a) * q_ + b] = v;
      }
  }
  frob_.resize(q_);
  for (Elem a = 0; a < q_; ++a) frob_[a] = pow(a, p);
}

FieldPtr FiniteField::get(int p, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FiniteField>(p, m);
  cache.emplace(key, f);
  return f;
}

Elem FiniteField::add_slow(Elem a, Elem b) const {
  Elem out = 0;
  for (int i = 0; i < m_; ++i) {
    Elem d = (a % p_ + b % p_) % p_;
    out += d * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem FiniteField::poly_mul(Elem a, Elem b) const {
  auto ca = coefficients(a), cb = coefficients(b);
  std::vector<int> prod(2 * m_, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  for (int k = 2 * m_ - 1; k >= m_; --k) {
    int c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (int i = 0; i < m_; ++i) prod[k - m_ + i] = ((prod[k - m_ + i] - c * modulus_[i]) % p_ + p_) % p_;
  }
  prod.resize(m_);
  return from_coefficients(prod);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::division_by_zero, "inverse of zero");
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FiniteField::pow(Elem a, long long e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorKind::division_by_zero, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long n = q_ - 1;
  long long k = (static_cast<long long>(log_[a]) * (((e % n) + n) % n)) % n;
  return exp_[k];
}

Elem FiniteField::from_int(long long v) const {
  long long r = ((v % p_) + p_) % p_;
  return static_cast<Elem>(r);
}

std::uint32_t FiniteField::log(Elem a) const {
  if (a == 0) throw Error(ErrorKind::division_by_zero, "log of zero");
  return log_[a];
}

Elem FiniteField::exp(long long k) const {
  long long n = q_ - 1;
  return exp_[((k % n) + n) % n];
}

std::uint64_t FiniteField::multiplicative_order(Elem a) const {
  if (a == 0) throw Error(ErrorKind::division_by_zero, "order of zero");
  std::uint64_t n = q_ - 1;
  return n / std::gcd<std::uint64_t>(n, log_[a]);
}

std::vector<int> FiniteField::coefficients(Elem a) const {
  std::vector<int> c(m_, 0);
  for (int i = 0; i < m_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

Elem FiniteField::from_coefficients(const std::vector<int>& c) const {
  Elem out = 0;
  for (int i = m_ - 1; i >= 0; --i) {
    int x = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
    out = out * p_ + x;
  }
  return out;
}

std::string FiniteField::to_string(Elem a) const {
  if (a == 0) return "0";
  auto c = coefficients(a);
  std::string s;
  for (int i = m_ - 1; i >= 0; --i) {
    if (!c[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

const std::vector<Elem>& subfield_embedding(const FiniteField& sub, const FiniteField& super) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<Elem>> cache;
  if (sub.p() != super.p() || super.degree() % sub.degree() != 0)
    throw Error(ErrorKind::invalid_field, "not a subfield");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(sub.p(), sub.degree(), super.degree());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // Least root of the subfield modulus inside the larger field.
  Elem beta = 0;
  bool found = false;
  for (Elem b = 0; b < super.order() && !found; ++b) {
    Elem v = 1;
    for (int i = sub.degree() - 1; i >= 0; --i) v = super.add(super.mul(v, b), super.from_int(sub.modulus()[i]));
    if (v == 0) {
      beta = b;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::invalid_field, "no root of the subfield modulus");
  std::vector<Elem> map(sub.order());
  for (Elem a = 0; a < sub.order(); ++a) {
    auto c = sub.coefficients(a);
    Elem v = 0;
    for (int i = sub.degree() - 1; i >= 0; --i) v = super.add(super.mul(v, beta), super.from_int(c[i]));
    map[a] = v;
  }
  return cache.emplace(key, std::move(map)).first->second;
}

}  // namespace zipstrata
