#include "zipstrata/hasse.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "zipstrata/error.hpp"

namespace zipstrata {

namespace {

Elem power(const FiniteField& F, Elem a, long long e) {
  if (e < 0) return F.pow(F.inv(a), -e);
  return F.pow(a, e);
}

std::string character_text(const Character& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.weights.size(); ++i) s += (i ? "," : "") + std::to_string(c.weights[i]);
  return s + "; " + std::to_string(c.similitude) + ")";
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

int gsp_factor_count(const GroupDescriptor& G) {
  int k = 0;
  for (const auto& f : G.factors()) k += f.kind == GroupKind::GSp;
  return k;
}

}  // namespace

Character trivial_character(const ZipDatum& zd) { return Character{std::vector<int>(zd.group.dim(), 0), 0}; }

Character operator+(const Character& a, const Character& b) {
  if (a.weights.size() != b.weights.size()) throw Error(ErrorKind::not_a_character, "size mismatch");
  Character c = a;
  for (std::size_t i = 0; i < c.weights.size(); ++i) c.weights[i] += b.weights[i];
  c.similitude += b.similitude;
  return c;
}

Character operator-(const Character& a) { return scaled(a, -1); }

Character scaled(const Character& a, int k) {
  Character c = a;
  for (int& w : c.weights) w *= k;
  c.similitude *= k;
  return c;
}

std::vector<std::vector<int>> levi_blocks(const ZipDatum& zd) {
  const auto& G = zd.group;
  std::vector<std::vector<int>> blocks;
  for (const auto& f : G.factors()) {
    std::vector<int> current;
    for (int a = f.offset; a < f.offset + f.size; ++a) {
      if (!current.empty() && zd.chi.weights[a] != zd.chi.weights[current.back()]) {
        blocks.push_back(current);
        current.clear();
      }
      current.push_back(a);
    }
    blocks.push_back(current);
  }
  return blocks;
}

void check_character(const ZipDatum& zd, const Character& lambda) {
  if (static_cast<int>(lambda.weights.size()) != zd.group.dim())
    throw Error(ErrorKind::not_a_character, "expected " + std::to_string(zd.group.dim()) + " weights");
  if (lambda.similitude != 0 && gsp_factor_count(zd.group) == 0)
    throw Error(ErrorKind::not_a_character, "similitude weight on a group without similitude");
  for (const auto& b : levi_blocks(zd))
    for (int a : b)
      if (lambda.weights[a] != lambda.weights[b.front()])
        throw Error(ErrorKind::not_a_character, character_text(lambda) + " is not constant on a Levi block");
}

std::vector<Character> character_lattice(const ZipDatum& zd) {
  const auto& G = zd.group;
  auto blocks = levi_blocks(zd);
  std::vector<Character> basis;
  for (std::size_t fi = 0; fi < G.factors().size(); ++fi) {
    const auto& f = G.factors()[fi];
    std::vector<const std::vector<int>*> mine;
    for (const auto& b : blocks)
      if (G.factor_of(b.front()) == static_cast<int>(fi)) mine.push_back(&b);
    // SL: the product of all block determinants is trivial; Sp: mirror blocks are inverse.
    std::size_t take = mine.size();
    if (f.kind == GroupKind::SL) take = mine.size() - 1;
    for (std::size_t i = 0; i < take; ++i) {
      const auto& b = *mine[i];
      if (G.symplectic(static_cast<int>(fi))) {
        int mir = G.mirror(b.front());
        if (mir <= b.front() || std::find(b.begin(), b.end(), mir) != b.end()) continue;
      }
      Character c = trivial_character(zd);
      for (int a : b) c.weights[a] = 1;
      basis.push_back(c);
    }
  }
  if (gsp_factor_count(G) > 0) {
    Character c = trivial_character(zd);
    c.similitude = 1;
    basis.push_back(c);
  }
  return basis;
}

std::pair<Weight, int> torus_weight(const ZipDatum& zd, const Character& lambda) {
  check_character(zd, lambda);
  const auto& G = zd.group;
  Weight eps(G.eps_dim(), 0);
  int sim = lambda.similitude * gsp_factor_count(G);
  for (int a = 0; a < G.dim(); ++a) {
    Weight w = G.coordinate_weight(a);
    for (int k = 0; k < G.eps_dim(); ++k) eps[k] += lambda.weights[a] * w[k];
    int fi = G.factor_of(a);
    if (G.factors()[fi].kind == GroupKind::GSp && a - G.factors()[fi].offset >= G.factors()[fi].size / 2)
      sim += lambda.weights[a];
  }
  for (const auto& f : G.factors()) {
    if (f.kind != GroupKind::SL) continue;
    int last = eps[f.eps_offset + f.size - 1];
    for (int k = 0; k < f.size; ++k) eps[f.eps_offset + k] -= last;
  }
  return {eps, sim};
}

bool same_character(const ZipDatum& zd, const Character& a, const Character& b) {
  return torus_weight(zd, a) == torus_weight(zd, b);
}

int coroot_pairing(const ZipDatum& zd, const Character& lambda, int simple_index) {
  auto [eps, sim] = torus_weight(zd, lambda);
  (void)sim;
  return dot(eps, zd.W().root_datum().simple_coroots().at(simple_index));
}

Elem evaluate_on_levi(const ZipContext& ctx, const Character& lambda, const Matrix& l) {
  const auto& F = ctx.field();
  const auto& zd = ctx.datum();
  Elem v = 1;
  for (const auto& b : levi_blocks(zd)) {
    int w = lambda.weights[b.front()];
    if (w == 0) continue;
    Matrix sub = zero_matrix(static_cast<int>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) sub(i, j) = l(b[i], b[j]);
    Elem d = determinant(F, sub);
    if (d == 0) throw Error(ErrorKind::division_by_zero, "singular Levi block");
    v = F.mul(v, power(F, d, w));
  }
  if (lambda.similitude != 0)
    for (std::size_t fi = 0; fi < zd.group.factors().size(); ++fi)
      if (zd.group.factors()[fi].kind == GroupKind::GSp)
        v = F.mul(v, power(F, similitude(F, zd.group, l, static_cast<int>(fi)), lambda.similitude));
  return v;
}

Elem evaluate_character(const ZipContext& ctx, const Character& lambda, const ZipPair& e) {
  return evaluate_on_levi(ctx, lambda, ctx.levi(e.x));
}

bool is_ample(const Character& lambda, const ZipDatum& zd) {
  check_character(zd, lambda);
  bool any = false;
  for (int i = 0; i < zd.W().rank(); ++i) {
    if (zd.levi_type.contains(i)) continue;
    any = true;
    if (coroot_pairing(zd, lambda, i) <= 0) return false;
  }
  return any;
}

Character hodge_character(const ZipDatum& zd) {
  const auto& G = zd.group;
  if (G.factors().size() != 1) throw Error(ErrorKind::no_siegel_target, G.name() + " needs an embedding");
  const auto& f = G.factors()[0];
  bool siegel_like = f.kind == GroupKind::Sp || f.kind == GroupKind::GSp || f.size == 2;
  if (!siegel_like) throw Error(ErrorKind::no_siegel_target, G.name() + " is not symplectic");
  int top = *std::max_element(zd.chi.weights.begin(), zd.chi.weights.end());
  Character c = trivial_character(zd);
  for (int a = 0; a < G.dim(); ++a) c.weights[a] = zd.chi.weights[a] == top;
  check_character(zd, c);
  return c;
}

ExponentCertificate exponent_lower_bound(const ZipDatum& zd, const Stratum& s, const Character& lambda, int m_max,
                                         const Budget& budget) {
  if (m_max < 1) throw Error(ErrorKind::config_error, "m_max must be at least 1");
  check_character(zd, lambda);
  ExponentCertificate cert;
  cert.stratum = s.index;
  cert.lambda = lambda;
  for (int m = 1; m <= m_max; ++m) {
    ZipContext ctx(zd, FiniteField::get(zd.p, m));
    const auto& F = ctx.field();
    Matrix rep = ctx.representative(s);
    std::uint64_t n = 1;
    ctx.solve(rep, rep,
              [&](const ZipPair& e) {
                n = lcm64(n, F.multiplicative_order(evaluate_character(ctx, lambda, e)));
                return true;
              },
              budget);
    cert.depths_used.push_back(m);
    cert.per_depth.push_back(n);
    cert.lower_bound = lcm64(cert.lower_bound, n);
  }
  bool trivial = std::all_of(lambda.weights.begin(), lambda.weights.end(), [](int w) { return w == 0; }) &&
                 lambda.similitude == 0;
  if (trivial) {
    cert.stabilized = true;
  } else if (m_max >= 2) {
    std::uint64_t before = 1;
    for (int i = 0; i + 1 < m_max; ++i) before = lcm64(before, cert.per_depth[i]);
    cert.stabilized = before == cert.lower_bound;
  }
  return cert;
}

std::uint64_t SectionTable::checksum() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : values) {
    mix(k);
    mix(v);
  }
  return h;
}

std::optional<Elem> SectionTable::value(std::uint64_t key) const {
  auto it = std::lower_bound(values.begin(), values.end(), std::make_pair(key, Elem{0}));
  if (it == values.end() || it->first != key) return std::nullopt;
  return it->second;
}

namespace {

[[noreturn]] void throw_witness(const ZipContext& ctx, const Character& lambda, long long n, const Matrix& rep,
                                const Budget& budget) {
  const auto& F = ctx.field();
  std::optional<ZipPair> bad;
  Elem v = 1;
  ctx.solve(rep, rep,
            [&](const ZipPair& e) {
              Elem x = power(F, evaluate_character(ctx, lambda, e), n);
              if (x == 1) return true;
              bad = e;
              v = x;
              return false;
            },
            budget);
  if (!bad) throw Error(ErrorKind::constraint_violation, "inconsistent section without a stabilizer witness");
  Matrix one = identity_matrix(ctx.dim());
  throw IllDefinedSection(ZipPair{one, one}, *bad, 1, v,
                          "lambda^" + std::to_string(n) + " is nontrivial on the stabilizer: value " + F.to_string(v));
}

}  // namespace

SectionTable build_section(const ZipDatum& zd, const Stratum& s, const Character& lambda, long long n, int m,
                           const Budget& budget) {
  check_character(zd, lambda);
  ZipContext ctx(zd, FiniteField::get(zd.p, m));
  const auto& F = ctx.field();
  Matrix rep = ctx.representative(s);
  std::vector<Elem> gen_value;
  for (const auto& g : ctx.generators()) gen_value.push_back(power(F, evaluate_character(ctx, lambda, g.e), n));
  std::unordered_map<std::uint64_t, Elem> f{{pack(F, rep), 1}};
  std::vector<std::pair<Matrix, Elem>> frontier{{rep, 1}};
  std::uint64_t actions = 0;
  while (!frontier.empty()) {
    std::vector<std::pair<Matrix, Elem>> next;
    for (const auto& [g, v] : frontier)
      for (std::size_t k = 0; k < ctx.generators().size(); ++k) {
        if (++actions > budget.max_actions) throw Error(ErrorKind::budget_exceeded, "section propagation");
        Matrix h = ctx.apply(ctx.generators()[k], g);
        Elem hv = F.mul(gen_value[k], v);
        auto [it, fresh] = f.emplace(pack(F, h), hv);
        if (fresh) {
          if (f.size() > budget.max_elements) throw Error(ErrorKind::budget_exceeded, "orbit too large");
          next.emplace_back(h, hv);
        } else if (it->second != hv) {
          throw_witness(ctx, lambda, n, rep, budget);
        }
      }
    frontier.swap(next);
  }
  SectionTable t;
  t.stratum = s.index;
  t.lambda = lambda;
  t.n = n;
  t.p = zd.p;
  t.m = m;
  t.values.assign(f.begin(), f.end());
  std::sort(t.values.begin(), t.values.end());
  return t;
}

SectionTable build_section_from(const ZipDatum& zd, const Stratum& s, const Character& lambda, long long n, int m,
                                const ZipPair& e0, const Budget& budget) {
  check_character(zd, lambda);
  ZipContext ctx(zd, FiniteField::get(zd.p, m));
  const auto& F = ctx.field();
  if (!ctx.is_element(e0)) throw Error(ErrorKind::constraint_violation, "base change is not in E");
  Matrix base = ctx.act(e0, ctx.representative(s));
  auto all = ctx.enumerate(budget);
  std::unordered_map<std::uint64_t, std::pair<Elem, std::size_t>> f;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Elem v = power(F, evaluate_character(ctx, lambda, all[i]), n);
    auto [it, fresh] = f.emplace(pack(F, ctx.act(all[i], base)), std::make_pair(v, i));
    if (!fresh && it->second.first != v)
      throw IllDefinedSection(all[it->second.second], all[i], it->second.first, v,
                              "two elements move the base point to the same point with different values");
  }
  SectionTable t;
  t.stratum = s.index;
  t.lambda = lambda;
  t.n = n;
  t.p = zd.p;
  t.m = m;
  for (const auto& [k, v] : f) t.values.emplace_back(k, v.first);
  std::sort(t.values.begin(), t.values.end());
  return t;
}

SectionCheck check_section(const ZipDatum& zd, const SectionTable& t, const Budget& budget) {
  ZipContext ctx(zd, FiniteField::get(zd.p, t.m));
  const auto& F = ctx.field();
  const int n = ctx.dim();
  SectionCheck c;
  for (const auto& [k, v] : t.values)
    if (v == 0) c.non_vanishing = false;
  auto all = ctx.enumerate(budget);
  if (static_cast<long double>(all.size()) * t.values.size() > static_cast<long double>(budget.max_actions))
    throw Error(ErrorKind::budget_exceeded, "exhaustive equivariance check");
  for (const auto& e : all) {
    Elem le = power(F, evaluate_character(ctx, t.lambda, e), t.n);
    Matrix yinv = *inverse(F, e.y);
    for (const auto& [k, v] : t.values) {
      Matrix h = mul(F, mul(F, e.x, unpack(F, n, k)), yinv);
      auto fv = t.value(pack(F, h));
      ++c.pairs_checked;
      if (!fv || *fv != F.mul(le, v)) c.equivariant = false;
    }
  }
  std::vector<Elem> gen_value;
  for (const auto& g : ctx.generators()) gen_value.push_back(power(F, evaluate_character(ctx, t.lambda, g.e), t.n));
  for (auto k : enumerate_group(F, zd.group, budget)) {
    Matrix g = unpack(F, n, k);
    Elem fg = t.value(k).value_or(0);
    for (std::size_t i = 0; i < ctx.generators().size(); ++i) {
      Elem fh = t.value(pack(F, ctx.apply(ctx.generators()[i], g))).value_or(0);
      if (fh != F.mul(gen_value[i], fg)) c.extension_by_zero = false;
    }
    ++c.points_checked;
  }
  return c;
}

std::optional<Elem> proportionality(const FiniteField& F, const SectionTable& a, const SectionTable& b) {
  if (a.values.size() != b.values.size() || a.values.empty()) return std::nullopt;
  std::optional<Elem> c;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i].first != b.values[i].first || a.values[i].second == 0) return std::nullopt;
    Elem r = F.div(b.values[i].second, a.values[i].second);
    if (c && *c != r) return std::nullopt;
    c = r;
  }
  return c;
}

}  // namespace zipstrata
