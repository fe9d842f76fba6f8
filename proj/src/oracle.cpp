#include "zipstrata/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "zipstrata/error.hpp"

namespace zipstrata {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

bool is_identity(const Matrix& x) { return x == identity_matrix(x.n); }

std::uint32_t index_of(const std::vector<std::uint64_t>& keys, std::uint64_t k) {
  auto it = std::lower_bound(keys.begin(), keys.end(), k);
  if (it == keys.end() || *it != k) throw Error(ErrorKind::constraint_violation, "point outside G(F_q)");
  return static_cast<std::uint32_t>(it - keys.begin());
}

void split_p_part(std::uint64_t order, int p, std::uint64_t& pp, std::uint64_t& rest) {
  pp = 1;
  rest = order;
  while (rest && rest % p == 0) {
    rest /= p;
    pp *= p;
  }
}

}  // namespace

std::uint64_t points_checksum(const FiniteField& F, int n, const std::vector<std::uint64_t>& sorted_keys) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto k : sorted_keys) {
    for (auto b : fingerprint(F, unpack(F, n, k))) {
      h ^= b;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

OrbitRecord orbit_points(const ZipDatum& zd, const Stratum& s, int m, const Budget& budget,
                         std::uint64_t retain_limit) {
  ZipContext ctx(zd, FiniteField::get(zd.p, m));
  const auto& F = ctx.field();
  if (!packable(F, ctx.dim())) throw Error(ErrorKind::budget_exceeded, "points do not fit a 64-bit key");
  Matrix rep = ctx.representative(s);
  std::unordered_set<std::uint64_t> seen{pack(F, rep)};
  std::vector<Matrix> frontier{rep};
  std::uint64_t actions = 0;
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& g : frontier)
      for (const auto& gen : ctx.generators()) {
        if (++actions > budget.max_actions) throw Error(ErrorKind::budget_exceeded, "orbit closure");
        Matrix h = ctx.apply(gen, g);
        if (seen.insert(pack(F, h)).second) {
          if (seen.size() > budget.max_elements) throw Error(ErrorKind::budget_exceeded, "orbit too large");
          next.push_back(h);
        }
      }
    frontier.swap(next);
  }
  OrbitRecord rec;
  rec.stratum = s.index;
  rec.m = m;
  rec.size = seen.size();
  std::vector<std::uint64_t> keys(seen.begin(), seen.end());
  std::sort(keys.begin(), keys.end());
  rec.checksum = points_checksum(F, ctx.dim(), keys);
  if (rec.size <= retain_limit) rec.keys = std::move(keys);
  return rec;
}

StabilizerRecord stabilizer(const ZipContext& ctx, const Matrix& g, const Budget& budget) {
  StabilizerRecord rec;
  rec.m = ctx.field().degree();
  std::unordered_set<std::uint64_t> levis;
  const auto& F = ctx.field();
  rec.solution_dim = ctx.solve(g, g,
                               [&](const ZipPair& e) {
                                 ++rec.order;
                                 Matrix l = ctx.levi(e.x);
                                 if (levis.size() < budget.max_elements && levis.insert(pack(F, l)).second)
                                   rec.levi_parts.push_back(l);
                                 return true;
                               },
                               budget);
  split_p_part(rec.order, F.p(), rec.p_part, rec.prime_to_p_part);
  return rec;
}

StabilizerRecord stabilizer(const ZipDatum& zd, const Stratum& s, int m, const Budget& budget) {
  ZipContext ctx(zd, FiniteField::get(zd.p, m));
  return stabilizer(ctx, ctx.representative(s), budget);
}

int ClassificationReport::label_of(const FiniteField& F, const Matrix& g) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), pack(F, g));
  if (it == keys.end() || *it != pack(F, g)) throw Error(ErrorKind::constraint_violation, "point outside G(F_q)");
  return labels[it - keys.begin()];
}

ClassificationReport classify_all(const ZipDatum& zd, int m, const ClassifyOptions& options) {
  if (options.r_max < 1) throw Error(ErrorKind::config_error, "r_max must be at least 1");
  auto Fptr = FiniteField::get(zd.p, m);
  const auto& F = *Fptr;
  ZipContext ctx(zd, Fptr);
  const int n = ctx.dim();
  ClassificationReport rep;
  rep.m = m;
  rep.r_max = options.r_max;
  rep.keys = enumerate_group(F, zd.group, options.budget);
  rep.total_points = rep.keys.size();
  rep.zip_group_order = checked_u64(ctx.order(options.budget));
  const auto& keys = rep.keys;

  const std::uint64_t actions = keys.size() * ctx.generators().size();
  if (actions > options.budget.max_actions) throw Error(ErrorKind::budget_exceeded, "classification actions");
  UnionFind uf(keys.size());
  std::vector<char> left_id, right_id;
  for (const auto& gen : ctx.generators()) {
    left_id.push_back(is_identity(gen.e.x));
    right_id.push_back(is_identity(gen.y_inv));
  }
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    Matrix g = unpack(F, n, keys[i]);
    for (std::size_t k = 0; k < ctx.generators().size(); ++k) {
      const auto& gen = ctx.generators()[k];
      Matrix h = left_id[k] ? g : mul(F, gen.e.x, g);
      if (!right_id[k]) h = mul(F, h, gen.y_inv);
      uf.unite(i, index_of(keys, pack(F, h)));
    }
  }
  // Classes indexed by their least point.
  std::vector<std::uint32_t> root(keys.size());
  std::vector<std::uint32_t> class_of(keys.size());
  std::vector<std::uint32_t> class_first;
  std::vector<std::uint64_t> class_size;
  std::vector<std::int64_t> root_to_class(keys.size(), -1);
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    std::uint32_t r = uf.find(i);
    if (root_to_class[r] < 0) {
      root_to_class[r] = static_cast<std::int64_t>(class_first.size());
      class_first.push_back(i);
      class_size.push_back(0);
    }
    class_of[i] = static_cast<std::uint32_t>(root_to_class[r]);
    ++class_size[class_of[i]];
  }
  rep.orbit_count = class_first.size();
  std::vector<int> label(class_first.size(), -1);
  std::vector<Resolution> how(class_first.size(), Resolution::none);

  auto strata = enumerate_strata(zd);
  std::vector<Matrix> reps;
  for (const auto& s : strata) reps.push_back(ctx.representative(s));
  auto assign = [&](std::uint32_t c, int s, Resolution r) {
    if (label[c] >= 0 && label[c] != s)
      throw Error(ErrorKind::representative_collision,
                  "strata " + std::to_string(label[c]) + " and " + std::to_string(s) + " meet");
    if (label[c] < 0) {
      label[c] = s;
      how[c] = r;
    }
  };
  for (std::size_t s = 0; s < strata.size(); ++s)
    assign(class_of[index_of(keys, pack(F, reps[s]))], static_cast<int>(s), Resolution::representative);
  if (options.torus_seeds) {
    auto torus = torus_points(F, zd.group, options.budget.max_elements);
    for (std::size_t s = 0; s < strata.size(); ++s)
      for (const auto& t : torus)
        assign(class_of[index_of(keys, pack(F, mul(F, t, reps[s])))], static_cast<int>(s), Resolution::torus_seed);
  }
  auto unresolved_points = [&] {
    std::uint64_t u = 0;
    for (std::size_t c = 0; c < label.size(); ++c)
      if (label[c] < 0) u += class_size[c];
    return u;
  };
  rep.unresolved_by_depth.push_back(unresolved_points());

  for (int r = 2; r <= options.r_max; ++r) {
    if (rep.unresolved_by_depth.back() == 0) {
      rep.unresolved_by_depth.push_back(0);
      continue;
    }
    rep.extension_depth_used = r;
    auto Lptr = FiniteField::get(zd.p, m * r);
    ZipContext big(zd, Lptr);
    const auto& emb = subfield_embedding(F, *Lptr);
    std::vector<Matrix> big_reps;
    for (const auto& s : strata) big_reps.push_back(big.representative(s));
    for (std::size_t c = 0; c < label.size(); ++c) {
      if (label[c] >= 0) continue;
      Matrix g = map_entries(unpack(F, n, keys[class_first[c]]), emb);
      int hit = -1;
      for (std::size_t s = 0; s < strata.size(); ++s) {
        if (!big.find_element(g, big_reps[s], options.budget)) continue;
        if (hit >= 0)
          throw Error(ErrorKind::representative_collision,
                      "strata " + std::to_string(hit) + " and " + std::to_string(s) + " meet");
        hit = static_cast<int>(s);
      }
      if (hit >= 0) assign(static_cast<std::uint32_t>(c), hit, Resolution::extension);
    }
    rep.unresolved_by_depth.push_back(unresolved_points());
  }

  rep.per_stratum_counts.assign(strata.size(), 0);
  rep.labels.assign(keys.size(), -1);
  for (std::uint32_t i = 0; i < keys.size(); ++i) rep.labels[i] = static_cast<std::int8_t>(label[class_of[i]]);
  for (std::size_t c = 0; c < label.size(); ++c) {
    if (label[c] >= 0) rep.per_stratum_counts[label[c]] += class_size[c];
    if (how[c] == Resolution::representative) rep.by_representative += class_size[c];
    if (how[c] == Resolution::torus_seed) rep.by_torus_seed += class_size[c];
    if (how[c] == Resolution::extension) rep.by_extension += class_size[c];
  }
  rep.unresolved = rep.unresolved_by_depth.back();
  return rep;
}

DimensionEstimate estimate_dimension(const ZipDatum& zd, const Stratum& s, const ClassificationReport& lo,
                                     const ClassificationReport& hi) {
  if (hi.m <= lo.m) throw Error(ErrorKind::insufficient_data, "need two increasing depths");
  DimensionEstimate d;
  d.stratum = s.index;
  d.expected = s.dim_orbit;
  d.complete = lo.unresolved == 0 && hi.unresolved == 0;
  double a = static_cast<double>(lo.per_stratum_counts.at(s.index));
  double b = static_cast<double>(hi.per_stratum_counts.at(s.index));
  if (a == 0 || b == 0) throw Error(ErrorKind::insufficient_data, "empty stratum count");
  const double lp = std::log(static_cast<double>(zd.p));
  const double steps = hi.m - lo.m;
  d.naive_log_ratio = std::log(b / a) / lp / steps;
  double ra = static_cast<double>(lo.zip_group_order) / a;
  double rb = static_cast<double>(hi.zip_group_order) / b;
  d.codim_log = std::log(rb / ra) / lp / steps;
  d.estimate = zd.dim_G - static_cast<int>(std::lround(d.codim_log));
  return d;
}

std::vector<DimensionEstimate> estimate_dimensions(const ZipDatum& zd,
                                                   const std::vector<ClassificationReport>& reports) {
  if (reports.size() < 2) throw Error(ErrorKind::insufficient_data, "need at least two depths");
  const auto& lo = reports[reports.size() - 2];
  const auto& hi = reports.back();
  std::vector<DimensionEstimate> out;
  for (const auto& s : enumerate_strata(zd)) out.push_back(estimate_dimension(zd, s, lo, hi));
  return out;
}

SlopeEstimate zip_group_log_slope(const ZipDatum& zd, int m_max, const Budget& budget) {
  if (m_max < 2) throw Error(ErrorKind::insufficient_data, "need at least two depths");
  SlopeEstimate s;
  for (int m = 1; m <= m_max; ++m) {
    ZipContext ctx(zd, FiniteField::get(zd.p, m));
    s.orders.push_back(checked_u64(ctx.order(budget)));
  }
  double a = static_cast<double>(s.orders[m_max - 2]);
  double b = static_cast<double>(s.orders[m_max - 1]);
  s.raw = std::log(b / a) / std::log(static_cast<double>(zd.p));
  s.slope = static_cast<int>(std::lround(s.raw));
  return s;
}

}  // namespace zipstrata
