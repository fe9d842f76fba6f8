#include "zipstrata/functor.hpp"

#include <algorithm>

#include "zipstrata/error.hpp"

namespace zipstrata {

Matrix GroupEmbedding::apply(const Matrix& x) const {
  Matrix y = identity_matrix(target.dim());
  for (int a = 0; a < x.n; ++a)
    for (int b = 0; b < x.n; ++b) y(coord_map[a], coord_map[b]) = x(a, b);
  return y;
}

Cocharacter GroupEmbedding::push(const Cocharacter& chi) const {
  if (static_cast<int>(chi.weights.size()) != source.dim())
    throw Error(ErrorKind::invalid_cocharacter, "cocharacter size differs from the source");
  Cocharacter out{std::vector<int>(target.dim(), 0)};
  for (int a = 0; a < source.dim(); ++a) out.weights[coord_map[a]] = chi.weights[a];
  return out;
}

GroupEmbedding make_embedding(std::string name, GroupDescriptor source, GroupDescriptor target,
                              std::vector<int> coord_map) {
  if (static_cast<int>(coord_map.size()) != source.dim() || source.dim() != target.dim())
    throw Error(ErrorKind::constraint_violation, name + ": coordinate map must be a bijection");
  std::vector<int> sorted = coord_map;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < target.dim(); ++i)
    if (sorted[i] != i) throw Error(ErrorKind::constraint_violation, name + ": coordinate map is not injective");
  GroupEmbedding f{std::move(name), std::move(source), std::move(target), std::move(coord_map)};
  for (int p : {2, 3})
    for (int m : {1, 2}) {
      auto F = FiniteField::get(p, m);
      for (const auto& g : group_generators(*F, f.source))
        if (!is_member(*F, f.target, f.apply(g)))
          throw Error(ErrorKind::constraint_violation, f.name + ": image leaves " + f.target.name());
    }
  return f;
}

GroupEmbedding identity_embedding(const GroupDescriptor& G) {
  std::vector<int> id(G.dim());
  for (int i = 0; i < G.dim(); ++i) id[i] = i;
  return make_embedding("identity-" + G.name(), G, G, id);
}

GroupEmbedding catalog_embedding() {
  return make_embedding("SL2xSL2-Sp4", GroupDescriptor::parse("SL2xSL2"), GroupDescriptor::parse("Sp4"),
                        {0, 3, 1, 2});
}

GroupEmbedding embedding_by_name(const std::string& name) {
  if (name == "SL2xSL2-Sp4") return catalog_embedding();
  const std::string pre = "identity-";
  if (name.rfind(pre, 0) == 0) return identity_embedding(GroupDescriptor::parse(name.substr(pre.size())));
  throw Error(ErrorKind::config_error, "unknown embedding " + name);
}

Character pullback_character(const Character& lambda, const GroupEmbedding& f, const ZipDatum& zd1) {
  if (static_cast<int>(lambda.weights.size()) != f.target.dim())
    throw Error(ErrorKind::not_a_character, "character size differs from the target");
  Character c;
  c.weights.resize(f.source.dim());
  for (int a = 0; a < f.source.dim(); ++a) c.weights[a] = lambda.weights[f.coord_map[a]];
  if (lambda.similitude != 0) {
    bool same = f.source.factors().size() == f.target.factors().size();
    for (std::size_t i = 0; same && i < f.source.factors().size(); ++i)
      same = (f.source.factors()[i].kind == GroupKind::GSp) == (f.target.factors()[i].kind == GroupKind::GSp);
    if (!same) throw Error(ErrorKind::not_a_character, "similitude weight does not pull back");
    c.similitude = lambda.similitude;
  }
  check_character(zd1, c);
  return c;
}

Character hodge_character(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2) {
  return pullback_character(hodge_character(zd2), f, zd1);
}

ZipMapCheck induced_zip_map(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2, int m,
                            const Budget& budget) {
  if (f.push(zd1.chi).weights != zd2.chi.weights)
    throw Error(ErrorKind::constraint_violation, "target cocharacter is not f o mu");
  auto F = FiniteField::get(zd1.p, m);
  ZipContext c1(zd1, F), c2(zd2, F);
  ZipMapCheck out;
  for (const auto& e : c1.enumerate(budget)) {
    if (!c2.is_element(f.apply(e)))
      throw Error(ErrorKind::constraint_violation, "image of (" + to_string(*F, e.x) + ", " + to_string(*F, e.y) +
                                                       ") is not in the target zip group");
    ++out.pairs_checked;
  }
  for (const auto& a : c1.generators())
    for (const auto& b : c1.generators()) {
      if (!(f.apply(c1.compose(a.e, b.e)) == c2.compose(f.apply(a.e), f.apply(b.e))))
        throw Error(ErrorKind::constraint_violation, "induced map is not multiplicative");
      ++out.products_checked;
    }
  return out;
}

int orbit_image(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2, const Stratum& s1,
                const ClassificationReport& target) {
  auto F = FiniteField::get(zd2.p, target.m);
  ZipContext c1(zd1, F);
  int label = target.label_of(*F, f.apply(c1.representative(s1)));
  if (label < 0)
    throw Error(ErrorKind::incomplete_classification,
                "image of stratum " + std::to_string(s1.index) + " is unresolved at depth " +
                    std::to_string(target.r_max));
  return label;
}

PreimageCheck check_preimage_open(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2,
                                  const ClassificationReport& source, const ClassificationReport& target) {
  if (source.m != target.m) throw Error(ErrorKind::config_error, "classifications at different depths");
  if (source.unresolved || target.unresolved)
    throw Error(ErrorKind::incomplete_classification,
                std::to_string(source.unresolved) + " source and " + std::to_string(target.unresolved) +
                    " target points unresolved");
  auto F = FiniteField::get(zd1.p, source.m);
  auto strata = enumerate_strata(zd1);
  const int open = strata.back().index;
  PreimageCheck out;
  out.target_stratum = orbit_image(f, zd1, zd2, strata.back(), target);
  for (std::size_t i = 0; i < source.keys.size(); ++i) {
    bool in1 = source.labels[i] == open;
    bool in2 = target.label_of(*F, f.apply(unpack(*F, zd1.group.dim(), source.keys[i]))) == out.target_stratum;
    out.source_open_points += in1;
    ++out.points;
    if (in1 != in2 && out.holds) {
      out.holds = false;
      out.witness = source.keys[i];
    }
  }
  return out;
}

const char* to_string(DivisibilityStatus s) {
  switch (s) {
    case DivisibilityStatus::ok: return "ok";
    case DivisibilityStatus::alarm: return "alarm";
    case DivisibilityStatus::not_stabilized: return "not-stabilized";
  }
  return "?";
}

std::vector<DivisibilityRow> check_divisibility(const GroupEmbedding& f, const ZipDatum& zd1, const ZipDatum& zd2,
                                                const Character& lambda, const ClassificationReport& target,
                                                int m_max, const Budget& budget) {
  Character pulled = pullback_character(lambda, f, zd1);
  auto strata2 = enumerate_strata(zd2);
  std::vector<DivisibilityRow> rows;
  for (const auto& s1 : enumerate_strata(zd1)) {
    DivisibilityRow r;
    r.source_stratum = s1.index;
    r.target_stratum = orbit_image(f, zd1, zd2, s1, target);
    r.n1 = exponent_lower_bound(zd1, s1, pulled, m_max, budget);
    r.n2 = exponent_lower_bound(zd2, strata2[r.target_stratum], lambda, m_max, budget);
    r.divides = r.n2.lower_bound % r.n1.lower_bound == 0;
    if (!r.n1.stabilized || !r.n2.stabilized) r.status = DivisibilityStatus::not_stabilized;
    else if (!r.divides) r.status = DivisibilityStatus::alarm;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace zipstrata
