#include "zipstrata/zip_datum.hpp"

#include <algorithm>
#include <sstream>

#include "zipstrata/error.hpp"
#include "zipstrata/field.hpp"

namespace zipstrata {

int pairing(const GroupDescriptor& G, const Cocharacter& chi, const Weight& root) {
  auto e = G.root_entry(root);
  return chi.weights.at(e.row) - chi.weights.at(e.col);
}

bool is_minuscule(const GroupDescriptor& G, const RootDatum& rd, const Cocharacter& chi) {
  for (const auto& r : rd.roots()) {
    int v = pairing(G, chi, r);
    if (v < -1 || v > 1) return false;
  }
  return true;
}

ParabolicType parabolic_type_of(const GroupDescriptor& G, const WeylGroup& W, const Cocharacter& chi) {
  std::vector<int> idx;
  for (int i = 0; i < W.rank(); ++i)
    if (pairing(G, chi, W.root_datum().simple_roots()[i]) == 0) idx.push_back(i);
  return ParabolicType::from_indices(idx);
}

std::vector<Weight> ZipDatum::roots_with_sign(int sign) const {
  std::vector<Weight> out;
  for (const auto& r : W().root_datum().roots()) {
    int v = pairing(r);
    if ((sign < 0 && v < 0) || (sign > 0 && v > 0) || (sign == 0 && v == 0)) out.push_back(r);
  }
  return out;
}

ZipDatum build_zip_datum(const GroupDescriptor& G, const Cocharacter& chi, int p) {
  if (!is_prime(p)) throw Error(ErrorKind::invalid_field, "p = " + std::to_string(p));
  if (static_cast<int>(chi.weights.size()) != G.dim())
    throw Error(ErrorKind::invalid_cocharacter, "expected " + std::to_string(G.dim()) + " weights");
  for (std::size_t f = 0; f < G.factors().size(); ++f) {
    if (!G.symplectic(static_cast<int>(f))) continue;
    const auto& fac = G.factors()[f];
    int s = chi.weights[fac.offset] + chi.weights[fac.offset + fac.size - 1];
    for (int a = fac.offset; a < fac.offset + fac.size; ++a)
      if (chi.weights[a] + chi.weights[G.mirror(a)] != s)
        throw Error(ErrorKind::invalid_cocharacter, "weights do not factor through the similitude torus");
  }
  ZipDatum zd;
  zd.group = G;
  zd.weyl = std::make_shared<const WeylGroup>(G.root_datum());
  zd.chi = chi;
  zd.p = p;
  const auto& rd = zd.W().root_datum();
  if (!is_minuscule(G, rd, chi)) throw Error(ErrorKind::non_minuscule, "pairing outside {-1,0,1}");
  for (const auto& r : rd.positive_roots())
    if (pairing(G, chi, r) < 0) throw Error(ErrorKind::non_dominant, "weights must be non-increasing");
  zd.levi_type = parabolic_type_of(G, zd.W(), chi);
  zd.K = zd.levi_type;
  zd.J = zd.W().opposite_type(zd.K);
  int nonpositive = 0;
  for (const auto& r : rd.roots())
    if (pairing(G, chi, r) <= 0) ++nonpositive;
  zd.dim_P = rd.torus_rank() + nonpositive;
  zd.dim_G = rd.dim_g();
  zd.g0 = zd.W().multiply(zd.W().longest_element(), zd.W().longest_element(zd.J));
  zd.g0_word = zd.W().reduced_word(zd.g0);
  return zd;
}

std::vector<Stratum> enumerate_strata(const ZipDatum& zd) {
  std::vector<Stratum> out;
  auto reps = zd.W().min_coset_reps(zd.J);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Stratum s;
    s.index = static_cast<int>(i);
    s.w = reps[i];
    s.word = zd.W().reduced_word(s.w);
    s.length = static_cast<int>(s.word.size());
    s.dim_orbit = s.length + zd.dim_P;
    s.rep_word = zd.g0_word;
    s.rep_word.insert(s.rep_word.end(), s.word.begin(), s.word.end());
    s.superspecial = s.length == 0;
    s.mu_ordinary = s.dim_orbit == zd.dim_G;
    out.push_back(std::move(s));
  }
  return out;
}

const char* to_string(OrderFlavor f) { return f == OrderFlavor::bruhat ? "bruhat" : "twisted"; }

OrderFlavor parse_flavor(const std::string& s) {
  if (s == "bruhat") return OrderFlavor::bruhat;
  if (s == "twisted") return OrderFlavor::twisted;
  throw Error(ErrorKind::config_error, "unknown order flavor '" + s + "'");
}

StrataPoset closure_order(const ZipDatum& zd, OrderFlavor flavor) {
  const auto& W = zd.W();
  StrataPoset poset;
  poset.flavor = flavor;
  poset.strata = enumerate_strata(zd);
  const int n = static_cast<int>(poset.strata.size());
  poset.leq.assign(n, std::vector<bool>(n, false));

  std::vector<std::pair<WeylElement, WeylElement>> twists;  // (y, psi(y)^-1)
  if (flavor == OrderFlavor::twisted) {
    WeylElement g0inv = W.inverse(zd.g0);
    for (const auto& y : W.subgroup_elements(zd.J)) {
      WeylElement psi = W.multiply(W.multiply(zd.g0, y), g0inv);
      for (int i : W.reduced_word(psi))
        if (!zd.K.contains(i)) throw Error(ErrorKind::poset_violation, "g0 does not conjugate W_J into W_K");
      twists.push_back({y, W.inverse(psi)});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& u = poset.strata[i].w;
      const auto& w = poset.strata[j].w;
      bool rel = false;
      if (flavor == OrderFlavor::bruhat) {
        rel = W.bruhat_leq(u, w);
      } else {
        for (const auto& t : twists)
          if (W.bruhat_leq(W.multiply(W.multiply(t.first, u), t.second), w)) {
            rel = true;
            break;
          }
      }
      poset.leq[i][j] = rel;
    }
  for (int i = 0; i < n; ++i) {
    if (!poset.leq[i][i]) throw Error(ErrorKind::poset_violation, "not reflexive");
    for (int j = 0; j < n; ++j) {
      if (i != j && poset.leq[i][j] && poset.leq[j][i]) throw Error(ErrorKind::poset_violation, "not antisymmetric");
      for (int k = 0; k < n; ++k)
        if (poset.leq[i][j] && poset.leq[j][k] && !poset.leq[i][k])
          throw Error(ErrorKind::poset_violation, "not transitive");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !poset.leq[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && poset.leq[i][k] && poset.leq[k][j]) cover = false;
      if (cover) poset.covers.push_back({i, j});
    }
  return poset;
}

std::string to_dot(const ZipDatum& zd, const StrataPoset& poset) {
  std::ostringstream os;
  os << "digraph strata {\n  rankdir=BT;\n";
  for (const auto& s : poset.strata)
    os << "  n" << s.index << " [label=\"" << word_to_string(s.word) << " (dim " << s.dim_orbit << ")\"];\n";
  for (const auto& c : poset.covers) os << "  n" << c.first << " -> n" << c.second << ";\n";
  os << "  label=\"" << zd.group.name() << " " << to_string(poset.flavor) << "\";\n}\n";
  return os.str();
}

}  // namespace zipstrata
