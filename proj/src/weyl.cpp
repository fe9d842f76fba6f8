#include "zipstrata/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

#include "zipstrata/error.hpp"

namespace zipstrata {

int dot(const Weight& a, const Weight& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

SeriesDescriptor parse_series(const std::string& text) {
  SeriesDescriptor out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.size() < 2) throw Error(ErrorKind::unsupported_series, "cannot parse '" + text + "'");
    SeriesComponent c;
    c.series = part[0];
    try {
      std::size_t used = 0;
      c.rank = std::stoi(part.substr(1), &used);
      if (used != part.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::unsupported_series, "cannot parse '" + text + "'");
    }
    out.components.push_back(c);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

RootDatum::RootDatum(const SeriesDescriptor& series) {
  if (series.components.empty()) throw Error(ErrorKind::unsupported_series, "no components");
  if (series.extra_torus_rank < 0) throw Error(ErrorKind::unsupported_series, "negative torus rank");
  for (const auto& c : series.components) {
    int min_rank = c.series == 'D' ? 2 : 1;
    if (std::string("ABCD").find(c.series) == std::string::npos || c.rank < min_rank || c.rank > 16)
      throw Error(ErrorKind::unsupported_series,
                  std::string(1, c.series) + std::to_string(c.rank));
    RootComponent rc{c.series, c.rank, eps_dim_, c.series == 'A' ? c.rank + 1 : c.rank,
                     static_cast<int>(components_.size() == 0 ? 0 : components_.back().simple_offset +
                                                                        components_.back().rank)};
    components_.push_back(rc);
    eps_dim_ += rc.eps_dim;
    torus_rank_ += c.rank;
    if (!tag_.empty()) tag_ += "x";
    tag_ += std::string(1, c.series) + std::to_string(c.rank);
  }
  torus_rank_ += series.extra_torus_rank;
  if (series.extra_torus_rank > 0) tag_ += "+T" + std::to_string(series.extra_torus_rank);

  for (const auto& c : components_) {
    int o = c.eps_offset;
    int r = c.rank;
    for (int i = 0; i < r; ++i) {
      Weight a(eps_dim_, 0), h(eps_dim_, 0);
      bool last = i == r - 1;
      if (c.series == 'A' || !last) {
        a[o + i] = 1;
        a[o + i + 1] = -1;
        h = a;
      } else if (c.series == 'B') {
        a[o + i] = 1;
        h[o + i] = 2;
      } else if (c.series == 'C') {
        a[o + i] = 2;
        h[o + i] = 1;
      } else {
        a[o + i - 1] = 1;
        a[o + i] = 1;
        h = a;
      }
      simple_roots_.push_back(a);
      simple_coroots_.push_back(h);
    }
  }
  int n = semisimple_rank();
  cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_[i][j] = dot(simple_roots_[i], simple_coroots_[j]);
  for (int i = 0; i < n; ++i) {
    if (cartan_[i][i] != 2) throw Error(ErrorKind::invalid_cartan, tag_);
    for (int j = 0; j < n; ++j)
      if (i != j && cartan_[i][j] > 0) throw Error(ErrorKind::invalid_cartan, tag_);
  }

  // Close the simple roots under the simple reflections s_i(v) = v - <v, a_i^vee> a_i.
  std::set<Weight> seen(simple_roots_.begin(), simple_roots_.end());
  std::deque<Weight> queue(simple_roots_.begin(), simple_roots_.end());
  while (!queue.empty()) {
    Weight v = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      int c = dot(v, simple_coroots_[i]);
      Weight u = v;
      for (int k = 0; k < eps_dim_; ++k) u[k] -= c * simple_roots_[i][k];
      if (seen.insert(u).second) queue.push_back(u);
    }
  }
  roots_.assign(seen.begin(), seen.end());
  for (const auto& r : roots_)
    if (is_positive(r)) positive_roots_.push_back(r);
}

bool RootDatum::is_positive(const Weight& v) {
  for (int x : v)
    if (x != 0) return x > 0;
  return false;
}

int RootDatum::root_index(const Weight& v) const {
  auto it = std::lower_bound(roots_.begin(), roots_.end(), v);
  if (it == roots_.end() || *it != v) return -1;
  return static_cast<int>(it - roots_.begin());
}

int RootDatum::component_of_simple(int i) const {
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (i >= components_[c].simple_offset && i < components_[c].simple_offset + components_[c].rank)
      return static_cast<int>(c);
  throw Error(ErrorKind::invalid_word, "simple index " + std::to_string(i));
}

RootDatum build_root_datum(const SeriesDescriptor& series) { return RootDatum(series); }

ParabolicType ParabolicType::from_indices(const std::vector<int>& indices) {
  std::uint32_t m = 0;
  for (int i : indices) {
    if (i < 0 || i >= 32) throw Error(ErrorKind::invalid_type, "index " + std::to_string(i));
    m |= 1u << i;
  }
  return ParabolicType(m);
}

std::vector<int> ParabolicType::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

int ParabolicType::size() const { return __builtin_popcount(mask_); }

WeylGroup::WeylGroup(RootDatum rd) : rd_(std::move(rd)) {
  for (int i = 0; i < rank(); ++i) {
    const auto& c = rd_.components()[rd_.component_of_simple(i)];
    int local = i - c.simple_offset;
    int o = c.eps_offset;
    WeylElement w = identity();
    bool last = local == c.rank - 1;
    if (c.series == 'A' || !last) {
      std::swap(w.images[o + local], w.images[o + local + 1]);
    } else if (c.series == 'B' || c.series == 'C') {
      w.images[o + local] = -w.images[o + local];
    } else {
      w.images[o + local - 1] = -(o + local + 1);
      w.images[o + local] = -(o + local);
    }
    simple_.push_back(w);
  }
}

void WeylGroup::check(const WeylElement& w) const {
  if (w.tag != rd_.tag() || static_cast<int>(w.images.size()) != rd_.eps_dim())
    throw Error(ErrorKind::mismatched_root_data, w.tag + " vs " + rd_.tag());
}

void WeylGroup::check_type(const ParabolicType& J) const {
  if (rank() < 32 && (J.mask() >> rank()) != 0)
    throw Error(ErrorKind::invalid_type, "type outside the simple reflections");
}

WeylElement WeylGroup::identity() const {
  WeylElement w;
  w.tag = rd_.tag();
  for (int i = 0; i < rd_.eps_dim(); ++i) w.images.push_back(i + 1);
  return w;
}

WeylElement WeylGroup::simple_reflection(int i) const {
  if (i < 0 || i >= rank()) throw Error(ErrorKind::invalid_word, "letter " + std::to_string(i + 1));
  return simple_[i];
}

WeylElement WeylGroup::multiply(const WeylElement& a, const WeylElement& b) const {
  check(a);
  check(b);
  WeylElement out = a;
  for (std::size_t i = 0; i < b.images.size(); ++i) {
    int bi = b.images[i];
    int j = std::abs(bi) - 1;
    out.images[i] = bi > 0 ? a.images[j] : -a.images[j];
  }
  return out;
}

WeylElement WeylGroup::inverse(const WeylElement& w) const {
  check(w);
  WeylElement out = w;
  for (std::size_t i = 0; i < w.images.size(); ++i) {
    int j = std::abs(w.images[i]) - 1;
    out.images[j] = w.images[i] > 0 ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1;
  }
  return out;
}

Weight WeylGroup::apply(const WeylElement& w, const Weight& v) const {
  check(w);
  Weight out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    int j = std::abs(w.images[i]) - 1;
    out[j] += w.images[i] > 0 ? v[i] : -v[i];
  }
  return out;
}

int WeylGroup::length(const WeylElement& w) const {
  check(w);
  int n = 0;
  for (const auto& a : rd_.positive_roots())
    if (!RootDatum::is_positive(apply(w, a))) ++n;
  return n;
}

bool WeylGroup::is_left_descent(const WeylElement& w, int i) const {
  return !RootDatum::is_positive(apply(inverse(w), rd_.simple_roots().at(i)));
}

bool WeylGroup::is_right_descent(const WeylElement& w, int i) const {
  return !RootDatum::is_positive(apply(w, rd_.simple_roots().at(i)));
}

std::vector<int> WeylGroup::reduced_word(const WeylElement& w) const {
  check(w);
  std::vector<int> word;
  WeylElement u = w;
  WeylElement e = identity();
  while (u != e) {
    int i = 0;
    while (!is_left_descent(u, i)) ++i;
    word.push_back(i);
    u = multiply(simple_[i], u);
  }
  return word;
}

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  WeylElement w = identity();
  for (int i : word) w = multiply(w, simple_reflection(i));
  return w;
}

bool WeylGroup::bruhat_leq(const WeylElement& u, const WeylElement& w) const {
  check(u);
  check(w);
  WeylElement a = u, b = w;
  WeylElement e = identity();
  // Lifting property along a left descent of b.
  while (true) {
    if (b == e) return a == e;
    if (length(a) > length(b)) return false;
    int i = 0;
    while (!is_left_descent(b, i)) ++i;
    if (is_left_descent(a, i)) a = multiply(simple_[i], a);
    b = multiply(simple_[i], b);
  }
}

WeylElement WeylGroup::longest_element() const { return longest_element(all_simple()); }

WeylElement WeylGroup::longest_element(const ParabolicType& J) const {
  check_type(J);
  WeylElement w = identity();
  bool grew = true;
  while (grew) {
    grew = false;
    for (int j : J.indices()) {
      if (!is_left_descent(w, j)) {
        w = multiply(simple_[j], w);
        grew = true;
      }
    }
  }
  return w;
}

std::vector<WeylElement> WeylGroup::sorted(std::vector<WeylElement> v) const {
  std::vector<std::pair<std::pair<int, std::vector<int>>, WeylElement>> keyed;
  keyed.reserve(v.size());
  for (auto& w : v) keyed.push_back({{length(w), reduced_word(w)}, std::move(w)});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<WeylElement> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

std::vector<WeylElement> WeylGroup::subgroup_elements(const ParabolicType& J) const {
  check_type(J);
  std::set<WeylElement> seen{identity()};
  std::deque<WeylElement> queue{identity()};
  while (!queue.empty()) {
    WeylElement w = queue.front();
    queue.pop_front();
    for (int j : J.indices()) {
      WeylElement u = multiply(w, simple_[j]);
      if (seen.insert(u).second) {
        if (seen.size() > 1000000) throw Error(ErrorKind::budget_exceeded, "Weyl group too large");
        queue.push_back(u);
      }
    }
  }
  return sorted(std::vector<WeylElement>(seen.begin(), seen.end()));
}

std::vector<WeylElement> WeylGroup::elements() const { return subgroup_elements(all_simple()); }

std::vector<WeylElement> WeylGroup::min_coset_reps(const ParabolicType& J) const {
  check_type(J);
  std::vector<WeylElement> out;
  for (const auto& w : elements()) {
    bool minimal = true;
    for (int j : J.indices())
      if (is_left_descent(w, j)) minimal = false;
    if (minimal) out.push_back(w);
  }
  return out;
}

int WeylGroup::simple_index_of(const Weight& root) const {
  for (int i = 0; i < rank(); ++i)
    if (rd_.simple_roots()[i] == root) return i;
  return -1;
}

ParabolicType WeylGroup::opposite_type(const ParabolicType& J) const {
  check_type(J);
  WeylElement w0 = longest_element();
  std::vector<int> out;
  for (int j : J.indices()) {
    Weight v = apply(w0, rd_.simple_roots()[j]);
    for (int& x : v) x = -x;
    int k = simple_index_of(v);
    if (k < 0) throw Error(ErrorKind::invalid_type, "-w0 does not permute simple roots");
    out.push_back(k);
  }
  return ParabolicType::from_indices(out);
}

ParabolicType WeylGroup::all_simple() const {
  std::vector<int> all;
  for (int i = 0; i < rank(); ++i) all.push_back(i);
  return ParabolicType::from_indices(all);
}

std::string word_to_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) s += ' ';
    s += 's' + std::to_string(word[k] + 1);
  }
  return s;
}

}  // namespace zipstrata
