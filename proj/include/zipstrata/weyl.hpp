#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zipstrata {

// Vectors in epsilon coordinates of the maximal torus.
using Weight = std::vector<int>;

int dot(const Weight& a, const Weight& b);

struct SeriesComponent {
  char series = 'A';
  int rank = 1;
};

struct SeriesDescriptor {
  std::vector<SeriesComponent> components;
  // Central torus directions not seen by the roots (GL adds 1, GSp adds 1).
  int extra_torus_rank = 0;
};

// Parses "A1", "C2", "A1xA1" (components separated by 'x').
SeriesDescriptor parse_series(const std::string& text);

struct RootComponent {
  char series;
  int rank;
  int eps_offset;
  int eps_dim;
  int simple_offset;
};

class RootDatum {
 public:
  explicit RootDatum(const SeriesDescriptor& series);

  const std::vector<RootComponent>& components() const { return components_; }
  int eps_dim() const { return eps_dim_; }
  int semisimple_rank() const { return static_cast<int>(simple_roots_.size()); }
  int torus_rank() const { return torus_rank_; }
  int dim_g() const { return torus_rank_ + static_cast<int>(roots_.size()); }
  const std::vector<Weight>& simple_roots() const { return simple_roots_; }
  const std::vector<Weight>& simple_coroots() const { return simple_coroots_; }
  const std::vector<Weight>& roots() const { return roots_; }
  const std::vector<Weight>& positive_roots() const { return positive_roots_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::string& tag() const { return tag_; }

  // Index into roots(), or -1.
  int root_index(const Weight& v) const;
  int component_of_simple(int i) const;
  static bool is_positive(const Weight& v);

 private:
  std::vector<RootComponent> components_;
  int eps_dim_ = 0;
  int torus_rank_ = 0;
  std::vector<Weight> simple_roots_;
  std::vector<Weight> simple_coroots_;
  std::vector<Weight> roots_;
  std::vector<Weight> positive_roots_;
  std::vector<std::vector<int>> cartan_;
  std::string tag_;
};

RootDatum build_root_datum(const SeriesDescriptor& series);

// Signed permutation of the epsilon basis: images[i] = +-(j+1) means w(e_i) = +-e_j.
struct WeylElement {
  std::vector<int> images;
  std::string tag;

  bool operator==(const WeylElement& o) const { return images == o.images && tag == o.tag; }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }
  bool operator<(const WeylElement& o) const { return images < o.images; }
};

// Subset of the simple reflections, 0-based indices.
class ParabolicType {
 public:
  ParabolicType() = default;
  explicit ParabolicType(std::uint32_t mask) : mask_(mask) {}
  static ParabolicType from_indices(const std::vector<int>& indices);

  bool contains(int i) const { return (mask_ >> i) & 1u; }
  std::uint32_t mask() const { return mask_; }
  std::vector<int> indices() const;
  int size() const;
  bool operator==(const ParabolicType& o) const { return mask_ == o.mask_; }
  bool operator!=(const ParabolicType& o) const { return mask_ != o.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

class WeylGroup {
 public:
  explicit WeylGroup(RootDatum rd);

  const RootDatum& root_datum() const { return rd_; }
  int rank() const { return rd_.semisimple_rank(); }

  WeylElement identity() const;
  WeylElement simple_reflection(int i) const;
  WeylElement multiply(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& w) const;
  Weight apply(const WeylElement& w, const Weight& v) const;
  int length(const WeylElement& w) const;
  bool is_left_descent(const WeylElement& w, int i) const;
  bool is_right_descent(const WeylElement& w, int i) const;

  // Lexicographically least reduced word (greedy smallest left descent).
  std::vector<int> reduced_word(const WeylElement& w) const;
  WeylElement from_word(const std::vector<int>& word) const;
  bool bruhat_leq(const WeylElement& u, const WeylElement& w) const;

  WeylElement longest_element() const;
  WeylElement longest_element(const ParabolicType& J) const;
  // All elements, sorted by (length, reduced word).
  std::vector<WeylElement> elements() const;
  std::vector<WeylElement> subgroup_elements(const ParabolicType& J) const;
  // Minimal length representatives of W_J \ W: no left descent in J.
  std::vector<WeylElement> min_coset_reps(const ParabolicType& J) const;
  // -w0(J).
  ParabolicType opposite_type(const ParabolicType& J) const;
  ParabolicType all_simple() const;
  int simple_index_of(const Weight& root) const;
  void check_type(const ParabolicType& J) const;

 private:
  void check(const WeylElement& w) const;
  std::vector<WeylElement> sorted(std::vector<WeylElement> v) const;

  RootDatum rd_;
  std::vector<WeylElement> simple_;
};

std::string word_to_string(const std::vector<int>& word);

}  // namespace zipstrata
