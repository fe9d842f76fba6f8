#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "zipstrata/error.hpp"
#include "zipstrata/weyl.hpp"

using namespace zipstrata;

namespace {

WeylGroup group_of(const std::string& s, int extra = 0) {
  auto d = parse_series(s);
  d.extra_torus_rank = extra;
  return WeylGroup(build_root_datum(d));
}

// Cayley graph distances from the identity.
std::map<WeylElement, int> bfs_lengths(const WeylGroup& W) {
  std::map<WeylElement, int> dist{{W.identity(), 0}};
  std::vector<WeylElement> frontier{W.identity()};
  int d = 0;
  while (!frontier.empty()) {
    ++d;
    std::vector<WeylElement> next;
    for (const auto& w : frontier)
      for (int i = 0; i < W.rank(); ++i) {
        auto u = W.multiply(w, W.simple_reflection(i));
        if (dist.emplace(u, d).second) next.push_back(u);
      }
    frontier.swap(next);
  }
  return dist;
}

// Products of all subwords of a reduced word of w.
std::set<WeylElement> subword_interval(const WeylGroup& W, const WeylElement& w) {
  auto word = W.reduced_word(w);
  std::set<WeylElement> out;
  for (std::uint32_t mask = 0; mask < (1u << word.size()); ++mask) {
    std::vector<int> sub;
    for (std::size_t k = 0; k < word.size(); ++k)
      if (mask >> k & 1u) sub.push_back(word[k]);
    out.insert(W.from_word(sub));
  }
  return out;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_SUITE("weyl") {
  TEST_CASE("root counts and group orders") {
    struct Row {
      std::string s;
      std::size_t roots;
      long long order;
    };
    std::vector<Row> rows = {{"A1", 2, 2},    {"A2", 6, 6},     {"A3", 12, 24},  {"B2", 8, 8},
                             {"C2", 8, 8},    {"C3", 18, 48},   {"B3", 18, 48},  {"D3", 12, 24},
                             {"D4", 24, 192}, {"A1xA1", 4, 4},  {"A2xC2", 14, 48}};
    for (const auto& r : rows) {
      CAPTURE(r.s);
      auto W = group_of(r.s);
      CHECK(W.root_datum().roots().size() == r.roots);
      CHECK(W.root_datum().positive_roots().size() * 2 == r.roots);
      CHECK(static_cast<long long>(W.elements().size()) == r.order);
    }
    CHECK(factorial(4) == 24);
  }

  TEST_CASE("dimensions") {
    CHECK(group_of("A1").root_datum().dim_g() == 3);
    CHECK(group_of("A1", 1).root_datum().dim_g() == 4);
    CHECK(group_of("C2").root_datum().dim_g() == 10);
    CHECK(group_of("A1xA1").root_datum().dim_g() == 6);
    CHECK(group_of("C2", 1).root_datum().dim_g() == 11);
  }

  TEST_CASE("cartan matrices") {
    auto B2 = group_of("B2").root_datum().cartan();
    auto C2 = group_of("C2").root_datum().cartan();
    CHECK(B2 == std::vector<std::vector<int>>{{2, -2}, {-1, 2}});
    CHECK(C2 == std::vector<std::vector<int>>{{2, -1}, {-2, 2}});
    auto A3 = group_of("A3").root_datum().cartan();
    CHECK(A3 == std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  }

  TEST_CASE("bad series are rejected") {
    CHECK_THROWS_AS(parse_series("E8x"), Error);
    CHECK_THROWS_AS(build_root_datum(parse_series("E6")), Error);
    CHECK_THROWS_AS(build_root_datum(parse_series("A0")), Error);
    try {
      build_root_datum(parse_series("G2"));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::unsupported_series);
    }
  }

  TEST_CASE("length matches Cayley distance") {
    for (std::string s : {"A2", "A3", "B3", "C3", "D4", "A1xA2"}) {
      CAPTURE(s);
      auto W = group_of(s);
      for (const auto& [w, d] : bfs_lengths(W)) {
        CHECK(W.length(w) == d);
        CHECK(static_cast<int>(W.reduced_word(w).size()) == d);
        CHECK(W.from_word(W.reduced_word(w)) == w);
      }
    }
  }

  TEST_CASE("small examples") {
    auto W = group_of("A2");
    CHECK(W.length(W.from_word({0, 1, 0})) == 3);
    CHECK(W.from_word({0, 1, 0}) == W.from_word({1, 0, 1}));
    CHECK(W.reduced_word(W.from_word({1, 0, 1})) == std::vector<int>{0, 1, 0});
    CHECK(W.longest_element() == W.from_word({0, 1, 0}));
    auto C2 = group_of("C2");
    CHECK(C2.length(C2.longest_element()) == 4);
  }

  TEST_CASE("reduced word is the lexicographically least") {
    for (std::string s : {"A3", "C3"}) {
      auto W = group_of(s);
      for (const auto& w : W.elements()) {
        int l = W.length(w);
        std::vector<int> best;
        std::vector<int> word(l, 0);
        std::function<void(int)> rec = [&](int k) {
          if (k == l) {
            if (W.from_word(word) == w && (best.empty() || word < best)) best = word;
            return;
          }
          for (int i = 0; i < W.rank(); ++i) {
            word[k] = i;
            rec(k + 1);
          }
        };
        rec(0);
        CHECK(W.reduced_word(w) == best);
      }
    }
  }

  TEST_CASE("multiplication is associative and inverse works") {
    auto W = group_of("B3");
    auto el = W.elements();
    for (std::size_t i = 0; i < el.size(); i += 7)
      for (std::size_t j = 0; j < el.size(); j += 5) {
        auto k = (i * 3 + j) % el.size();
        CHECK(W.multiply(W.multiply(el[i], el[j]), el[k]) == W.multiply(el[i], W.multiply(el[j], el[k])));
        CHECK(W.multiply(el[i], W.inverse(el[i])) == W.identity());
        CHECK(W.length(el[i]) == W.length(W.inverse(el[i])));
      }
  }

  TEST_CASE("bruhat order agrees with the subword property") {
    for (std::string s : {"A3", "C3", "D4", "A1xA2"}) {
      CAPTURE(s);
      auto W = group_of(s);
      auto el = W.elements();
      for (const auto& w : el) {
        auto interval = subword_interval(W, w);
        for (const auto& u : el) CHECK(W.bruhat_leq(u, w) == (interval.count(u) == 1));
      }
    }
  }

  TEST_CASE("minimal coset representatives") {
    auto W = group_of("A3");
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      ParabolicType J(mask);
      auto reps = W.min_coset_reps(J);
      auto WJ = W.subgroup_elements(J);
      CHECK(reps.size() * WJ.size() == W.elements().size());
      // Every element factors uniquely as y * w with y in W_J.
      std::set<WeylElement> products;
      for (const auto& y : WJ)
        for (const auto& w : reps) {
          auto yw = W.multiply(y, w);
          CHECK(W.length(yw) == W.length(y) + W.length(w));
          products.insert(yw);
        }
      CHECK(products.size() == W.elements().size());
    }
    auto C2 = group_of("C2");
    auto reps = C2.min_coset_reps(ParabolicType::from_indices({0}));
    REQUIRE(reps.size() == 4);
    CHECK(C2.reduced_word(reps[3]) == std::vector<int>{1, 0, 1});
  }

  TEST_CASE("opposite types") {
    auto A3 = group_of("A3");
    CHECK(A3.opposite_type(ParabolicType::from_indices({0})) == ParabolicType::from_indices({2}));
    CHECK(A3.opposite_type(ParabolicType::from_indices({1})) == ParabolicType::from_indices({1}));
    auto C3 = group_of("C3");
    CHECK(C3.opposite_type(ParabolicType::from_indices({0, 1})) == ParabolicType::from_indices({0, 1}));
  }

  TEST_CASE("mismatched root data") {
    auto A2 = group_of("A2");
    auto C2 = group_of("C2");
    CHECK_THROWS_AS(A2.multiply(A2.identity(), C2.identity()), Error);
    CHECK_THROWS_AS(A2.from_word({2}), Error);
  }
}
