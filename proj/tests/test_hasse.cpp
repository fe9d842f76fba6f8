#include <numeric>

#include "doctest.h"
#include "zipstrata/error.hpp"
#include "zipstrata/hasse.hpp"

using namespace zipstrata;

namespace {

ZipDatum datum(const std::string& g, std::vector<int> chi, int p = 2) {
  return build_zip_datum(GroupDescriptor::parse(g), Cocharacter{std::move(chi)}, p);
}

Character ch(std::vector<int> w, int s = 0) { return Character{std::move(w), s}; }

// Order of a by repeated multiplication.
std::uint64_t brute_order(const FiniteField& F, Elem a) {
  std::uint64_t k = 1;
  for (Elem x = a; x != 1; x = F.mul(x, a)) ++k;
  return k;
}

// lambda on a diagonal matrix straight from its torus weight.
Elem on_torus(const FiniteField& F, const std::vector<int>& w, const Matrix& t) {
  Elem v = 1;
  for (int a = 0; a < t.n; ++a)
    for (int k = 0; k < std::abs(w[a]); ++k) v = F.mul(v, w[a] > 0 ? t(a, a) : F.inv(t(a, a)));
  return v;
}

}  // namespace

TEST_SUITE("hasse") {
  TEST_CASE("character lattice ranks") {
    CHECK(character_lattice(datum("GL2", {1, 0})).size() == 2);
    CHECK(character_lattice(datum("Sp4", {1, 1, 0, 0})).size() == 1);
    CHECK(character_lattice(datum("GSp4", {1, 1, 0, 0})).size() == 2);
    CHECK(character_lattice(datum("GL3", {1, 0, 0})).size() == 2);
    CHECK(character_lattice(datum("SL2xSL2", {1, 0, 1, 0})).size() == 2);
    CHECK(character_lattice(datum("SL3", {1, 0, 0})).size() == 1);
    for (auto zd : {datum("Sp4", {1, 1, 0, 0}), datum("GL3", {1, 0, 0})})
      for (const auto& c : character_lattice(zd))
        for (int i = 0; i < zd.W().rank(); ++i)
          if (zd.levi_type.contains(i)) CHECK(coroot_pairing(zd, c, i) == 0);
    CHECK_THROWS_AS(check_character(datum("Sp4", {1, 1, 0, 0}), ch({1, 0, 0, 0})), Error);
    CHECK_THROWS_AS(check_character(datum("Sp4", {1, 1, 0, 0}), ch({0, 0, 0, 0}, 1)), Error);
  }

  TEST_CASE("mirror blocks give inverse characters") {
    auto zd = datum("Sp4", {1, 1, 0, 0}, 3);
    CHECK(same_character(zd, ch({1, 1, 0, 0}), ch({0, 0, -1, -1})));
    CHECK_FALSE(same_character(zd, ch({1, 1, 0, 0}), ch({0, 0, 1, 1})));
    auto gsp = datum("GSp4", {1, 1, 0, 0}, 3);
    CHECK(same_character(gsp, ch({0, 0, 1, 1}), ch({0, 0, 0, 0}, 2) + ch({-1, -1, 0, 0})));
    ZipContext ctx(gsp, FiniteField::get(3, 1));
    for (const auto& e : ctx.enumerate(Budget{}))
      CHECK(evaluate_character(ctx, ch({0, 0, 1, 1}), e) == evaluate_character(ctx, ch({-1, -1, 0, 0}, 2), e));
  }

  TEST_CASE("evaluation is multiplicative and matches torus weights") {
    for (auto [zd, m] : std::vector<std::pair<ZipDatum, int>>{
             {datum("GL2", {1, 0}), 1}, {datum("GL2", {1, 0}), 2}, {datum("GL2", {1, 0}, 3), 1}}) {
      ZipContext ctx(zd, FiniteField::get(zd.p, m));
      auto all = ctx.enumerate(Budget{});
      for (const auto& l : character_lattice(zd)) {
        Matrix one = identity_matrix(2);
        CHECK(evaluate_character(ctx, l, {one, one}) == 1);
        for (const auto& a : all)
          for (const auto& b : all)
            CHECK(evaluate_character(ctx, l, ctx.compose(a, b)) ==
                  ctx.field().mul(evaluate_character(ctx, l, a), evaluate_character(ctx, l, b)));
        for (const auto& t : torus_points(ctx.field(), zd.group, 1000))
          CHECK(evaluate_on_levi(ctx, l, t) == on_torus(ctx.field(), l.weights, t));
      }
      for (const auto& a : all) CHECK(evaluate_character(ctx, trivial_character(zd), a) == 1);
    }
    auto zd = datum("Sp4", {1, 1, 0, 0}, 3);
    ZipContext ctx(zd, FiniteField::get(3, 1));
    for (const auto& t : torus_points(ctx.field(), zd.group, 1000))
      CHECK(evaluate_on_levi(ctx, hodge_character(zd), t) == on_torus(ctx.field(), {1, 1, 0, 0}, t));
  }

  TEST_CASE("ampleness and the Hodge character") {
    for (auto zd : {datum("GL2", {1, 0}), datum("Sp4", {1, 1, 0, 0}), datum("GSp4", {1, 1, 0, 0}),
                    datum("Sp6", {1, 1, 1, 0, 0, 0})}) {
      CAPTURE(zd.group.name());
      auto h = hodge_character(zd);
      CHECK(is_ample(h, zd));
      CHECK_FALSE(is_ample(-h, zd));
      CHECK_FALSE(is_ample(trivial_character(zd), zd));
      CHECK(is_ample(scaled(h, 3), zd));
    }
    CHECK(hodge_character(datum("Sp4", {1, 1, 0, 0})) == ch({1, 1, 0, 0}));
    CHECK(hodge_character(datum("GL2", {1, 0})) == ch({1, 0}));
    CHECK_THROWS_AS(hodge_character(datum("GL3", {1, 0, 0})), Error);
    CHECK_THROWS_AS(hodge_character(datum("SL2xSL2", {1, 0, 1, 0})), Error);
    // Levi type everything: the Hodge character is central and the cone is empty.
    auto flat = datum("GSp4", {1, 1, 1, 1});
    auto h = hodge_character(flat);
    CHECK_FALSE(is_ample(h, flat));
    for (int i = 0; i < flat.W().rank(); ++i) CHECK(coroot_pairing(flat, h, i) == 0);
  }

  TEST_CASE("exponent lower bounds against a direct stabilizer scan") {
    for (auto zd : {datum("GL2", {1, 0}), datum("GL2", {1, 0}, 3), datum("Sp4", {1, 1, 0, 0})}) {
      auto lambda = hodge_character(zd);
      for (const auto& s : enumerate_strata(zd)) {
        auto cert = exponent_lower_bound(zd, s, lambda, 2, Budget{});
        std::uint64_t expect = 1;
        for (int m = 1; m <= 2; ++m) {
          ZipContext ctx(zd, FiniteField::get(zd.p, m));
          Matrix rep = ctx.representative(s);
          for (const auto& e : ctx.enumerate(Budget{}))
            if (ctx.act(e, rep) == rep) expect = std::lcm(expect, brute_order(ctx.field(), evaluate_character(ctx, lambda, e)));
        }
        CHECK(cert.lower_bound == expect);
        CHECK(cert.depths_used == std::vector<int>{1, 2});
        auto deeper = exponent_lower_bound(zd, s, lambda, 3, Budget{});
        CHECK(deeper.lower_bound % cert.lower_bound == 0);
      }
      auto triv = exponent_lower_bound(zd, enumerate_strata(zd).back(), trivial_character(zd), 1, Budget{});
      CHECK(triv.lower_bound == 1);
      CHECK(triv.stabilized);
    }
    // Pins.
    auto gl2 = datum("GL2", {1, 0});
    auto ss = exponent_lower_bound(gl2, enumerate_strata(gl2)[0], ch({1, 0}), 3, Budget{});
    CHECK(ss.per_depth == std::vector<std::uint64_t>{1, 3, 1});
    CHECK(ss.lower_bound == 3);
    CHECK(ss.stabilized);
    auto open = exponent_lower_bound(gl2, enumerate_strata(gl2)[1], ch({1, 0}), 3, Budget{});
    CHECK(open.lower_bound == 1);
  }

  TEST_CASE("sections: well defined, equivariant, one dimensional") {
    for (auto [zd, m] : std::vector<std::pair<ZipDatum, int>>{{datum("GL2", {1, 0}), 2},
                                                             {datum("GL2", {1, 0}, 3), 1},
                                                             {datum("Sp4", {1, 1, 0, 0}), 1}}) {
      auto lambda = hodge_character(zd);
      ZipContext ctx(zd, FiniteField::get(zd.p, m));
      auto all = ctx.enumerate(Budget{});
      for (const auto& s : enumerate_strata(zd)) {
        auto cert = exponent_lower_bound(zd, s, lambda, 3, Budget{});
        for (int d = 1; d <= 3; ++d) {
          long long n = static_cast<long long>(cert.lower_bound) * d;
          auto t = build_section(zd, s, lambda, n, m, Budget{});
          CHECK(t.value(pack(ctx.field(), ctx.representative(s))) == Elem{1});
          auto c = check_section(zd, t, Budget{});
          CHECK(c.non_vanishing);
          CHECK(c.equivariant);
          CHECK(c.extension_by_zero);
          // A second table from a different base point agrees up to a scalar.
          auto u = build_section_from(zd, s, lambda, n, m, all[all.size() / 2 + 1], Budget{});
          auto k = proportionality(ctx.field(), t, u);
          REQUIRE(k.has_value());
          CHECK(*k != 0);
        }
      }
    }
    auto zd = datum("GL2", {1, 0});
    auto t = build_section(zd, enumerate_strata(zd)[1], trivial_character(zd), 1, 2, Budget{});
    for (const auto& [k, v] : t.values) CHECK(v == 1);
  }

  TEST_CASE("a wrong exponent gives an explicit witness") {
    auto zd = datum("GL2", {1, 0});
    auto s = enumerate_strata(zd)[0];
    ZipContext ctx(zd, FiniteField::get(2, 2));
    Matrix rep = ctx.representative(s);
    for (long long n : {1LL, 2LL, 4LL}) {
      try {
        build_section(zd, s, ch({1, 0}), n, 2, Budget{});
        CHECK(false);
      } catch (const IllDefinedSection& e) {
        CHECK(e.kind() == ErrorKind::ill_defined_section);
        CHECK(ctx.is_element(e.e2));
        CHECK(ctx.act(e.e1, rep) == ctx.act(e.e2, rep));
        CHECK(e.v1 != e.v2);
      }
      CHECK_THROWS_AS(build_section_from(zd, s, ch({1, 0}), n, 2, ctx.enumerate(Budget{})[5], Budget{}),
                      IllDefinedSection);
    }
    CHECK_NOTHROW(build_section(zd, s, ch({1, 0}), 3, 2, Budget{}));
  }
}
