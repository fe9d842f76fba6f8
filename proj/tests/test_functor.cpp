#include <set>

#include "doctest.h"
#include "zipstrata/error.hpp"
#include "zipstrata/functor.hpp"

using namespace zipstrata;

namespace {

struct Pair {
  GroupEmbedding f = catalog_embedding();
  ZipDatum zd1 = build_zip_datum(f.source, Cocharacter{{1, 0, 1, 0}}, 2);
  ZipDatum zd2 = build_zip_datum(f.target, f.push(zd1.chi), 2);
};

}  // namespace

TEST_SUITE("functor") {
  TEST_CASE("catalog embedding data") {
    Pair P;
    CHECK(P.zd2.chi.weights == std::vector<int>{1, 1, 0, 0});
    CHECK(P.f.coord_map == std::vector<int>{0, 3, 1, 2});
    CHECK_THROWS_AS(make_embedding("bad", P.f.source, P.f.target, {0, 0, 1, 2}), Error);
    // The planes <e0, e1> and <e2, e3> are isotropic for the Sp4 form.
    CHECK_THROWS_AS(make_embedding("bad", P.f.source, P.f.target, {0, 1, 2, 3}), Error);
    CHECK(embedding_by_name("SL2xSL2-Sp4").coord_map == P.f.coord_map);
    CHECK_THROWS_AS(embedding_by_name("nope"), Error);
  }

  TEST_CASE("the embedding is an injective homomorphism") {
    Pair P;
    for (int m = 1; m <= 2; ++m) {
      auto F = FiniteField::get(2, m);
      auto keys = enumerate_group(*F, P.f.source, Budget{});
      std::set<std::uint64_t> images;
      for (std::size_t i = 0; i < keys.size(); i += 7) {
        Matrix a = unpack(*F, 4, keys[i]);
        images.insert(pack(*F, P.f.apply(a)));
        CHECK(is_member(*F, P.f.target, P.f.apply(a)));
        for (std::size_t j = 0; j < keys.size(); j += 11) {
          Matrix b = unpack(*F, 4, keys[j]);
          CHECK(P.f.apply(mul(*F, a, b)) == mul(*F, P.f.apply(a), P.f.apply(b)));
        }
      }
      CHECK(images.size() == (keys.size() + 6) / 7);
    }
  }

  TEST_CASE("induced zip map, exhaustive") {
    Pair P;
    auto c1 = induced_zip_map(P.f, P.zd1, P.zd2, 1, Budget{});
    CHECK(c1.pairs_checked == 16);
    auto c2 = induced_zip_map(P.f, P.zd1, P.zd2, 2, Budget{});
    CHECK(c2.pairs_checked == 2304);
    auto gl2 = build_zip_datum(GroupDescriptor::parse("GL2"), Cocharacter{{1, 0}}, 3);
    auto id = identity_embedding(gl2.group);
    CHECK(induced_zip_map(id, gl2, gl2, 1, Budget{}).pairs_checked == 36);
    auto wrong = build_zip_datum(P.f.target, Cocharacter{{1, 1, 0, 0}}, 3);
    CHECK_THROWS_AS(induced_zip_map(P.f, P.zd1, wrong, 1, Budget{}), Error);
  }

  TEST_CASE("pullback of characters") {
    Pair P;
    auto h = hodge_character(P.f, P.zd1, P.zd2);
    CHECK(h.weights == std::vector<int>{1, 0, 1, 0});
    CHECK(is_ample(hodge_character(P.zd2), P.zd2));
    CHECK(is_ample(h, P.zd1));
    CHECK(pullback_character(trivial_character(P.zd2), P.f, P.zd1) == trivial_character(P.zd1));
    Character a{{1, 1, 0, 0}, 0}, b{{0, 0, -1, -1}, 0};
    CHECK(same_character(P.zd1, pullback_character(a + b, P.f, P.zd1),
                         pullback_character(a, P.f, P.zd1) + pullback_character(b, P.f, P.zd1)));
    // lambda(f(e)) = (lambda o f)(e) on all of E1(F_4).
    auto F = FiniteField::get(2, 2);
    ZipContext c1(P.zd1, F), c2(P.zd2, F);
    for (const auto& e : c1.enumerate(Budget{}))
      CHECK(evaluate_character(c2, a, P.f.apply(e)) == evaluate_character(c1, h, e));
  }

  TEST_CASE("orbit images, preimage of the open stratum, divisibility") {
    Pair P;
    std::vector<std::vector<int>> images;
    for (int m = 1; m <= 2; ++m) {
      ClassifyOptions opt;
      opt.r_max = 6;
      auto r1 = classify_all(P.zd1, m, opt);
      auto r2 = classify_all(P.zd2, m, opt);
      REQUIRE(r2.unresolved == 0);
      images.emplace_back();
      for (const auto& s : enumerate_strata(P.zd1)) images.back().push_back(orbit_image(P.f, P.zd1, P.zd2, s, r2));
      auto pc = check_preimage_open(P.f, P.zd1, P.zd2, r1, r2);
      CHECK(pc.holds);
      CHECK(pc.target_stratum == 3);
      CHECK(pc.points == r1.total_points);
      // The open source stratum is read off from target data alone.
      CHECK(pc.source_open_points == r1.per_stratum_counts.back());
      auto rows = check_divisibility(P.f, P.zd1, P.zd2, hodge_character(P.zd2), r2, 3, Budget{});
      CHECK(rows.size() == 4);
      for (const auto& r : rows) {
        CHECK(r.status == DivisibilityStatus::ok);
        CHECK(r.n2.lower_bound % r.n1.lower_bound == 0);
      }
      auto trivial = check_divisibility(P.f, P.zd1, P.zd2, trivial_character(P.zd2), r2, 2, Budget{});
      for (const auto& r : trivial) CHECK((r.n1.lower_bound == 1 && r.n2.lower_bound == 1 && r.divides));
    }
    CHECK(images[0] == std::vector<int>{0, 2, 2, 3});
    CHECK(images[0] == images[1]);
    CHECK(images[0].front() == 0);
  }

  TEST_CASE("identity embedding") {
    auto zd = build_zip_datum(GroupDescriptor::parse("GL2"), Cocharacter{{1, 0}}, 2);
    auto id = identity_embedding(zd.group);
    auto r = classify_all(zd, 1, ClassifyOptions{});
    CHECK(check_preimage_open(id, zd, zd, r, r).holds);
    for (const auto& s : enumerate_strata(zd)) CHECK(orbit_image(id, zd, zd, s, r) == s.index);
    for (const auto& row : check_divisibility(id, zd, zd, hodge_character(zd), r, 2, Budget{}))
      CHECK(row.n1.lower_bound == row.n2.lower_bound);
  }

  TEST_CASE("incomplete classification is refused") {
    Pair P;
    ClassifyOptions opt;
    opt.r_max = 1;
    opt.torus_seeds = false;
    auto r1 = classify_all(P.zd1, 2, opt);
    auto r2 = classify_all(P.zd2, 2, opt);
    REQUIRE(r2.unresolved > 0);
    try {
      check_preimage_open(P.f, P.zd1, P.zd2, r1, r2);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::incomplete_classification);
    }
  }
}
