#include <doctest.h>

#include <random>

#include "sbp/nfdh.hpp"

using namespace sbp;

namespace {

std::vector<Item> squares_of(std::vector<Rational> sides) {
  std::vector<Item> items;
  for (size_t i = 0; i < sides.size(); i++) items.emplace_back((int)i, square(sides[i]));
  return items;
}

}  // namespace

TEST_CASE("four half squares pack as a 2x2 grid") {
  auto items = squares_of({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  auto res = nfdh_pack_region(items, Rational(1), Rational(1));
  REQUIRE(res.success);
  CHECK(res.levels.size() == 2);
  CHECK(packing_is_valid(res.packed));
}

TEST_CASE("lemma-4 tightness family fails") {
  // four squares of side 1/3+eps plus one of side 1/3
  Rational eps(1, 1000);
  Rational s = Rational(1, 3) + eps;
  auto items = squares_of({s, s, s, s, Rational(1, 3)});
  auto res = nfdh_pack_region(items, Rational(1), Rational(1));
  CHECK(!res.success);
  REQUIRE(res.rejected.has_value());
  CHECK(res.rejected->shape.w == Rational(1, 3));
}

TEST_CASE("(i-1)^2 squares of side 1/i + eps pack for i = 3") {
  Rational s = Rational(1, 3) + Rational(1, 100);
  auto items = squares_of({s, s, s, s});
  CHECK(nfdh_pack_region(items, Rational(1), Rational(1)).success);
}

TEST_CASE("nfdh_fits basics") {
  CHECK(nfdh_fits({Item(0, Rect(Rational(2, 3), Rational(4, 5)))}));  // single item
  CHECK(nfdh_fits({}));                                               // empty set
  // theorem-2 pair, i = 2
  CHECK(nfdh_fits({Item(0, Rect(Rational(1), Rational(1, 4))),
                   Item(1, Rect(Rational(1, 4), Rational(3, 4)))}));
  // five half squares exceed the bin area
  auto five = squares_of({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                          Rational(1, 2)});
  CHECK(!nfdh_fits(five));
}

TEST_CASE("determinism and level structure") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; trial++) {
    std::vector<Item> items;
    int n = 1 + (int)(rng() % 10);
    for (int i = 0; i < n; i++) {
      long wd = 2 + (long)(rng() % 10), hd = 2 + (long)(rng() % 10);
      items.emplace_back(i, Rect(Rational(1, wd), Rational(1, hd)));
    }
    auto a = nfdh_pack_region(items, Rational(1), Rational(1));
    auto b = nfdh_pack_region(items, Rational(1), Rational(1));
    REQUIRE(a.success == b.success);
    REQUIRE(a.packed.placements.size() == b.packed.placements.size());
    for (size_t i = 0; i < a.packed.placements.size(); i++) {
      CHECK(a.packed.placements[i].item.id == b.packed.placements[i].item.id);
      CHECK(a.packed.placements[i].x == b.packed.placements[i].x);
      CHECK(a.packed.placements[i].y == b.packed.placements[i].y);
    }
    if (a.success) CHECK(packing_is_valid(a.packed));
    // level bottoms strictly increase; level height is its first item's height
    for (size_t l = 1; l < a.levels.size(); l++) {
      CHECK(a.levels[l - 1].y < a.levels[l].y);
      CHECK(a.levels[l].y == a.levels[l - 1].y + a.levels[l - 1].height);
    }
    // placements arrive level by level, left to right, heights non-increasing
    // within a level and the level height equals its first item's height
    Rational level_y(-1), level_h, prev_h;
    for (const auto& pl : a.packed.placements) {
      if (!(pl.y == level_y)) {
        level_y = pl.y;
        level_h = pl.item.shape.h;
        prev_h = level_h;
      } else {
        CHECK(pl.item.shape.h <= prev_h);
        prev_h = pl.item.shape.h;
        CHECK(pl.item.shape.h <= level_h);
      }
    }
  }
}

TEST_CASE("epstein-levy checker on the stated examples") {
  auto four_half = squares_of({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(check_epstein_levy(four_half, Item(9, square(Rational(1, 2))), 2));
  std::vector<Item> nine;
  for (int i = 0; i < 9; i++) nine.emplace_back(i, square(Rational(1, 3)));
  CHECK(check_epstein_levy(nine, Item(9, square(Rational(1, 3))), 3));
  // precondition violations throw
  CHECK_THROWS_AS(check_epstein_levy(four_half, Item(9, square(Rational(2, 3))), 2),
                  std::invalid_argument);
}

TEST_CASE("meir-moser checker on corollary instances") {
  // squares with sides <= 1/3, total area <= 1/9 + (2/3)^2 pack in the unit square
  std::vector<Item> items = squares_of({Rational(1, 3), Rational(1, 3), Rational(1, 3),
                                        Rational(1, 3), Rational(1, 9)});
  CHECK(check_meir_moser(items, Rational(1), Rational(1)));
  // single square side l = b = h
  CHECK(check_meir_moser({Item(0, square(Rational(2, 5)))}, Rational(2, 5), Rational(2, 5)));
  CHECK_THROWS_AS(
      check_meir_moser({Item(0, square(Rational(1, 2)))}, Rational(1, 3), Rational(1)),
      std::invalid_argument);
}

TEST_CASE("harren-van-stee checker") {
  // any all-packed instance passes by the first disjunct
  CHECK(check_harren_vanstee(squares_of({Rational(1, 2), Rational(1, 3)}), Rational(1),
                             Rational(1)));
  // half squares until rejection: packed area >= (1-1/2)(1-1/2)
  std::vector<Item> many;
  for (int i = 0; i < 7; i++) many.emplace_back(i, square(Rational(1, 2)));
  CHECK(check_harren_vanstee(many, Rational(1), Rational(1)));
}

TEST_CASE("randomized theorem properties never fail") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; trial++) {
    int m = 2 + (int)(rng() % 3);
    // grow a set of squares with sides <= 1/m until NFDH rejects one
    std::vector<Item> packed;
    int id = 0;
    for (;;) {
      long den = m + (long)(rng() % (4 * m));
      Item cand(id++, square(Rational(1, den)));
      auto with = packed;
      with.push_back(cand);
      if (nfdh_fits(with)) {
        packed = std::move(with);
        continue;
      }
      CHECK(check_epstein_levy(packed, cand, m));
      break;
    }
  }
  for (int trial = 0; trial < 400; trial++) {
    int m = 2 + (int)(rng() % 4);
    std::vector<Item> set;
    Rational budget = Rational(1, m) * Rational(1, m) +
                      (Rational(1) - Rational(1, m)) * (Rational(1) - Rational(1, m));
    Rational used;
    int id = 0;
    while (true) {
      long den = m + (long)(rng() % (5 * m));
      Rational side(1, den);
      if (used + side * side > budget) break;
      used += side * side;
      set.emplace_back(id++, square(side));
      if (set.size() > 60) break;
    }
    CHECK(check_meir_moser(set, Rational(1), Rational(1)));
  }
  for (int trial = 0; trial < 400; trial++) {
    std::vector<Item> items;
    int n = 1 + (int)(rng() % 12);
    for (int i = 0; i < n; i++) {
      long wd = 2 + (long)(rng() % 9), hd = 2 + (long)(rng() % 9);
      items.emplace_back(i, Rect(Rational(1, wd), Rational(1, hd)));
    }
    CHECK(check_harren_vanstee(items, Rational(1), Rational(1)));
  }
}
