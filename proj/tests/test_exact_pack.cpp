#include <doctest.h>

#include <random>

#include "sbp/exact_pack.hpp"

using namespace sbp;

namespace {

std::vector<Item> make(std::vector<Rect> shapes) {
  std::vector<Item> items;
  for (size_t i = 0; i < shapes.size(); i++) items.emplace_back((int)i, shapes[i]);
  return items;
}

}  // namespace

TEST_CASE("stacked pair fits") {
  auto items = make({Rect(Rational(1), Rational(1, 2)), Rect(Rational(1, 2), Rational(1, 2))});
  auto p = exact_fits(items);
  REQUIRE(p.has_value());
  CHECK(packing_is_valid(*p));
  CHECK(p->placements.size() == 2);
}

TEST_CASE("four big squares cannot fit") {
  Rational side = Rational(1, 2) + Rational(1, 100);
  auto items = make({square(side), square(side), square(side), square(side)});
  CHECK(!exact_fits(items).has_value());
}

TEST_CASE("theorem-2 pair packs with total height 1") {
  // (1, 1/4) and (1/4, 3/4)
  auto items = make({Rect(Rational(1), Rational(1, 4)), Rect(Rational(1, 4), Rational(3, 4))});
  auto p = exact_fits(items);
  REQUIRE(p.has_value());
  CHECK(packing_is_valid(*p));
}

TEST_CASE("witness contains exactly the input items") {
  auto items = make({square(Rational(1, 2)), square(Rational(1, 3)), square(Rational(1, 4))});
  auto p = exact_fits(items);
  REQUIRE(p.has_value());
  CHECK(p->placements.size() == items.size());
  std::set<int> ids;
  for (const auto& pl : p->placements) ids.insert(pl.item.id);
  CHECK(ids.size() == items.size());
}

TEST_CASE("instance limit guards the exhaustive search") {
  // tall skinny rectangles: area below 1, NFDH fails, no shortcut applies,
  // so the exhaustive search is required
  std::vector<Item> items;
  for (int i = 0; i < 11; i++)
    items.emplace_back(i, Rect(Rational(1, 10), Rational(9, 10)));
  CHECK_THROWS_AS(exact_fits(items, 10), InstanceTooLarge);
  CHECK(!exact_fits(items, 11).has_value());  // only 10 columns exist
}

TEST_CASE("equal-square grids decide by capacity") {
  std::vector<Item> nine;
  for (int i = 0; i < 9; i++) nine.emplace_back(i, square(Rational(1, 3)));
  auto p = exact_fits(nine, 5);  // shortcut path: no limit pressure
  REQUIRE(p.has_value());
  CHECK(packing_is_valid(*p));
  nine.emplace_back(9, square(Rational(1, 3)));
  CHECK(!exact_fits(nine, 5).has_value());
}

TEST_CASE("monotone-negative on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; trial++) {
    std::vector<Item> items;
    int n = 2 + (int)(rng() % 4);
    for (int i = 0; i < n; i++) {
      long wn = 1 + (long)(rng() % 3), wd = 3 + (long)(rng() % 3);
      long hn = 1 + (long)(rng() % 3), hd = 3 + (long)(rng() % 3);
      items.emplace_back(i, Rect(Rational(wn, wd + wn), Rational(hn, hd + hn)));
    }
    if (exact_fits(items).has_value()) continue;
    items.emplace_back(n, square(Rational(1, 5)));
    CHECK(!exact_fits(items).has_value());
  }
}

TEST_CASE("feasible witnesses validate on random instances") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; trial++) {
    std::vector<Item> items;
    int n = 2 + (int)(rng() % 5);
    for (int i = 0; i < n; i++) {
      long d = 3 + (long)(rng() % 5);
      items.emplace_back(i, square(Rational(1, d)));
    }
    auto p = exact_fits(items);
    if (p) {
      CHECK(packing_is_valid(*p));
      CHECK(p->placements.size() == items.size());
      checked++;
    }
  }
  CHECK(checked > 0);
}
