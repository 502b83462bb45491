#include <doctest.h>

#include "sbp/geometry.hpp"

using namespace sbp;

TEST_CASE("rect invariants") {
  CHECK_THROWS_AS(Rect(Rational(0), Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Rect(Rational(3, 2), Rational(1, 2)), std::invalid_argument);
  Rect r(Rational(1, 2), Rational(1, 3));
  CHECK(r.area() == Rational(1, 6));
  CHECK(!r.is_square());
  CHECK(square(Rational(1, 4)).is_square());
}

TEST_CASE("square size classes") {
  CHECK(square_class(square(Rational(2, 3))) == SquareClass::Big);
  CHECK(square_class(square(Rational(1, 2))) == SquareClass::Medium);
  CHECK(square_class(square(Rational(2, 5))) == SquareClass::Medium);
  CHECK(square_class(square(Rational(1, 3))) == SquareClass::Small);
  CHECK(square_class(square(Rational(1, 13))) == SquareClass::Small);
}

TEST_CASE("total_area") {
  std::vector<Item> none;
  CHECK(total_area(none) == Rational(0));
  std::vector<Item> two = {Item(0, square(Rational(1, 2))), Item(1, square(Rational(1, 3)))};
  CHECK(total_area(two) == Rational(13, 36));
}

TEST_CASE("figure-2 class areas at eps = 0 leave gamma about 0.0488") {
  // 1*(1/2)^2 + 3*(1/3)^2 + 2*(1/4)^2 + 2*(1/5)^2 + 5*(1/7)^2 + 2*(1/8)^2 + 5*(1/13)^2
  std::vector<Item> items;
  int id = 0;
  auto add = [&](int inv, int count) {
    for (int i = 0; i < count; i++) items.emplace_back(id++, square(Rational(1, inv)));
  };
  add(2, 1);
  add(3, 3);
  add(4, 2);
  add(5, 2);
  add(7, 5);
  add(8, 2);
  add(13, 5);
  Rational gamma = Rational(1) - total_area(items);
  CHECK(gamma == Rational(969673, 19874400));
  CHECK(gamma > Rational(487, 10000));
  CHECK(gamma < Rational(489, 10000));
}

TEST_CASE("packing validity") {
  Packing p;
  p.placements.push_back({Item(0, square(Rational(1))), Rational(0), Rational(0)});
  CHECK(packing_is_valid(p));  // exact fit

  Packing q;
  q.placements.push_back({Item(0, square(Rational(3, 5))), Rational(0), Rational(0)});
  q.placements.push_back({Item(1, square(Rational(3, 5))), Rational(2, 5), Rational(2, 5)});
  CHECK(!packing_is_valid(q));  // interiors overlap

  Packing r;
  r.placements.push_back({Item(0, square(Rational(1, 2))), Rational(0), Rational(0)});
  r.placements.push_back({Item(1, square(Rational(1, 2))), Rational(1, 2), Rational(0)});
  CHECK(packing_is_valid(r));  // boundary contact allowed

  Packing oob;
  oob.placements.push_back({Item(0, square(Rational(1, 2))), Rational(3, 4), Rational(0)});
  CHECK(!packing_is_valid(oob));
}
