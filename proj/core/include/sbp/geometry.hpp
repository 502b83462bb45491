#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sbp/rational.hpp"

namespace sbp {

/// Axis-aligned rectangle shape. Invariant: 0 < width <= 1, 0 < height <= 1,
/// so every item fits alone in the unit bin.
struct Rect {
  Rational w;
  Rational h;

  Rect() : w(1), h(1) {}
  Rect(Rational width, Rational height);

  Rational area() const { return w * h; }
  bool is_square() const { return w == h; }

  friend bool operator==(const Rect& a, const Rect& b) { return a.w == b.w && a.h == b.h; }
  /// Lexicographic (w, h); used for canonical multiset keys.
  friend bool operator<(const Rect& a, const Rect& b) {
    if (a.w != b.w) return a.w < b.w;
    return a.h < b.h;
  }
};

inline Rect square(const Rational& side) { return Rect(side, side); }

/// Size classes for squares (side in (1/2,1] is big, (1/3,1/2] medium,
/// (0,1/3] small). Only meaningful when the shape is a square.
enum class SquareClass { Big, Medium, Small };
SquareClass square_class(const Rect& r);

struct Item {
  int id = 0;
  Rect shape;

  Item() = default;
  Item(int id_, Rect shape_) : id(id_), shape(shape_) {}

  Rational area() const { return shape.area(); }
};

/// Sum of item areas; empty set gives 0.
Rational total_area(std::span<const Item> items);
Rational total_area(const std::vector<Item>& items);

/// An item anchored at its lower-left corner inside the unit bin.
struct Placement {
  Item item;
  Rational x;
  Rational y;
};

/// Items with positions inside one unit bin; a feasibility witness.
struct Packing {
  std::vector<Placement> placements;

  Rational used_area() const;
};

/// True iff every placement is inside [0,1]^2 and the placed rectangles are
/// pairwise interior-disjoint (shared boundaries allowed). Exact tests.
bool packing_is_valid(const Packing& p);

/// Interior-disjointness of two placed rectangles.
bool rects_interior_disjoint(const Rational& x1, const Rational& y1, const Rect& r1,
                             const Rational& x2, const Rational& y2, const Rect& r2);

}  // namespace sbp
