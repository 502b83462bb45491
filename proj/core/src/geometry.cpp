#include "sbp/geometry.hpp"

#include <stdexcept>

namespace sbp {

Rect::Rect(Rational width, Rational height) : w(std::move(width)), h(std::move(height)) {
  if (w.sign() <= 0 || h.sign() <= 0 || w > Rational(1) || h > Rational(1))
    throw std::invalid_argument("Rect: dimensions must lie in (0,1]");
}

SquareClass square_class(const Rect& r) {
  static const Rational half(1, 2), third(1, 3);
  if (r.w > half) return SquareClass::Big;
  if (r.w > third) return SquareClass::Medium;
  return SquareClass::Small;
}

Rational total_area(std::span<const Item> items) {
  Rational sum;
  for (const auto& it : items) sum += it.area();
  return sum;
}

Rational total_area(const std::vector<Item>& items) {
  return total_area(std::span<const Item>(items));
}

Rational Packing::used_area() const {
  Rational sum;
  for (const auto& pl : placements) sum += pl.item.area();
  return sum;
}

bool rects_interior_disjoint(const Rational& x1, const Rational& y1, const Rect& r1,
                             const Rational& x2, const Rational& y2, const Rect& r2) {
  if (x1 + r1.w <= x2 || x2 + r2.w <= x1) return true;
  if (y1 + r1.h <= y2 || y2 + r2.h <= y1) return true;
  return false;
}

bool packing_is_valid(const Packing& p) {
  const Rational one(1);
  for (const auto& pl : p.placements) {
    if (pl.x.sign() < 0 || pl.y.sign() < 0) return false;
    if (pl.x + pl.item.shape.w > one) return false;
    if (pl.y + pl.item.shape.h > one) return false;
  }
  for (size_t i = 0; i < p.placements.size(); i++)
    for (size_t j = i + 1; j < p.placements.size(); j++) {
      const auto& a = p.placements[i];
      const auto& b = p.placements[j];
      if (!rects_interior_disjoint(a.x, a.y, a.item.shape, b.x, b.y, b.item.shape))
        return false;
    }
  return p.used_area() <= one;
}

}  // namespace sbp
