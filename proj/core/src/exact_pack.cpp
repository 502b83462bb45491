#include "sbp/exact_pack.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sbp/nfdh.hpp"

namespace sbp {
namespace {

// floor(1/s)^2 for a square side s.
mpz_class grid_capacity(const Rational& s) {
  mpz_class per_axis = rfloor(Rational(1) / s);
  return per_axis * per_axis;
}

// At most (m-1)^2 squares of side > 1/m fit in a unit bin: map each square's
// lower-left corner to the cell of the (1/m)-grid containing it; two corners
// in one cell force an overlap.
bool infeasible_by_counting(const std::vector<Item>& items) {
  bool all_squares = true;
  Rational smin;
  bool first = true;
  for (const auto& it : items) {
    if (!it.shape.is_square()) { all_squares = false; break; }
    if (first || it.shape.w < smin) smin = it.shape.w;
    first = false;
  }
  if (!all_squares || items.empty()) return false;
  mpz_class m = rfloor(Rational(1) / smin) + 1;  // all sides > 1/m
  mpz_class cap = (m - 1) * (m - 1);
  return mpz_class(items.size()) > cap;
}

// Equal-side squares: grid placement decides feasibility completely.
std::optional<std::optional<Packing>> equal_squares_case(const std::vector<Item>& items) {
  if (items.empty()) return std::optional<Packing>(Packing{});
  const Rect& r0 = items.front().shape;
  if (!r0.is_square()) return std::nullopt;
  for (const auto& it : items)
    if (!(it.shape == r0)) return std::nullopt;
  mpz_class cap = grid_capacity(r0.w);
  if (mpz_class(items.size()) > cap) return std::optional<Packing>(std::nullopt);
  mpz_class per_axis = rfloor(Rational(1) / r0.w);
  long k = per_axis.get_si();
  Packing p;
  long row = 0, col = 0;
  for (const auto& it : items) {
    p.placements.push_back({it, Rational(col) * r0.w, Rational(row) * r0.h});
    if (++col == k) { col = 0; ++row; }
  }
  return std::optional<Packing>(std::move(p));
}

struct Searcher {
  std::vector<Item> items;             // sorted, area-descending
  std::vector<Rational> xs, ys;        // candidate coordinate grids
  std::vector<Placement> placed;

  bool dfs(size_t k) {
    if (k == items.size()) return true;
    const Item& it = items[k];
    const Rational one(1);
    // same-shape symmetry break: lexicographically increasing (y, x)
    bool sym = k > 0 && items[k - 1].shape == it.shape;
    for (const auto& y : ys) {
      if (y + it.shape.h > one) continue;
      for (const auto& x : xs) {
        if (x + it.shape.w > one) continue;
        if (sym) {
          const auto& pr = placed.back();
          if (y < pr.y || (y == pr.y && x <= pr.x)) continue;
        }
        bool ok = true;
        for (const auto& pl : placed) {
          if (!rects_interior_disjoint(x, y, it.shape, pl.x, pl.y, pl.item.shape)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        placed.push_back({it, x, y});
        if (dfs(k + 1)) return true;
        placed.pop_back();
      }
    }
    return false;
  }
};

std::vector<Rational> subset_sums(const std::vector<Rational>& vals) {
  std::set<Rational> sums;
  sums.insert(Rational(0));
  const Rational one(1);
  for (const auto& v : vals) {
    std::vector<Rational> add;
    for (const auto& s : sums) {
      Rational t = s + v;
      if (t < one) add.push_back(t);
    }
    sums.insert(add.begin(), add.end());
  }
  return {sums.begin(), sums.end()};
}

}  // namespace

std::optional<Packing> exact_fits(const std::vector<Item>& items, size_t limit) {
  if (total_area(items) > Rational(1)) return std::nullopt;
  if (auto eq = equal_squares_case(items)) return *eq;
  if (infeasible_by_counting(items)) return std::nullopt;
  if (auto p = nfdh_pack(items)) return p;

  if (items.size() > limit) throw InstanceTooLarge(items.size(), limit);

  Searcher s;
  s.items = items;
  std::sort(s.items.begin(), s.items.end(), [](const Item& a, const Item& b) {
    Rational aa = a.area(), ba = b.area();
    if (aa != ba) return ba < aa;
    return a.id < b.id;
  });
  std::vector<Rational> ws, hs;
  for (const auto& it : s.items) {
    ws.push_back(it.shape.w);
    hs.push_back(it.shape.h);
  }
  s.xs = subset_sums(ws);
  s.ys = subset_sums(hs);
  if (s.dfs(0)) {
    Packing p;
    p.placements = s.placed;
    return p;
  }
  return std::nullopt;
}

bool exact_feasible(const std::vector<Item>& items, size_t limit) {
  return exact_fits(items, limit).has_value();
}

}  // namespace sbp
