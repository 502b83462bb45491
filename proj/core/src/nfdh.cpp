#include "sbp/nfdh.hpp"

#include <algorithm>
#include <stdexcept>

namespace sbp {

NfdhResult nfdh_pack_region(std::vector<Item> items, const Rational& region_width,
                            const Rational& region_height) {
  NfdhResult res;
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.shape.h != b.shape.h) return b.shape.h < a.shape.h;
    if (a.shape.w != b.shape.w) return b.shape.w < a.shape.w;
    return a.id < b.id;
  });

  for (const auto& it : items) {
    if (it.shape.w > region_width || it.shape.h > region_height) {
      res.rejected = it;
      return res;
    }
    if (!res.levels.empty()) {
      Level& cur = res.levels.back();
      if (cur.used_width + it.shape.w <= region_width) {
        res.packed.placements.push_back({it, cur.used_width, cur.y});
        cur.used_width += it.shape.w;
        continue;
      }
    }
    Rational ny = res.levels.empty() ? Rational(0)
                                     : res.levels.back().y + res.levels.back().height;
    if (ny + it.shape.h <= region_height) {
      res.levels.push_back({ny, it.shape.h, it.shape.w});
      res.packed.placements.push_back({it, Rational(0), ny});
    } else {
      res.rejected = it;
      return res;
    }
  }
  res.success = true;
  return res;
}

bool nfdh_fits(const std::vector<Item>& items) {
  return nfdh_pack_region(items, Rational(1), Rational(1)).success;
}

std::optional<Packing> nfdh_pack(const std::vector<Item>& items) {
  auto res = nfdh_pack_region(items, Rational(1), Rational(1));
  if (!res.success) return std::nullopt;
  return res.packed;
}

bool check_epstein_levy(const std::vector<Item>& items_packed, const Item& rejected, int m) {
  if (m < 2) throw std::invalid_argument("check_epstein_levy: m >= 2 required");
  Rational cap(1, m);
  for (const auto& it : items_packed)
    if (it.shape.w > cap || it.shape.h > cap)
      throw std::invalid_argument("check_epstein_levy: dimension above 1/m");
  if (rejected.shape.w > cap || rejected.shape.h > cap)
    throw std::invalid_argument("check_epstein_levy: dimension above 1/m");
  if (!nfdh_fits(items_packed))
    throw std::invalid_argument("check_epstein_levy: NFDH does not pack the base set");
  auto with = items_packed;
  with.push_back(rejected);
  if (nfdh_fits(with))
    throw std::invalid_argument("check_epstein_levy: NFDH packs the extended set");
  Rational bound = Rational(m - 1, m) * Rational(m - 1, m);
  return total_area(items_packed) >= bound;
}

bool check_meir_moser(const std::vector<Item>& squares, const Rational& b, const Rational& h) {
  Rational l;
  for (const auto& it : squares) {
    if (!it.shape.is_square())
      throw std::invalid_argument("check_meir_moser: squares only");
    l = max(l, it.shape.w);
  }
  if (l > min(b, h)) throw std::invalid_argument("check_meir_moser: max side above min(b,h)");
  Rational limit = l * l + (b - l) * (h - l);
  if (total_area(squares) > limit) return true;  // condition does not apply
  return nfdh_pack_region(squares, b, h).success;
}

bool check_harren_vanstee(const std::vector<Item>& items, const Rational& a, const Rational& b) {
  Rational wmax, hmax;
  for (const auto& it : items) {
    wmax = max(wmax, it.shape.w);
    hmax = max(hmax, it.shape.h);
  }
  auto res = nfdh_pack_region(items, a, b);
  if (res.success) return true;
  return res.packed_area() >= (a - wmax) * (b - hmax);
}

}  // namespace sbp
