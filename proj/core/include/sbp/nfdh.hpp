#pragma once

#include <optional>
#include <vector>

#include "sbp/geometry.hpp"

namespace sbp {

/// One shelf of an NFDH packing: bottom coordinate, height of its first
/// (tallest) rectangle, and the width consumed so far.
struct Level {
  Rational y;
  Rational height;
  Rational used_width;
};

/// Result of an NFDH run over a rectangular region. On failure `packed`
/// holds the prefix placed before the first rejected item.
struct NfdhResult {
  bool success = false;
  Packing packed;
  std::vector<Level> levels;
  std::optional<Item> rejected;

  Rational packed_area() const { return packed.used_area(); }
};

/// Next Fit Decreasing Height over a (width, height) region anchored at the
/// origin. Items are sorted by non-increasing height, ties by non-increasing
/// width then ascending id, and packed left-to-right into levels; a new level
/// opens on top when an item no longer fits the current one. Fails at the
/// first item that fits neither the current level nor a fresh level.
NfdhResult nfdh_pack_region(std::vector<Item> items, const Rational& region_width,
                            const Rational& region_height);

/// Convenience: NFDH into the unit bin, success/failure only.
bool nfdh_fits(const std::vector<Item>& items);

/// Packing returned by a successful unit-bin NFDH run.
std::optional<Packing> nfdh_pack(const std::vector<Item>& items);

/// Checks the Epstein–Levy area guarantee: if NFDH packs `packed` (all
/// dimensions <= 1/m) but rejects `packed + {rejected}`, the packed area is
/// at least ((m-1)/m)^2. Throws std::invalid_argument when the stated
/// pre-state does not hold.
bool check_epstein_levy(const std::vector<Item>& items_packed, const Item& rejected, int m);

/// Checks the Meir–Moser guarantee: squares with max side l and total area
/// at most l^2 + (b-l)(h-l) always pack into region (b,h) by NFDH. Returns
/// true vacuously when the area condition does not apply. Throws on
/// non-square input or l > min(b,h).
bool check_meir_moser(const std::vector<Item>& squares, const Rational& b, const Rational& h);

/// Checks the Harren–van Stee guarantee for region (a,b): either NFDH packs
/// everything or the area packed before the first rejection is at least
/// (a - w_max)(b - h_max).
bool check_harren_vanstee(const std::vector<Item>& items, const Rational& a, const Rational& b);

}  // namespace sbp
