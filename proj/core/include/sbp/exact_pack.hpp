#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sbp/geometry.hpp"

namespace sbp {

struct InstanceTooLarge : std::runtime_error {
  explicit InstanceTooLarge(size_t n, size_t limit)
      : std::runtime_error("exact_fits: " + std::to_string(n) + " items exceeds limit " +
                           std::to_string(limit)) {}
};

/// Decides whether the oriented items pack simultaneously into the unit bin,
/// returning a placement witness when they do. Complete search over canonical
/// bottom-left-stable positions: candidate x coordinates are 0 plus subset
/// sums of item widths (clipped to feasibility), likewise y with heights.
/// Exponential time by design; guarded by `limit` (throws InstanceTooLarge).
///
/// Exactness-preserving shortcuts applied before the search:
///  - total area above 1: infeasible;
///  - n squares of equal side s: feasible iff n <= floor(1/s)^2;
///  - squares all of side > 1/m packed in count above (m-1)^2: infeasible;
///  - an NFDH run that succeeds certifies feasibility with its own witness.
std::optional<Packing> exact_fits(const std::vector<Item>& items, size_t limit = 10);

/// Feasibility decision without materializing a witness, same shortcuts.
/// `limit` only guards the exhaustive fallback, not the shortcut paths.
bool exact_feasible(const std::vector<Item>& items, size_t limit = 10);

}  // namespace sbp
