#pragma once

#include <optional>

#include "sbp/game.hpp"

namespace sbp {

struct SearchSpaceTooLarge : std::runtime_error {
  explicit SearchSpaceTooLarge(unsigned long long budget)
      : std::runtime_error("coalition search exceeds budget of " +
                           std::to_string(budget) + " candidates") {}
};

/// A joint migration: all members move to one common target bin (or to a
/// fresh bin), each strictly decreasing its cost.
struct Coalition {
  std::vector<int> item_ids;        // ascending
  std::optional<int> target_bin;    // nullopt = fresh bin
  Rational new_area;                // occupied area of the target after the move
};

struct GroupedCoalition {
  // members described per (shape, source group) class
  std::vector<std::tuple<Rect, size_t, long>> members;  // shape, group, count
  std::optional<size_t> target_group;                   // nullopt = fresh bin
  Rational new_area;
};

/// Exhaustive bounded search for an improving coalition over class multisets
/// (size ascending, then lexicographic, targets in group order then fresh
/// bin). Returns the first hit. Throws SearchSpaceTooLarge when the number of
/// candidate (multiset, target) pairs exceeds `budget`.
std::optional<GroupedCoalition> find_coalition_grouped(const GroupedConfig& g,
                                                       const FeasibilityOracle& oracle,
                                                       size_t max_size,
                                                       unsigned long long budget = 2000000);

std::optional<Coalition> find_coalition(const Configuration& c,
                                        const FeasibilityOracle& oracle, size_t max_size,
                                        unsigned long long budget = 2000000);

/// Bounded strong-Nash certificate: no improving coalition of size at most
/// `max_size` exists. This certifies stability up to the size bound only.
bool is_strong_nash_bounded(const Configuration& c, const FeasibilityOracle& oracle,
                            size_t max_size, unsigned long long budget = 2000000);
bool is_strong_nash_bounded(const GroupedConfig& g, const FeasibilityOracle& oracle,
                            size_t max_size, unsigned long long budget = 2000000);

/// Applies the coalition to the configuration (all members into the target).
void apply_coalition(Configuration& c, const Coalition& co);

enum class StrongDynamicsStatus { ReachedBoundedSne, RoundLimit };

struct StrongDynamicsResult {
  Configuration final_config;
  StrongDynamicsStatus status;
  uint64_t single_moves = 0;
  uint64_t coalition_moves = 0;
};

/// Alternates best-response convergence with bounded coalition moves until no
/// coalition of size <= max_size remains. Each coalition move strictly
/// increases the potential vector, so this terminates.
StrongDynamicsResult run_strong_dynamics(Configuration c, const FeasibilityOracle& oracle,
                                         const MovePolicy& policy, size_t max_size,
                                         uint64_t max_rounds = 100000,
                                         unsigned long long budget = 2000000);

}  // namespace sbp
