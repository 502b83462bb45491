#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sbp/exact_pack.hpp"
#include "sbp/geometry.hpp"
#include "sbp/nfdh.hpp"

namespace sbp {

struct UnknownItem : std::invalid_argument {
  explicit UnknownItem(int id)
      : std::invalid_argument("unknown item id " + std::to_string(id)) {}
};

/// Multiset of shapes with (possibly huge) multiplicities; the canonical
/// description of one bin's contents. Parts are kept sorted by shape and
/// merged, so equal contents compare equal.
struct BinContent {
  std::vector<std::pair<Rect, mpz_class>> parts;

  void add(const Rect& r, const mpz_class& count = 1);
  Rational area() const;
  mpz_class item_count() const;
  bool empty() const { return parts.empty(); }

  friend bool operator==(const BinContent& a, const BinContent& b) { return a.parts == b.parts; }
  friend bool operator<(const BinContent& a, const BinContent& b);
};

/// Decides whether a set of items fits into one unit bin, either by NFDH or
/// by the exact oracle. Decisions are memoized per oracle instance.
class FeasibilityOracle {
 public:
  enum class Kind { Nfdh, Exact };

  explicit FeasibilityOracle(Kind kind, size_t exact_limit = 10,
                             size_t materialize_cap = 100000)
      : kind_(kind), exact_limit_(exact_limit), materialize_cap_(materialize_cap) {}

  Kind kind() const { return kind_; }
  size_t exact_limit() const { return exact_limit_; }

  bool fits(const std::vector<Item>& items) const;
  /// Count-aware entry point. Applies exact shortcuts (area bound, uniform
  /// grids, counting bound) before materializing; materialization beyond the
  /// cap raises InstanceTooLarge.
  bool fits(const BinContent& content) const;

  /// a(R(k)) convention: the content's area when feasible, 0 otherwise.
  Rational area_or_zero(const BinContent& content) const;

 private:
  bool decide(const BinContent& content) const;

  Kind kind_;
  size_t exact_limit_;
  size_t materialize_cap_;
  mutable std::mutex mu_;
  mutable std::map<BinContent, bool> cache_;
};

/// Assignment of every item to a bin index. Bin contents are materialized and
/// kept in sync with the assignment.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<Item> items, const std::map<int, int>& assignment);

  const std::vector<Item>& items() const { return items_; }
  const Item& item(int id) const;
  int bin_of(int id) const;
  /// Moves an item to `target_bin` (which may be a fresh index).
  void move(int id, int target_bin);

  std::vector<int> bins_in_use() const;  // indices of nonempty bins, ascending
  const std::vector<int>& bin_item_ids(int bin) const;
  std::vector<Item> bin_items(int bin) const;
  BinContent bin_content(int bin) const;
  /// Smallest nonnegative index not currently holding any item.
  int fresh_bin_index() const;
  std::map<int, int> assignment() const;

 private:
  std::vector<Item> items_;
  std::map<int, size_t> index_of_;   // id -> position in items_
  std::map<int, int> bin_of_;        // id -> bin
  std::map<int, std::vector<int>> bins_;  // bin -> sorted item ids
};

/// Exact cost of an item: area ratio when its bin is feasible, infinite
/// otherwise.
struct Cost {
  bool infinite = false;
  Rational value;

  static Cost inf() { return {true, Rational(0)}; }
  static Cost finite(Rational v) { return {false, std::move(v)}; }

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  /// Strictly-less comparison; any finite cost is below an infinite one.
  friend bool operator<(const Cost& a, const Cost& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
};

Cost cost(const Configuration& c, int item_id, const FeasibilityOracle& oracle);

struct MoveOption {
  int target_bin = -1;   // -1 encodes a fresh (empty) bin
  Rational new_bin_area; // a(R(target) + item), the item's new cost denominator
};

/// All strictly improving single-item migrations, targets in ascending bin
/// order; a fresh bin (listed last) only ever improves from an infeasible bin.
std::vector<MoveOption> improving_moves(const Configuration& c, int item_id,
                                        const FeasibilityOracle& oracle);

/// Occupied areas of used bins, sorted non-increasingly. Infeasible bins
/// contribute nothing (their a(R(k)) is 0).
struct PotentialVector {
  std::vector<Rational> entries;

  friend bool operator==(const PotentialVector& a, const PotentialVector& b) {
    return a.entries == b.entries;
  }
};

PotentialVector potential_vector(const Configuration& c, const FeasibilityOracle& oracle);

/// Lexicographic order; a proper prefix is smaller than its extension.
int compare(const PotentialVector& a, const PotentialVector& b);

struct MovePolicy {
  enum class Order { LowestId, Random };
  enum class Target { FirstImproving, BestImproving };
  Order order = Order::LowestId;
  Target target = Target::FirstImproving;
  uint64_t seed = 0;
};

struct TraceStep {
  int item_id;
  int from_bin;
  int to_bin;
  PotentialVector potential_after;
};

struct GameTrace {
  std::vector<TraceStep> steps;
};

struct PotentialViolation : std::logic_error {
  PotentialViolation() : std::logic_error("potential vector did not increase") {}
};

enum class DynamicsStatus { ReachedNash, StepLimit };

struct DynamicsResult {
  Configuration final_config;
  GameTrace trace;
  DynamicsStatus status = DynamicsStatus::ReachedNash;
};

/// Best-response dynamics: one improving migration per step, chosen by the
/// policy (items in infeasible bins are always scheduled first), until no
/// improving move exists or `max_steps` is hit. The potential vector is
/// checked to strictly increase at every step.
DynamicsResult run_dynamics(Configuration c, const FeasibilityOracle& oracle,
                            const MovePolicy& policy, uint64_t max_steps);

struct NashWitness {
  int item_id;
  int target_bin;  // -1 = fresh bin
};

struct NashResult {
  bool is_nash = false;
  std::optional<NashWitness> witness;  // one improving move when not a Nash equilibrium
};

NashResult is_nash(const Configuration& c, const FeasibilityOracle& oracle);

// ---- grouped (template × multiplicity) configurations ----------------------

/// A bin template together with how many identical bins exist. Multiplicities
/// are big integers so constructions can be represented at their true scale.
struct BinGroup {
  BinContent content;
  mpz_class multiplicity = 1;
};

struct GroupedConfig {
  std::vector<BinGroup> groups;

  mpz_class bin_count() const;
  Rational total_item_area() const;
  void add_bin(const BinContent& content, const mpz_class& multiplicity = 1);
  /// Merge equal contents and drop empty groups; canonical order.
  void normalize();
};

GroupedConfig group_configuration(const Configuration& c);

struct GroupedNashWitness {
  Rect shape;          // the migrating item's shape
  size_t from_group;
  std::optional<size_t> to_group;  // nullopt = fresh bin
};

struct GroupedNashResult {
  bool is_nash = false;
  std::optional<GroupedNashWitness> witness;
};

/// Nash check on the grouped form. Items with the same shape living in bins
/// of equal content have identical improving-move structure, so one check per
/// (shape, group, target group) decides the whole class.
GroupedNashResult is_nash_grouped(const GroupedConfig& g, const FeasibilityOracle& oracle);

}  // namespace sbp
