#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbp/game.hpp"
#include "sbp/instances.hpp"

namespace sbp {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& why) : std::runtime_error("parse error: " + why) {}
};

/// On-disk instance document. Rationals are always "numerator/denominator"
/// strings in lowest terms; no floating point anywhere in the format.
struct InstanceFile {
  std::vector<Item> items;
  std::optional<std::map<int, int>> assignment;          // item id -> bin
  struct PlacementRecord {
    int id;
    int bin;
    Rational x, y;
  };
  std::optional<std::vector<PlacementRecord>> placements;
  /// Run-length encoded sand groups (huge grain counts are never itemized).
  struct SandRecord {
    int bin;
    Rational side;
    mpz_class count;
  };
  std::optional<std::vector<SandRecord>> sand;
  /// Grouped (template x multiplicity) form for constructions too large to
  /// materialize; mutually exclusive with `items`.
  std::optional<GroupedConfig> bin_groups;

  std::string to_json() const;
  static InstanceFile from_json(const std::string& text);

  void save(const std::string& path) const;
  static InstanceFile load(const std::string& path);

  /// Builds the playable configuration (requires items + assignment).
  Configuration to_configuration() const;

  static InstanceFile from_configuration(const Configuration& c);
  static InstanceFile from_items(const std::vector<Item>& items);
};

}  // namespace sbp
