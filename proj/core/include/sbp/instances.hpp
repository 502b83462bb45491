#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sbp/game.hpp"

namespace sbp {

struct BadEpsilon : std::invalid_argument {
  explicit BadEpsilon(const std::string& why) : std::invalid_argument("BadEpsilon: " + why) {}
};
struct BadN : std::invalid_argument {
  explicit BadN(const std::string& why) : std::invalid_argument("BadN: " + why) {}
};
struct BadSigmaK : std::invalid_argument {
  explicit BadSigmaK(const std::string& why) : std::invalid_argument("BadSigmaK: " + why) {}
};

/// Residual space of a bin template filled exactly by a grid of equal tiny
/// squares ("sand"). Cells are axis-aligned rectangles whose edges the grain
/// side divides, so the grid tiling is a constructive feasibility witness.
struct SandFill {
  struct Cell {
    Rational x, y, w, h;
  };
  Rational side;
  mpz_class count;  // total grains over all cells
  std::vector<Cell> cells;
};

/// One bin design: explicitly placed squares plus an optional exact sand
/// fill. Used both for "optimal" template bins and homogeneous bins.
struct BinTemplate {
  Packing squares;
  std::optional<SandFill> sand;

  BinContent content() const;
  Rational used_area() const;
  /// Placements valid, sand cells in-bounds, pairwise disjoint and disjoint
  /// from the squares, every cell edge divisible by the grain side, and the
  /// declared grain count matching the cell areas exactly.
  bool validate() const;
};

/// Explicit item-level form of a construction, available when the instance is
/// small enough to materialize.
struct ExplicitConstruction {
  std::vector<Item> items;
  std::map<int, int> opt_assignment;
  std::map<int, int> eq_assignment;
  std::map<int, Packing> opt_witness;  // bin index -> placements
  std::map<int, Packing> eq_witness;
};

struct ConstructionOutput {
  GroupedConfig opt;
  GroupedConfig eq;
  std::vector<BinTemplate> opt_templates;  // parallel to opt.groups
  std::vector<BinTemplate> eq_templates;   // parallel to eq.groups
  mpz_class declared_opt;
  mpz_class declared_eq_bins;
  std::optional<ExplicitConstruction> explicit_form;

  Rational ratio() const {
    return Rational(declared_eq_bins) / Rational(declared_opt);
  }
};

/// Theorem-2 style family: k bins each holding the pair (1, 1/2^i) and
/// (1/2^i, 1 - 1/2^i); the pairing is a Nash equilibrium while two bins
/// suffice (one for k = 1). Always materialized.
ConstructionOutput gen_unbounded_poa(int k);

/// Homogeneous-bins square construction with class sides 1/i + eps. The
/// optimal template bin packs (1,3,2,2,5,2,5) squares of sides
/// (1/2..1/13)+eps plus sand; `extended` appends the five further classes
/// down to 1/43 + eps. eps = 0 picks the generator default. N = 0 picks the
/// minimal bin count making every homogeneous-bin multiplicity integral.
/// Grouped-only (the minimal N is astronomically large).
ConstructionOutput gen_square_poa(const mpz_class& N, const Rational& eps, bool extended);

/// Dyadic strong-equilibrium construction, sides sigma_i = (1+eps)/2^i for
/// i < k plus sand of side sigma_k. eps = 1/(2^(k-1)-1) (the default when
/// eps = 0) makes the sand class empty. sigma_k = 0 picks a default divisor.
/// Materializes when the item count is moderate.
ConstructionOutput gen_strong_poa(int k, const Rational& eps, const Rational& sigma_k);

/// Two-bin Nash equilibrium whose bins both occupy less than 4/9: one bin
/// with a single square of side 1/2, one with three squares of side
/// 1/3 + eps and two of side 1/6. eps = 0 picks the 1/100 default.
ConstructionOutput gen_two_bad_bins(const Rational& eps);

struct RandomSpec {
  int n = 10;
  uint64_t seed = 0;
  bool squares_only = true;
  Rational max_side = Rational(1);  // inclusive cap
  int grid_log2 = 6;                // sides are multiples of 1/2^grid_log2
};

/// Reproducible random items with sides drawn uniformly from the dyadic grid
/// {1/2^g, 2/2^g, ...} clipped to the cap.
std::vector<Item> gen_random(const RandomSpec& spec);

/// Exact class side of the square-poa construction: 1/inv + eps.
Rational square_poa_side(int inv, const Rational& eps);

/// Frozen coordinate tables for the square-poa optimal bin; coordinates are
/// p + q*eps. Returns tuples (inv, px, py) with px = (num, den, eps_coeff).
struct TableEntry {
  int inv;
  long x_num, x_den, x_eps;
  long y_num, y_den, y_eps;
};
const std::vector<TableEntry>& square_poa_table(bool extended);

/// Largest eps of the form 1/10^t (t <= 12) for which the generator's full
/// validation passes, or the generator default when validation is built in.
Rational square_poa_default_eps(bool extended);

}  // namespace sbp
