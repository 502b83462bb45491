#pragma once

#include <optional>
#include <vector>

#include "sbp/coalition.hpp"
#include "sbp/game.hpp"
#include "sbp/instances.hpp"

namespace sbp {

struct NotAnEquilibrium : std::runtime_error {
  NotAnEquilibrium() : std::runtime_error("configuration is not a Nash equilibrium") {}
};

enum class OptCertificate { FullBins, AreaLowerBound, ExactOracle };

struct RatioReport {
  mpz_class eq_bins;
  mpz_class opt_bins;  // exact optimum or certified lower bound
  Rational ratio;      // eq_bins / opt_bins
  OptCertificate certificate;
};

/// Ratio of a generated construction; requires the equilibrium side to pass
/// the Nash check under the given oracle (throws NotAnEquilibrium).
RatioReport poa_ratio(const ConstructionOutput& out, const FeasibilityOracle& oracle);

/// Ratio report for an arbitrary equilibrium configuration with an optimum
/// certified by ceil(total area) (or by the exact oracle for tiny instances).
RatioReport ratio_with_area_bound(const Configuration& eq, const FeasibilityOracle& oracle);

/// Partial sums of the strong-price-of-anarchy series
/// L_k = sum_{i=1..k-1} (2^{i+1} - 3) / (2^i - 1)^2, exact.
Rational lk_series(int k);

struct OccupancyReport {
  mpz_class below = 0;                  // bins with occupied area < threshold
  std::vector<int> offending_bins;      // explicit configurations only
  std::vector<size_t> offending_groups; // grouped configurations
};

OccupancyReport occupancy_audit(const Configuration& c, const FeasibilityOracle& oracle,
                                const Rational& threshold);
OccupancyReport occupancy_audit(const GroupedConfig& g, const FeasibilityOracle& oracle,
                                const Rational& threshold);

/// 1 + (1-gamma)/delta, the bound of the ratio lemma. Requires
/// 0 < gamma < delta < 1.
Rational ratio_lemma_bound(const Rational& gamma, const Rational& delta);

/// Checks (a+b)/max(a, gamma*a + delta*b) <= 1 + (1-gamma)/delta for a > 0,
/// b >= 0, 0 < gamma < delta < 1.
bool check_ratio_lemma(const Rational& a, const Rational& b, const Rational& gamma,
                       const Rational& delta);

struct SpoaConstant {
  Rational root_lo, root_hi;    // bracket of the root of (1-x^2)(1-x)^2 = 1/12
  Rational bound_case1_hi;      // sup of 1 + 3/(16 (1-x)^2) over the bracket
  Rational bound_case2_hi;      // sup of 1 + 9(1-x^2)/4 over the bracket
};

/// Bisection with exact rationals to bracket width <= 1e-9; checks the root
/// lies in [0.62, 0.63], that both case bounds stay at or below 2.3605, that
/// they agree within the bracket width, and the side condition
/// 9/16 >= 4(1-x)^2.
SpoaConstant spoa_constant();

/// (m/(m-1))^2, the parametric price-of-anarchy bound for dimensions <= 1/m.
Rational parametric_bound(int m);

struct Theorem7Audit {
  mpz_class big_bins;       // bins containing a big square (side > 1/2)
  mpz_class other_bins;     // remaining used bins
  Rational total_area;
  bool holds = false;       // accounting inequality verified
};

/// Recomputes the big/medium-small bin accounting of the 43/16 upper-bound
/// proof on a concrete equilibrium: every big-square bin occupies more than
/// 1/4, at most two non-big bins fall below 4/9, total area is at least
/// N_B/4 + 4/9 (N_C - 2), and used bins never exceed
/// (43/16) max(N_B, N_B/4 + 4/9 (N_C-2)) + 2.
Theorem7Audit theorem7_audit(const Configuration& c, const FeasibilityOracle& oracle);

}  // namespace sbp
