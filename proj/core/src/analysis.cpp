#include "sbp/analysis.hpp"

#include <algorithm>

namespace sbp {

RatioReport poa_ratio(const ConstructionOutput& out, const FeasibilityOracle& oracle) {
  auto nash = is_nash_grouped(out.eq, oracle);
  if (!nash.is_nash) throw NotAnEquilibrium();
  RatioReport r;
  r.eq_bins = out.declared_eq_bins;
  r.opt_bins = out.declared_opt;
  r.ratio = out.ratio();
  r.certificate = OptCertificate::FullBins;
  return r;
}

RatioReport ratio_with_area_bound(const Configuration& eq, const FeasibilityOracle& oracle) {
  auto nash = is_nash(eq, oracle);
  if (!nash.is_nash) throw NotAnEquilibrium();
  RatioReport r;
  r.eq_bins = (long)eq.bins_in_use().size();
  Rational area = total_area(eq.items());
  mpz_class lb = rfloor(area);
  if (Rational(lb) < area) lb += 1;  // ceil
  if (lb == 0) lb = 1;
  r.opt_bins = lb;
  r.certificate = OptCertificate::AreaLowerBound;
  r.ratio = Rational(r.eq_bins) / Rational(r.opt_bins);
  return r;
}

Rational lk_series(int k) {
  if (k < 2) throw std::invalid_argument("lk_series: k >= 2 required");
  Rational sum;
  mpz_class pw = 2;  // 2^i
  for (int i = 1; i <= k - 1; i++) {
    mpz_class num = 2 * pw - 3;          // 2^{i+1} - 3
    mpz_class den = (pw - 1) * (pw - 1); // (2^i - 1)^2
    sum += Rational(num) / Rational(den);
    pw *= 2;
  }
  return sum;
}

OccupancyReport occupancy_audit(const Configuration& c, const FeasibilityOracle& oracle,
                                const Rational& threshold) {
  OccupancyReport rep;
  for (int bin : c.bins_in_use()) {
    Rational a = oracle.area_or_zero(c.bin_content(bin));
    if (a < threshold) {
      rep.below += 1;
      rep.offending_bins.push_back(bin);
    }
  }
  return rep;
}

OccupancyReport occupancy_audit(const GroupedConfig& g, const FeasibilityOracle& oracle,
                                const Rational& threshold) {
  OccupancyReport rep;
  for (size_t gi = 0; gi < g.groups.size(); gi++) {
    Rational a = oracle.area_or_zero(g.groups[gi].content);
    if (a < threshold) {
      rep.below += g.groups[gi].multiplicity;
      rep.offending_groups.push_back(gi);
    }
  }
  return rep;
}

Rational ratio_lemma_bound(const Rational& gamma, const Rational& delta) {
  if (!(Rational(0) < gamma && gamma < delta && delta < Rational(1)))
    throw std::invalid_argument("ratio_lemma_bound: need 0 < gamma < delta < 1");
  return Rational(1) + (Rational(1) - gamma) / delta;
}

bool check_ratio_lemma(const Rational& a, const Rational& b, const Rational& gamma,
                       const Rational& delta) {
  if (!(a > Rational(0)) || b < Rational(0))
    throw std::invalid_argument("check_ratio_lemma: need a > 0, b >= 0");
  Rational bound = ratio_lemma_bound(gamma, delta);
  Rational denom = max(a, gamma * a + delta * b);
  return (a + b) / denom <= bound;
}

namespace {

Rational spoa_poly(const Rational& x) {
  Rational one(1);
  return (one - x * x) * (one - x) * (one - x) - Rational(1, 12);
}

}  // namespace

SpoaConstant spoa_constant() {
  // f(x) = (1-x^2)(1-x)^2 - 1/12 is strictly decreasing on [0,1] with
  // f(0) > 0 > f(1), so bisection brackets its unique root.
  Rational lo(0), hi(1);
  if (!(spoa_poly(lo) > Rational(0)) || !(spoa_poly(hi) < Rational(0)))
    throw std::logic_error("spoa_constant: endpoint signs");
  Rational width_target(1, 1000000000);
  while (hi - lo > width_target) {
    Rational mid = (lo + hi) / Rational(2);
    if (spoa_poly(mid) > Rational(0))
      lo = mid;
    else
      hi = mid;
  }
  SpoaConstant out;
  out.root_lo = lo;
  out.root_hi = hi;
  if (!(lo >= Rational(62, 100) && hi <= Rational(63, 100)))
    throw std::logic_error("spoa_constant: root escaped [0.62, 0.63]");
  Rational one(1);
  // 1 + 3/(16(1-x)^2) increases in x, so its sup over [lo,hi] is at hi
  out.bound_case1_hi = one + Rational(3) / (Rational(16) * (one - hi) * (one - hi));
  // 1 + 9(1-x^2)/4 decreases in x, sup at lo
  out.bound_case2_hi = one + Rational(9) * (one - lo * lo) / Rational(4);
  Rational cap(23605, 10000);
  if (!(out.bound_case1_hi <= cap) || !(out.bound_case2_hi <= cap))
    throw std::logic_error("spoa_constant: case bound above 2.3605");
  // side condition 9/16 >= 4(1-x)^2 for every x in the bracket (worst at lo)
  if (!(Rational(9, 16) >= Rational(4) * (one - lo) * (one - lo)))
    throw std::logic_error("spoa_constant: side condition 9/16 >= 4(1-x)^2");
  return out;
}

Rational parametric_bound(int m) {
  if (m < 2) throw std::invalid_argument("parametric_bound: m >= 2 required");
  Rational r(m, m - 1);
  return r * r;
}

Theorem7Audit theorem7_audit(const Configuration& c, const FeasibilityOracle& oracle) {
  Theorem7Audit audit;
  const Rational half(1, 2), quarter(1, 4), four_ninths(4, 9);
  mpz_class below_49_other = 0;
  Rational area_sum;
  for (int bin : c.bins_in_use()) {
    auto items = c.bin_items(bin);
    bool has_big = false;
    for (const auto& it : items)
      if (it.shape.is_square() && it.shape.w > half) has_big = true;
    Rational a = oracle.area_or_zero(c.bin_content(bin));
    area_sum += a;
    if (has_big) {
      audit.big_bins += 1;
      if (!(a > quarter)) return audit;  // holds stays false
    } else {
      audit.other_bins += 1;
      if (a < four_ninths) below_49_other += 1;
    }
  }
  audit.total_area = area_sum;
  if (below_49_other > 2) return audit;
  Rational nb(audit.big_bins), nc2(audit.other_bins - 2);
  if (nc2 < Rational(0)) nc2 = Rational(0);
  Rational lower = nb / Rational(4) + four_ninths * nc2;
  if (area_sum < lower) return audit;
  Rational opt_lb = max(nb, lower);
  Rational used(audit.big_bins + audit.other_bins);
  if (opt_lb > Rational(0) && used - Rational(2) > Rational(43, 16) * opt_lb) return audit;
  audit.holds = true;
  return audit;
}

}  // namespace sbp
