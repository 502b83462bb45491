#include "sbp/coalition.hpp"

#include <algorithm>
#include <set>

namespace sbp {
namespace {

struct ItemClass {
  Rect shape;
  size_t group;
  long cap_total;  // class size clipped to the search bound
};

// Candidate member classes in canonical order.
std::vector<ItemClass> make_classes(const GroupedConfig& g, size_t max_size) {
  std::vector<ItemClass> classes;
  for (size_t gi = 0; gi < g.groups.size(); gi++) {
    for (const auto& [shape, count] : g.groups[gi].content.parts) {
      mpz_class total = count * g.groups[gi].multiplicity;
      long cap = total > mpz_class((unsigned long)max_size)
                     ? (long)max_size
                     : (long)total.get_si();
      classes.push_back({shape, gi, cap});
    }
  }
  return classes;
}

struct GroupedSearch {
  const GroupedConfig& g;
  const FeasibilityOracle& oracle;
  size_t max_size;
  unsigned long long budget;
  std::vector<ItemClass> classes;
  std::vector<Rational> group_area;     // a(R) or 0 per group
  std::vector<long> take;               // current multiset
  unsigned long long candidates = 0;

  explicit GroupedSearch(const GroupedConfig& g_, const FeasibilityOracle& o, size_t m,
                         unsigned long long b)
      : g(g_), oracle(o), max_size(m), budget(b) {
    classes = make_classes(g, max_size);
    take.assign(classes.size(), 0);
    group_area.reserve(g.groups.size());
    for (const auto& grp : g.groups) group_area.push_back(oracle.area_or_zero(grp.content));
  }

  // availability of class `ci` when the target is a bin of `tg` (SIZE_MAX = fresh)
  long available(size_t ci, size_t tg) const {
    const auto& cls = classes[ci];
    mpz_class mult = g.groups[cls.group].multiplicity;
    if (tg == cls.group) mult -= 1;  // members may not come from the target bin
    mpz_class per_bin = 0;
    for (const auto& [shape, count] : g.groups[cls.group].content.parts)
      if (shape == cls.shape) per_bin = count;
    mpz_class total = mult * per_bin;
    if (total > mpz_class((unsigned long)max_size)) return (long)max_size;
    return (long)total.get_si();
  }

  std::optional<GroupedCoalition> test(size_t tg) {
    if (++candidates > budget) throw SearchSpaceTooLarge(budget);
    bool fresh = tg == g.groups.size();
    Rational worst_source(-1);
    for (size_t ci = 0; ci < classes.size(); ci++) {
      if (take[ci] == 0) continue;
      if (take[ci] > available(ci, tg)) return std::nullopt;
      worst_source = max(worst_source, group_area[classes[ci].group]);
    }
    BinContent joint = fresh ? BinContent{} : g.groups[tg].content;
    for (size_t ci = 0; ci < classes.size(); ci++)
      if (take[ci] > 0) joint.add(classes[ci].shape, take[ci]);
    // every member's new cost denominator is the joint area; improvement
    // means it strictly exceeds each member's current bin area
    Rational joint_area = joint.area();
    if (!(joint_area > worst_source)) return std::nullopt;
    if (!oracle.fits(joint)) return std::nullopt;
    GroupedCoalition co;
    for (size_t ci = 0; ci < classes.size(); ci++)
      if (take[ci] > 0) co.members.push_back({classes[ci].shape, classes[ci].group, take[ci]});
    co.target_group = fresh ? std::nullopt : std::make_optional(tg);
    co.new_area = joint_area;
    return co;
  }

  std::optional<GroupedCoalition> run() {
    // sizes ascending for the smallest-coalition-first guarantee
    for (size_t size = 1; size <= max_size; size++) {
      if (auto hit = enumerate_exact(0, size)) return hit;
    }
    return std::nullopt;
  }

  std::optional<GroupedCoalition> enumerate_exact(size_t ci, size_t remaining) {
    if (remaining == 0) {
      for (size_t tg = 0; tg <= g.groups.size(); tg++)  // groups, then fresh
        if (auto hit = test(tg)) return hit;
      return std::nullopt;
    }
    if (ci == classes.size()) return std::nullopt;
    long cap = std::min<long>(classes[ci].cap_total, (long)remaining);
    for (long k = cap; k >= 0; k--) {
      take[ci] = k;
      if (auto hit = enumerate_exact(ci + 1, remaining - k)) {
        take[ci] = 0;
        return hit;
      }
    }
    take[ci] = 0;
    return std::nullopt;
  }
};

}  // namespace

std::optional<GroupedCoalition> find_coalition_grouped(const GroupedConfig& g,
                                                       const FeasibilityOracle& oracle,
                                                       size_t max_size,
                                                       unsigned long long budget) {
  if (max_size < 1) throw std::invalid_argument("find_coalition: max_size >= 1");
  GroupedSearch s(g, oracle, max_size, budget);
  return s.run();
}

std::optional<Coalition> find_coalition(const Configuration& c, const FeasibilityOracle& oracle,
                                        size_t max_size, unsigned long long budget) {
  // canonical groups plus bookkeeping to materialize a witness
  std::map<BinContent, std::vector<int>> bins_by_content;
  for (int bin : c.bins_in_use()) bins_by_content[c.bin_content(bin)].push_back(bin);
  GroupedConfig g;
  std::vector<std::vector<int>> group_bins;
  for (auto& [content, bins] : bins_by_content) {
    g.add_bin(content, (long)bins.size());
    group_bins.push_back(bins);
  }
  auto hit = find_coalition_grouped(g, oracle, max_size, budget);
  if (!hit) return std::nullopt;

  Coalition co;
  co.new_area = hit->new_area;
  int target_bin = -1;
  if (hit->target_group) {
    target_bin = group_bins[*hit->target_group].front();
    co.target_bin = target_bin;
  }
  for (const auto& [shape, gi, count] : hit->members) {
    long need = count;
    for (int bin : group_bins[gi]) {
      if (bin == target_bin) continue;
      for (int id : c.bin_item_ids(bin)) {
        if (need == 0) break;
        if (c.item(id).shape == shape) {
          co.item_ids.push_back(id);
          need--;
        }
      }
      if (need == 0) break;
    }
  }
  std::sort(co.item_ids.begin(), co.item_ids.end());
  return co;
}

bool is_strong_nash_bounded(const Configuration& c, const FeasibilityOracle& oracle,
                            size_t max_size, unsigned long long budget) {
  return !find_coalition(c, oracle, max_size, budget).has_value();
}

bool is_strong_nash_bounded(const GroupedConfig& g, const FeasibilityOracle& oracle,
                            size_t max_size, unsigned long long budget) {
  return !find_coalition_grouped(g, oracle, max_size, budget).has_value();
}

void apply_coalition(Configuration& c, const Coalition& co) {
  int target = co.target_bin ? *co.target_bin : c.fresh_bin_index();
  for (int id : co.item_ids) c.move(id, target);
}

StrongDynamicsResult run_strong_dynamics(Configuration c, const FeasibilityOracle& oracle,
                                         const MovePolicy& policy, size_t max_size,
                                         uint64_t max_rounds, unsigned long long budget) {
  StrongDynamicsResult res{Configuration{}, StrongDynamicsStatus::RoundLimit, 0, 0};
  PotentialVector prev = potential_vector(c, oracle);
  for (uint64_t round = 0; round < max_rounds; round++) {
    auto dyn = run_dynamics(std::move(c), oracle, policy, ~0ULL);
    res.single_moves += dyn.trace.steps.size();
    c = std::move(dyn.final_config);
    auto co = find_coalition(c, oracle, max_size, budget);
    if (!co) {
      res.final_config = std::move(c);
      res.status = StrongDynamicsStatus::ReachedBoundedSne;
      return res;
    }
    apply_coalition(c, *co);
    res.coalition_moves++;
    PotentialVector now = potential_vector(c, oracle);
    if (compare(prev, now) >= 0) throw PotentialViolation();
    prev = std::move(now);
  }
  res.final_config = std::move(c);
  return res;
}

}  // namespace sbp
