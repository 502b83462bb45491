#include "sbp/game.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sbp {

void BinContent::add(const Rect& r, const mpz_class& count) {
  if (count == 0) return;
  auto it = std::lower_bound(parts.begin(), parts.end(), r,
                             [](const auto& p, const Rect& q) { return p.first < q; });
  if (it != parts.end() && it->first == r)
    it->second += count;
  else
    parts.insert(it, {r, count});
}

Rational BinContent::area() const {
  Rational sum;
  for (const auto& [shape, count] : parts) sum += Rational(count) * shape.area();
  return sum;
}

mpz_class BinContent::item_count() const {
  mpz_class n = 0;
  for (const auto& [shape, count] : parts) n += count;
  return n;
}

bool operator<(const BinContent& a, const BinContent& b) {
  return std::lexicographical_compare(
      a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(),
      [](const auto& x, const auto& y) {
        if (x.first < y.first) return true;
        if (y.first < x.first) return false;
        return x.second < y.second;
      });
}

namespace {

BinContent content_of(const std::vector<Item>& items) {
  BinContent c;
  for (const auto& it : items) c.add(it.shape);
  return c;
}

// Exactness-preserving shortcuts shared by both oracle kinds; nullopt when
// undecided. All are theorems about orthogonal packings of the unit square.
std::optional<bool> shortcut_decide(const BinContent& content) {
  if (content.empty()) return true;
  Rational area = content.area();
  if (area > Rational(1)) return false;
  // single shape class of squares: grid capacity is exact
  if (content.parts.size() == 1 && content.parts[0].first.is_square()) {
    const Rational& s = content.parts[0].first.w;
    mpz_class per_axis = rfloor(Rational(1) / s);
    return content.parts[0].second <= per_axis * per_axis;
  }
  // counting bound: at most floor(1/dmin)^2 rectangles whose dimensions all
  // exceed 1/m, where m = floor(1/dmin)+1
  Rational dmin;
  bool first = true;
  for (const auto& [shape, count] : content.parts) {
    Rational d = min(shape.w, shape.h);
    if (first || d < dmin) dmin = d;
    first = false;
  }
  mpz_class cap_axis = rfloor(Rational(1) / dmin);
  if (content.item_count() > cap_axis * cap_axis) return false;
  return std::nullopt;
}

}  // namespace

bool FeasibilityOracle::fits(const std::vector<Item>& items) const {
  return fits(content_of(items));
}

bool FeasibilityOracle::decide(const BinContent& content) const {
  if (auto s = shortcut_decide(content)) return *s;
  mpz_class n = content.item_count();
  if (n > mpz_class(static_cast<unsigned long>(materialize_cap_)))
    throw InstanceTooLarge(materialize_cap_ + 1, materialize_cap_);
  std::vector<Item> items;
  items.reserve(n.get_ui());
  int id = 0;
  for (const auto& [shape, count] : content.parts)
    for (mpz_class i = 0; i < count; ++i) items.emplace_back(id++, shape);
  if (kind_ == Kind::Nfdh) return nfdh_fits(items);
  if (nfdh_fits(items)) return true;  // NFDH success certifies exact feasibility
  return exact_feasible(items, exact_limit_);
}

bool FeasibilityOracle::fits(const BinContent& content) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(content);
    if (it != cache_.end()) return it->second;
  }
  bool result = decide(content);
  std::lock_guard<std::mutex> lk(mu_);
  cache_.emplace(content, result);
  return result;
}

Rational FeasibilityOracle::area_or_zero(const BinContent& content) const {
  if (content.empty()) return Rational(0);
  return fits(content) ? content.area() : Rational(0);
}

Configuration::Configuration(std::vector<Item> items, const std::map<int, int>& assignment)
    : items_(std::move(items)) {
  for (size_t i = 0; i < items_.size(); i++) {
    int id = items_[i].id;
    if (!index_of_.emplace(id, i).second)
      throw std::invalid_argument("Configuration: duplicate item id " + std::to_string(id));
    auto it = assignment.find(id);
    if (it == assignment.end()) throw UnknownItem(id);
    bin_of_[id] = it->second;
    bins_[it->second].push_back(id);
  }
  if (assignment.size() != items_.size())
    throw std::invalid_argument("Configuration: assignment mentions unknown items");
  for (auto& [bin, ids] : bins_) std::sort(ids.begin(), ids.end());
}

const Item& Configuration::item(int id) const {
  auto it = index_of_.find(id);
  if (it == index_of_.end()) throw UnknownItem(id);
  return items_[it->second];
}

int Configuration::bin_of(int id) const {
  auto it = bin_of_.find(id);
  if (it == bin_of_.end()) throw UnknownItem(id);
  return it->second;
}

void Configuration::move(int id, int target_bin) {
  int from = bin_of(id);
  if (from == target_bin) return;
  auto& src = bins_[from];
  src.erase(std::find(src.begin(), src.end(), id));
  if (src.empty()) bins_.erase(from);
  auto& dst = bins_[target_bin];
  dst.insert(std::lower_bound(dst.begin(), dst.end(), id), id);
  bin_of_[id] = target_bin;
}

std::vector<int> Configuration::bins_in_use() const {
  std::vector<int> out;
  out.reserve(bins_.size());
  for (const auto& [bin, ids] : bins_) out.push_back(bin);
  return out;
}

const std::vector<int>& Configuration::bin_item_ids(int bin) const {
  static const std::vector<int> kEmpty;
  auto it = bins_.find(bin);
  return it == bins_.end() ? kEmpty : it->second;
}

std::vector<Item> Configuration::bin_items(int bin) const {
  std::vector<Item> out;
  for (int id : bin_item_ids(bin)) out.push_back(item(id));
  return out;
}

BinContent Configuration::bin_content(int bin) const {
  BinContent c;
  for (int id : bin_item_ids(bin)) c.add(item(id).shape);
  return c;
}

int Configuration::fresh_bin_index() const {
  int idx = 0;
  for (const auto& [bin, ids] : bins_) {
    if (bin > idx) break;
    if (bin == idx) idx++;
  }
  return idx;
}

std::map<int, int> Configuration::assignment() const { return bin_of_; }

Cost cost(const Configuration& c, int item_id, const FeasibilityOracle& oracle) {
  const Item& it = c.item(item_id);
  Rational denom = oracle.area_or_zero(c.bin_content(c.bin_of(item_id)));
  if (denom.is_zero()) return Cost::inf();
  return Cost::finite(it.area() / denom);
}

std::vector<MoveOption> improving_moves(const Configuration& c, int item_id,
                                        const FeasibilityOracle& oracle) {
  const Item& it = c.item(item_id);
  int my_bin = c.bin_of(item_id);
  Rational my_area = oracle.area_or_zero(c.bin_content(my_bin));
  std::vector<MoveOption> out;
  for (int bin : c.bins_in_use()) {
    if (bin == my_bin) continue;
    BinContent target = c.bin_content(bin);
    target.add(it.shape);
    // area precheck avoids a feasibility call when the move cannot improve
    if (!(target.area() > my_area)) continue;
    if (!oracle.fits(target)) continue;
    out.push_back({bin, target.area()});
  }
  // a fresh bin improves exactly when the current bin is infeasible
  if (my_area.is_zero()) out.push_back({-1, it.area()});
  return out;
}

PotentialVector potential_vector(const Configuration& c, const FeasibilityOracle& oracle) {
  PotentialVector pv;
  for (int bin : c.bins_in_use()) {
    Rational a = oracle.area_or_zero(c.bin_content(bin));
    if (!a.is_zero()) pv.entries.push_back(std::move(a));
  }
  std::sort(pv.entries.begin(), pv.entries.end(),
            [](const Rational& a, const Rational& b) { return b < a; });
  return pv;
}

int compare(const PotentialVector& a, const PotentialVector& b) {
  size_t n = std::min(a.entries.size(), b.entries.size());
  for (size_t i = 0; i < n; i++) {
    if (a.entries[i] < b.entries[i]) return -1;
    if (b.entries[i] < a.entries[i]) return 1;
  }
  if (a.entries.size() < b.entries.size()) return -1;
  if (a.entries.size() > b.entries.size()) return 1;
  return 0;
}

namespace {

// Scan order for one dynamics step: items in infeasible bins first, then the
// rest; each segment ordered by the policy.
std::vector<int> step_order(const Configuration& c, const FeasibilityOracle& oracle,
                            const MovePolicy& policy, std::mt19937_64& rng) {
  std::vector<int> infeasible, feasible;
  std::map<int, bool> bin_feasible;
  for (int bin : c.bins_in_use())
    bin_feasible[bin] = !oracle.area_or_zero(c.bin_content(bin)).is_zero();
  for (const auto& it : c.items())
    (bin_feasible[c.bin_of(it.id)] ? feasible : infeasible).push_back(it.id);
  if (policy.order == MovePolicy::Order::Random) {
    auto shuffle = [&rng](std::vector<int>& v) {
      for (size_t i = v.size(); i > 1; i--)
        std::swap(v[i - 1], v[rng() % i]);
    };
    shuffle(infeasible);
    shuffle(feasible);
  }
  infeasible.insert(infeasible.end(), feasible.begin(), feasible.end());
  return infeasible;
}

}  // namespace

DynamicsResult run_dynamics(Configuration c, const FeasibilityOracle& oracle,
                            const MovePolicy& policy, uint64_t max_steps) {
  DynamicsResult res;
  std::mt19937_64 rng(policy.seed);
  PotentialVector prev = potential_vector(c, oracle);
  uint64_t steps = 0;
  for (;;) {
    bool moved = false;
    for (int id : step_order(c, oracle, policy, rng)) {
      auto options = improving_moves(c, id, oracle);
      if (options.empty()) continue;
      if (steps >= max_steps) {
        res.final_config = std::move(c);
        res.status = DynamicsStatus::StepLimit;
        return res;
      }
      const MoveOption* chosen = &options.front();
      if (policy.target == MovePolicy::Target::BestImproving) {
        for (const auto& opt : options)
          if (opt.new_bin_area > chosen->new_bin_area) chosen = &opt;  // ties: lowest index
      }
      int from = c.bin_of(id);
      int to = chosen->target_bin >= 0 ? chosen->target_bin : c.fresh_bin_index();
      c.move(id, to);
      PotentialVector now = potential_vector(c, oracle);
      if (compare(prev, now) >= 0) throw PotentialViolation();
      res.trace.steps.push_back({id, from, to, now});
      prev = std::move(now);
      steps++;
      moved = true;
      break;  // one migration per step, then rescan
    }
    if (!moved) break;
  }
  res.final_config = std::move(c);
  res.status = DynamicsStatus::ReachedNash;
  return res;
}

NashResult is_nash(const Configuration& c, const FeasibilityOracle& oracle) {
  // one check per (shape, bin-content) class; items of equal class have
  // identical improving-move structure
  std::set<std::pair<Rect, int>> seen_classes;
  std::map<int, int> content_key;
  std::map<BinContent, int> interned;
  for (int bin : c.bins_in_use()) {
    auto content = c.bin_content(bin);
    auto [it, fresh] = interned.emplace(content, (int)interned.size());
    content_key[bin] = it->second;
  }
  for (const auto& item : c.items()) {
    int bin = c.bin_of(item.id);
    auto cls = std::make_pair(item.shape, content_key[bin]);
    if (!seen_classes.insert(cls).second) continue;
    auto options = improving_moves(c, item.id, oracle);
    if (!options.empty())
      return {false, NashWitness{item.id, options.front().target_bin}};
  }
  return {true, std::nullopt};
}

mpz_class GroupedConfig::bin_count() const {
  mpz_class n = 0;
  for (const auto& g : groups) n += g.multiplicity;
  return n;
}

Rational GroupedConfig::total_item_area() const {
  Rational sum;
  for (const auto& g : groups) sum += Rational(g.multiplicity) * g.content.area();
  return sum;
}

void GroupedConfig::add_bin(const BinContent& content, const mpz_class& multiplicity) {
  groups.push_back({content, multiplicity});
}

void GroupedConfig::normalize() {
  std::sort(groups.begin(), groups.end(), [](const BinGroup& a, const BinGroup& b) {
    return a.content < b.content;
  });
  std::vector<BinGroup> merged;
  for (auto& g : groups) {
    if (g.multiplicity == 0 || g.content.empty()) continue;
    if (!merged.empty() && merged.back().content == g.content)
      merged.back().multiplicity += g.multiplicity;
    else
      merged.push_back(std::move(g));
  }
  groups = std::move(merged);
}

GroupedConfig group_configuration(const Configuration& c) {
  GroupedConfig g;
  for (int bin : c.bins_in_use()) g.add_bin(c.bin_content(bin));
  g.normalize();
  return g;
}

GroupedNashResult is_nash_grouped(const GroupedConfig& g, const FeasibilityOracle& oracle) {
  std::vector<Rational> areas;
  areas.reserve(g.groups.size());
  for (const auto& grp : g.groups) areas.push_back(oracle.area_or_zero(grp.content));

  for (size_t from = 0; from < g.groups.size(); from++) {
    for (const auto& [shape, count] : g.groups[from].content.parts) {
      // moving one `shape` item out of a `from`-group bin
      for (size_t to = 0; to < g.groups.size(); to++) {
        // needs a target bin distinct from the item's own
        mpz_class avail = g.groups[to].multiplicity - (to == from ? 1 : 0);
        if (avail <= 0) continue;
        BinContent target = g.groups[to].content;
        target.add(shape);
        if (!(target.area() > areas[from])) continue;
        if (!oracle.fits(target)) continue;
        return {false, GroupedNashWitness{shape, from, to}};
      }
      if (areas[from].is_zero())  // infeasible bin: a fresh bin always improves
        return {false, GroupedNashWitness{shape, from, std::nullopt}};
    }
  }
  return {true, std::nullopt};
}

}  // namespace sbp
