#include <doctest.h>

#include <random>

#include "sbp/game.hpp"
#include "sbp/instances.hpp"

using namespace sbp;

namespace {

Configuration singletons(const std::vector<Item>& items) {
  std::map<int, int> a;
  for (const auto& it : items) a[it.id] = it.id;
  return Configuration(items, a);
}

FeasibilityOracle nfdh_oracle() { return FeasibilityOracle(FeasibilityOracle::Kind::Nfdh); }
FeasibilityOracle exact_oracle(size_t limit = 12) {
  return FeasibilityOracle(FeasibilityOracle::Kind::Exact, limit);
}

}  // namespace

TEST_CASE("cost basics") {
  std::vector<Item> items = {Item(0, square(Rational(1, 2))), Item(1, square(Rational(1, 2))),
                             Item(2, square(Rational(1, 4)))};
  Configuration c(items, {{0, 0}, {1, 1}, {2, 1}});
  auto oracle = nfdh_oracle();
  auto c0 = cost(c, 0, oracle);
  CHECK(!c0.infinite);
  CHECK(c0.value == Rational(1));  // alone in its bin
  auto c1 = cost(c, 1, oracle);
  CHECK(c1.value == Rational(1, 4) / Rational(5, 16));
  CHECK_THROWS_AS(cost(c, 99, oracle), UnknownItem);
}

TEST_CASE("infinite cost in an infeasible bin") {
  std::vector<Item> items;
  for (int i = 0; i < 5; i++) items.emplace_back(i, square(Rational(1, 2)));
  std::map<int, int> all_one;
  for (int i = 0; i < 5; i++) all_one[i] = 7;
  Configuration c(items, all_one);
  auto oracle = nfdh_oracle();
  CHECK(cost(c, 0, oracle).infinite);
  // a fresh bin is an improving target from an infeasible bin
  auto moves = improving_moves(c, 0, oracle);
  REQUIRE(!moves.empty());
  CHECK(moves.back().target_bin == -1);
}

TEST_CASE("improving move toward the fuller bin") {
  // two bins: a lone half square, and a half square with a quarter square
  std::vector<Item> items = {Item(0, square(Rational(1, 2))), Item(1, square(Rational(1, 2))),
                             Item(2, square(Rational(1, 4)))};
  Configuration c(items, {{0, 0}, {1, 1}, {2, 1}});
  auto oracle = nfdh_oracle();
  // NFDH packs {1/2, 1/2, 1/4}: heights 1/2+1/2 fill two levels, the quarter
  // rides in the second level, so the lone square's move is feasible
  auto moves = improving_moves(c, 0, oracle);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].target_bin == 1);
  CHECK(moves[0].new_bin_area == Rational(9, 16));
  // nobody in the fuller bin wants to leave
  CHECK(improving_moves(c, 1, oracle).empty());
  CHECK(improving_moves(c, 2, oracle).empty());
}

TEST_CASE("singleton instance has no moves") {
  std::vector<Item> items = {Item(0, square(Rational(1, 3)))};
  auto c = singletons(items);
  CHECK(improving_moves(c, 0, nfdh_oracle()).empty());
  CHECK(is_nash(c, nfdh_oracle()).is_nash);
}

TEST_CASE("potential vector comparison is lexicographic with prefix rule") {
  PotentialVector a{{Rational(1, 2), Rational(1, 3)}};
  PotentialVector b{{Rational(1, 2), Rational(1, 4)}};
  CHECK(compare(a, b) > 0);
  PotentialVector c{{Rational(1, 2)}};
  CHECK(compare(a, c) > 0);  // longer with equal prefix is greater
  CHECK(compare(c, a) < 0);
  CHECK(compare(a, a) == 0);
}

TEST_CASE("dynamics from an equilibrium performs zero steps") {
  auto out = gen_two_bad_bins(Rational(0));
  auto& ex = *out.explicit_form;
  Configuration c(ex.items, ex.eq_assignment);
  auto oracle = nfdh_oracle();
  auto res = run_dynamics(c, oracle, MovePolicy{}, 1000);
  CHECK(res.status == DynamicsStatus::ReachedNash);
  CHECK(res.trace.steps.empty());
}

TEST_CASE("dynamics: infeasible start empties the bad bin first") {
  std::vector<Item> items;
  for (int i = 0; i < 3; i++) items.emplace_back(i, square(Rational(2, 3)));
  std::map<int, int> all_one = {{0, 0}, {1, 0}, {2, 0}};
  Configuration c(items, all_one);
  auto oracle = nfdh_oracle();
  auto res = run_dynamics(c, oracle, MovePolicy{}, 1000);
  CHECK(res.status == DynamicsStatus::ReachedNash);
  REQUIRE(!res.trace.steps.empty());
  // first migration leaves the infeasible bin
  CHECK(res.trace.steps[0].from_bin == 0);
  CHECK(res.final_config.bins_in_use().size() == 3);
}

TEST_CASE("step limit reports StepLimit") {
  std::vector<Item> items;
  for (int i = 0; i < 6; i++) items.emplace_back(i, square(Rational(1, 4)));
  auto c = singletons(items);
  auto oracle = nfdh_oracle();
  auto res = run_dynamics(c, oracle, MovePolicy{}, 1);
  CHECK(res.status == DynamicsStatus::StepLimit);
  CHECK(res.trace.steps.size() == 1);
}

TEST_CASE("dynamics converge and potentials strictly increase (both oracles/policies)") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 24; trial++) {
    RandomSpec spec;
    spec.n = 4 + (int)(rng() % 7);
    spec.seed = rng();
    spec.squares_only = (trial % 2) == 0;
    spec.max_side = Rational(1, 2);
    auto items = gen_random(spec);
    for (int combo = 0; combo < 4; combo++) {
      auto oracle = (combo & 1) ? exact_oracle() : nfdh_oracle();
      MovePolicy pol;
      pol.target = (combo & 2) ? MovePolicy::Target::BestImproving
                               : MovePolicy::Target::FirstImproving;
      pol.order = (trial % 3 == 0) ? MovePolicy::Order::Random : MovePolicy::Order::LowestId;
      pol.seed = trial;
      auto start = singletons(items);
      auto res = run_dynamics(start, oracle, pol, 100000);
      CHECK(res.status == DynamicsStatus::ReachedNash);
      CHECK(is_nash(res.final_config, oracle).is_nash);
      // the run itself asserts the strict potential increase internally;
      // re-check the recorded trace here
      for (size_t s = 1; s < res.trace.steps.size(); s++)
        CHECK(compare(res.trace.steps[s - 1].potential_after,
                      res.trace.steps[s].potential_after) < 0);
    }
  }
}

TEST_CASE("migration pushes target area above both old areas") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 20; trial++) {
    RandomSpec spec;
    spec.n = 4 + (int)(rng() % 6);
    spec.seed = rng();
    spec.max_side = Rational(1, 2);
    auto items = gen_random(spec);
    auto c = singletons(items);
    auto oracle = nfdh_oracle();
    for (int step = 0; step < 50; step++) {
      bool moved = false;
      for (const auto& it : c.items()) {
        auto moves = improving_moves(c, it.id, oracle);
        if (moves.empty()) continue;
        int my_bin = c.bin_of(it.id);
        Rational old_src = oracle.area_or_zero(c.bin_content(my_bin));
        int target = moves[0].target_bin >= 0 ? moves[0].target_bin : c.fresh_bin_index();
        Rational old_tgt = target >= 0 && !c.bin_item_ids(target).empty()
                               ? oracle.area_or_zero(c.bin_content(target))
                               : Rational(0);
        c.move(it.id, target);
        Rational new_tgt = oracle.area_or_zero(c.bin_content(target));
        CHECK(new_tgt > old_src);
        CHECK(new_tgt > old_tgt);
        moved = true;
        break;
      }
      if (!moved) break;
    }
  }
}

TEST_CASE("is_nash invariant under relabeling") {
  std::vector<Item> items = {Item(3, square(Rational(1, 2))), Item(7, square(Rational(1, 2))),
                             Item(9, square(Rational(1, 4)))};
  Configuration c(items, {{3, 5}, {7, 2}, {9, 2}});
  auto oracle = nfdh_oracle();
  auto r1 = is_nash(c, oracle);
  // same structure, bins and ids relabeled
  std::vector<Item> items2 = {Item(0, square(Rational(1, 2))), Item(1, square(Rational(1, 2))),
                              Item(2, square(Rational(1, 4)))};
  Configuration c2(items2, {{0, 0}, {1, 1}, {2, 1}});
  auto r2 = is_nash(c2, oracle);
  CHECK(r1.is_nash == r2.is_nash);
}

TEST_CASE("grouped nash check matches explicit check") {
  std::mt19937_64 rng(55);
  auto oracle = nfdh_oracle();
  for (int trial = 0; trial < 30; trial++) {
    RandomSpec spec;
    spec.n = 4 + (int)(rng() % 6);
    spec.seed = rng();
    spec.max_side = Rational(1, 2);
    auto items = gen_random(spec);
    std::map<int, int> assign;
    for (const auto& it : items) assign[it.id] = (int)(rng() % 4);
    // drop empty-bin labels by construction of Configuration
    Configuration c(items, assign);
    auto explicit_res = is_nash(c, oracle);
    auto grouped_res = is_nash_grouped(group_configuration(c), oracle);
    CHECK(explicit_res.is_nash == grouped_res.is_nash);
  }
}

TEST_CASE("oracle kinds can disagree on feasibility but both converge") {
  // {1/2, 3x(1/3+eps), 2x(1/6)} packs exactly but NFDH rejects it
  Rational eps(1, 100);
  std::vector<Item> items = {Item(0, square(Rational(1, 2)))};
  for (int i = 1; i <= 3; i++) items.emplace_back(i, square(Rational(1, 3) + eps));
  items.emplace_back(4, square(Rational(1, 6)));
  items.emplace_back(5, square(Rational(1, 6)));
  auto nfdh = nfdh_oracle();
  auto exact = exact_oracle();
  BinContent all;
  for (const auto& it : items) all.add(it.shape);
  CHECK(!nfdh.fits(all));
  CHECK(exact.fits(all));
}
