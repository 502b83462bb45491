#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "sbp/analysis.hpp"
#include "sbp/coalition.hpp"
#include "sbp/game.hpp"
#include "sbp/instances.hpp"
#include "sbp/io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitStepLimit = 2;
constexpr int kExitUsage = 64;

sbp::FeasibilityOracle make_oracle(const std::string& name, size_t exact_limit) {
  if (name == "nfdh") return sbp::FeasibilityOracle(sbp::FeasibilityOracle::Kind::Nfdh);
  return sbp::FeasibilityOracle(sbp::FeasibilityOracle::Kind::Exact, exact_limit);
}

sbp::MovePolicy make_policy(const std::string& policy, const std::string& order,
                            uint64_t seed) {
  sbp::MovePolicy p;
  p.target = policy == "best" ? sbp::MovePolicy::Target::BestImproving
                              : sbp::MovePolicy::Target::FirstImproving;
  p.order = order == "random" ? sbp::MovePolicy::Order::Random
                              : sbp::MovePolicy::Order::LowestId;
  p.seed = seed;
  return p;
}

std::string potential_str(const sbp::PotentialVector& pv) {
  std::string s;
  for (size_t i = 0; i < pv.entries.size(); i++) {
    if (i) s += ",";
    s += pv.entries[i].str();
  }
  return s;
}

void write_instance(const sbp::ConstructionOutput& out, const std::string& prefix) {
  using sbp::InstanceFile;
  if (out.explicit_form) {
    const auto& ex = *out.explicit_form;
    InstanceFile inst = InstanceFile::from_items(ex.items);
    inst.save(prefix + ".json");
    InstanceFile opt = InstanceFile::from_items(ex.items);
    opt.assignment = ex.opt_assignment;
    std::vector<InstanceFile::PlacementRecord> recs;
    for (const auto& [bin, packing] : ex.opt_witness)
      for (const auto& pl : packing.placements)
        recs.push_back({pl.item.id, bin, pl.x, pl.y});
    opt.placements = std::move(recs);
    opt.save(prefix + ".opt.json");
    InstanceFile eq = InstanceFile::from_items(ex.items);
    eq.assignment = ex.eq_assignment;
    std::vector<InstanceFile::PlacementRecord> eqrecs;
    for (const auto& [bin, packing] : ex.eq_witness)
      for (const auto& pl : packing.placements)
        eqrecs.push_back({pl.item.id, bin, pl.x, pl.y});
    eq.placements = std::move(eqrecs);
    eq.save(prefix + ".eq.json");
  } else {
    InstanceFile opt;
    opt.bin_groups = out.opt;
    opt.save(prefix + ".opt.json");
    InstanceFile eq;
    eq.bin_groups = out.eq;
    eq.save(prefix + ".eq.json");
  }
}

int cmd_generate(const std::string& kind, int k, const std::string& eps_str,
                 const std::string& n_str, int n_items, uint64_t seed, bool squares,
                 const std::string& max_side_str, const std::string& out_prefix) {
  sbp::Rational eps(0);
  if (!eps_str.empty()) eps = sbp::Rational::parse(eps_str);
  sbp::ConstructionOutput out;
  if (kind == "unbounded-poa") {
    out = sbp::gen_unbounded_poa(k);
  } else if (kind == "square-poa" || kind == "square-poa-ext") {
    mpz_class N = 0;
    if (!n_str.empty()) N = mpz_class(n_str);
    out = sbp::gen_square_poa(N, eps, kind == "square-poa-ext");
  } else if (kind == "strong-poa") {
    out = sbp::gen_strong_poa(k, eps, sbp::Rational(0));
  } else if (kind == "two-bad-bins") {
    out = sbp::gen_two_bad_bins(eps);
  } else if (kind == "random") {
    sbp::RandomSpec spec;
    spec.n = n_items;
    spec.seed = seed;
    spec.squares_only = squares;
    if (!max_side_str.empty()) spec.max_side = sbp::Rational::parse(max_side_str);
    auto items = sbp::gen_random(spec);
    sbp::InstanceFile f = sbp::InstanceFile::from_items(items);
    f.save(out_prefix + ".json");
    std::cout << "items=" << items.size() << " file=" << out_prefix << ".json\n";
    return kExitPass;
  } else {
    std::cerr << "unknown construction '" << kind << "'\n";
    return kExitUsage;
  }
  write_instance(out, out_prefix);
  std::cout << "eq_bins=" << out.declared_eq_bins.get_str()
            << " opt_bins=" << out.declared_opt.get_str()
            << " ratio=" << out.ratio().str() << " (" << out.ratio().decimal(6) << ")\n";
  return kExitPass;
}

int cmd_converge(const std::string& file, const std::string& oracle_name,
                 const std::string& policy, const std::string& order, uint64_t seed,
                 uint64_t max_steps, size_t exact_limit, const std::string& out_file) {
  auto inst = sbp::InstanceFile::load(file);
  sbp::Configuration c = inst.assignment
                             ? inst.to_configuration()
                             : [&] {
                                 // no assignment: all items start in singleton bins
                                 std::map<int, int> a;
                                 int bin = 0;
                                 for (const auto& it : inst.items) a[it.id] = bin++;
                                 return sbp::Configuration(inst.items, a);
                               }();
  auto oracle = make_oracle(oracle_name, exact_limit);
  auto res = sbp::run_dynamics(std::move(c), oracle, make_policy(policy, order, seed),
                               max_steps);
  for (const auto& step : res.trace.steps)
    std::cout << "move item=" << step.item_id << " from=" << step.from_bin
              << " to=" << step.to_bin << " potential=" << potential_str(step.potential_after)
              << "\n";
  bool ne = res.status == sbp::DynamicsStatus::ReachedNash;
  std::cout << "steps=" << res.trace.steps.size() << " nash=" << (ne ? "yes" : "no")
            << " bins=" << res.final_config.bins_in_use().size() << "\n";
  if (!out_file.empty())
    sbp::InstanceFile::from_configuration(res.final_config).save(out_file);
  return ne ? kExitPass : kExitStepLimit;
}

int cmd_verify(const std::string& file, const std::string& mode,
               const std::string& oracle_name, size_t exact_limit, size_t max_size,
               const std::string& threshold_str) {
  auto inst = sbp::InstanceFile::load(file);
  auto oracle = make_oracle(oracle_name, exact_limit);
  if (inst.bin_groups) {
    const auto& g = *inst.bin_groups;
    if (mode == "nash") {
      auto res = sbp::is_nash_grouped(g, oracle);
      if (res.is_nash) {
        std::cout << "nash: pass\n";
        return kExitPass;
      }
      std::cout << "nash: fail witness shape=" << res.witness->shape.w.str() << "x"
                << res.witness->shape.h.str() << " from_group=" << res.witness->from_group
                << "\n";
      return kExitFail;
    }
    if (mode == "strong") {
      auto co = sbp::find_coalition_grouped(g, oracle, max_size);
      if (!co) {
        std::cout << "strong(max_size=" << max_size << "): pass\n";
        return kExitPass;
      }
      std::cout << "strong: fail coalition";
      for (const auto& [shape, group, count] : co->members)
        std::cout << " " << count << "x" << shape.w.str() << "(group " << group << ")";
      std::cout << " -> " << (co->target_group ? std::to_string(*co->target_group) : "new")
                << " new_area=" << co->new_area.str() << "\n";
      return kExitFail;
    }
    if (mode == "occupancy") {
      sbp::Rational thr = sbp::Rational::parse(threshold_str);
      auto rep = sbp::occupancy_audit(g, oracle, thr);
      std::cout << "occupancy(<" << thr.str() << "): " << rep.below.get_str() << " bins\n";
      return kExitPass;
    }
    std::cerr << "unknown verify mode\n";
    return kExitUsage;
  }
  sbp::Configuration c = inst.to_configuration();
  if (mode == "nash") {
    auto res = sbp::is_nash(c, oracle);
    if (res.is_nash) {
      std::cout << "nash: pass\n";
      return kExitPass;
    }
    std::cout << "nash: fail witness item=" << res.witness->item_id
              << " target=" << res.witness->target_bin << "\n";
    return kExitFail;
  }
  if (mode == "strong") {
    auto co = sbp::find_coalition(c, oracle, max_size);
    if (!co) {
      std::cout << "strong(max_size=" << max_size << "): pass\n";
      return kExitPass;
    }
    std::cout << "strong: fail coalition items=";
    for (size_t i = 0; i < co->item_ids.size(); i++)
      std::cout << (i ? "," : "") << co->item_ids[i];
    std::cout << " target=" << (co->target_bin ? std::to_string(*co->target_bin) : "new")
              << " new_area=" << co->new_area.str() << "\n";
    return kExitFail;
  }
  if (mode == "occupancy") {
    sbp::Rational thr = sbp::Rational::parse(threshold_str);
    auto rep = sbp::occupancy_audit(c, oracle, thr);
    std::cout << "occupancy(<" << thr.str() << "): " << rep.below.get_str() << " bins:";
    for (int bin : rep.offending_bins) std::cout << " " << bin;
    std::cout << "\n";
    return kExitPass;
  }
  std::cerr << "unknown verify mode\n";
  return kExitUsage;
}

int cmd_bounds() {
  using sbp::Rational;
  std::cout << "parametric PoA(NFDH) bounds, dimensions <= 1/m:\n";
  for (int m = 2; m <= 10; m++) {
    auto b = sbp::parametric_bound(m);
    std::cout << "  m=" << m << "  (m/(m-1))^2 = " << b.str() << " = " << b.decimal(6)
              << "\n";
  }
  auto lemma = sbp::ratio_lemma_bound(Rational(1, 4), Rational(4, 9));
  std::cout << "PoA upper (squares): " << lemma.str() << " = " << lemma.decimal(4) << "\n";
  std::cout << "PoA window (squares): [2.3634, 2.6875]\n";
  auto spoa = sbp::spoa_constant();
  std::cout << "SPoA root x of (1-x^2)(1-x)^2 = 1/12: [" << spoa.root_lo.decimal(9) << ", "
            << spoa.root_hi.decimal(9) << "]\n";
  std::cout << "SPoA case bounds: " << spoa.bound_case1_hi.decimal(9) << ", "
            << spoa.bound_case2_hi.decimal(9) << " (<= 2.3605)\n";
  std::cout << "SPoA upper (squares): 2.3605\n";
  std::cout << "SPoA window (squares): [2.076, 2.3605]\n";
  std::cout << "L_k series:\n";
  for (int k = 2; k <= 30; k++) {
    auto v = sbp::lk_series(k);
    std::cout << "  L_" << k << " = " << v.str() << " = " << v.decimal(6) << "\n";
  }
  return kExitPass;
}

int cmd_report(int m, int count, int n, uint64_t seed, const std::string& oracle_name,
               size_t exact_limit, int jobs) {
  auto bound = sbp::parametric_bound(m);
  std::cout << "parametric bound (m=" << m << "): " << bound.str() << "\n";
  struct Row {
    uint64_t seed;
    size_t eq_bins;
    std::string area;
    std::string ratio;
    bool within;
  };
  std::vector<Row> rows(count);
  auto worker = [&](int lo, int hi) {
    auto oracle = make_oracle(oracle_name, exact_limit);
    for (int i = lo; i < hi; i++) {
      sbp::RandomSpec spec;
      spec.n = n;
      spec.seed = seed + i;
      spec.squares_only = true;
      spec.max_side = sbp::Rational(1, m);
      auto items = sbp::gen_random(spec);
      std::map<int, int> singletons;
      for (const auto& it : items) singletons[it.id] = it.id;
      sbp::Configuration c(items, singletons);
      auto res = sbp::run_dynamics(std::move(c), oracle, sbp::MovePolicy{}, 1000000);
      auto area = sbp::total_area(res.final_config.items());
      size_t bins = res.final_config.bins_in_use().size();
      // Epstein-Levy accounting: all bins except at most one hold area
      // >= ((m-1)/m)^2, so bins <= bound * area + 1
      bool ok = sbp::Rational((long)bins) <= bound * area + sbp::Rational(1);
      rows[i] = {spec.seed, bins, area.decimal(4),
                 (sbp::Rational((long)bins) / area).decimal(4), ok};
    }
  };
  if (jobs <= 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    int chunk = (count + jobs - 1) / jobs;
    for (int j = 0; j < jobs; j++) {
      int lo = j * chunk, hi = std::min(count, (j + 1) * chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  bool all_ok = true;
  for (const auto& r : rows) {
    std::cout << "seed=" << r.seed << " eq_bins=" << r.eq_bins << " area=" << r.area
              << " bins/area=" << r.ratio << " within_bound=" << (r.within ? "yes" : "no")
              << "\n";
    all_ok = all_ok && r.within;
  }
  std::cout << (all_ok ? "report: all within bound\n" : "report: bound violated\n");
  return all_ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selfish 2D bin packing games: generators, dynamics, verification"};
  app.require_subcommand(1);

  std::string kind, eps_str, n_str, max_side_str, out_prefix = "instance";
  int k = 4, n_items = 10;
  uint64_t seed = 0, max_steps = 1000000;
  bool squares = false;
  auto* gen = app.add_subcommand("generate", "emit a construction or random instance");
  gen->add_option("construction", kind,
                  "unbounded-poa | square-poa | square-poa-ext | strong-poa | "
                  "two-bad-bins | random")
      ->required();
  gen->add_option("--k", k, "construction parameter k");
  gen->add_option("--eps", eps_str, "rational epsilon, e.g. 1/1000");
  gen->add_option("--N", n_str, "bin count N (constructions; default minimal)");
  gen->add_option("--n", n_items, "random: item count");
  gen->add_option("--seed", seed, "random: seed");
  gen->add_flag("--squares", squares, "random: squares only");
  gen->add_option("--max-side", max_side_str, "random: side cap, e.g. 1/3");
  gen->add_option("--out", out_prefix, "output file prefix");

  std::string file, oracle_name = "nfdh", policy = "first", order = "lowest-id", out_file;
  size_t exact_limit = 10, max_size = 2;
  std::string threshold_str = "4/9";
  auto* conv = app.add_subcommand("converge", "run best-response dynamics");
  conv->add_option("file", file, "instance JSON")->required();
  conv->add_option("--oracle", oracle_name, "nfdh | exact");
  conv->add_option("--policy", policy, "first | best");
  conv->add_option("--order", order, "lowest-id | random");
  conv->add_option("--seed", seed, "policy seed");
  conv->add_option("--max-steps", max_steps, "step limit");
  conv->add_option("--exact-limit", exact_limit, "exact oracle item limit");
  conv->add_option("--out", out_file, "write final configuration here");

  std::string mode;
  auto* ver = app.add_subcommand("verify", "check nash / strong / occupancy");
  ver->add_option("mode", mode, "nash | strong | occupancy")->required();
  ver->add_option("file", file, "instance JSON")->required();
  ver->add_option("--oracle", oracle_name, "nfdh | exact");
  ver->add_option("--exact-limit", exact_limit, "exact oracle item limit");
  ver->add_option("--max-size", max_size, "strong: coalition size bound");
  ver->add_option("--threshold", threshold_str, "occupancy: rational threshold");

  auto* bounds = app.add_subcommand("bounds", "print the closed-form bound table");

  int rep_m = 2, rep_count = 20, jobs = 1;
  auto* rep = app.add_subcommand("report", "random-instance ratios vs parametric bound");
  rep->add_option("--m", rep_m, "side cap 1/m");
  rep->add_option("--count", rep_count, "number of instances");
  rep->add_option("--n", n_items, "items per instance");
  rep->add_option("--seed", seed, "base seed");
  rep->add_option("--oracle", oracle_name, "nfdh | exact");
  rep->add_option("--exact-limit", exact_limit, "exact oracle item limit");
  rep->add_option("--jobs", jobs, "parallel batches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_generate(kind, k, eps_str, n_str, n_items, seed, squares, max_side_str,
                          out_prefix);
    if (conv->parsed())
      return cmd_converge(file, oracle_name, policy, order, seed, max_steps, exact_limit,
                          out_file);
    if (ver->parsed())
      return cmd_verify(file, mode, oracle_name, exact_limit, max_size, threshold_str);
    if (bounds->parsed()) return cmd_bounds();
    if (rep->parsed())
      return cmd_report(rep_m, rep_count, n_items, seed, oracle_name, exact_limit, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
