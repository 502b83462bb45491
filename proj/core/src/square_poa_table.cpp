#include <algorithm>
#include <map>
#include <set>

#include "sbp/instances.hpp"

namespace sbp {
namespace {

// Coordinate tables for the template bin of the homogeneous-bins square
// construction. Coordinates are x = x_num/x_den + x_eps * eps (same for y);
// the layout is valid for every eps in (0, eps_max] with eps_max re-checked
// at runtime against the concrete eps.
const std::vector<TableEntry> kBaseTable = {
    // filled by the layout derivation; see square_poa_layout tests
};

const std::vector<TableEntry> kExtendedTable = {
    // filled by the layout derivation; see square_poa_layout tests
};

struct ClassSpec {
  int inv;
  int count;
};

std::vector<ClassSpec> class_specs(bool extended) {
  std::vector<ClassSpec> v = {{2, 1}, {3, 3}, {4, 2}, {5, 2}, {7, 5}, {8, 2}, {13, 5}};
  if (extended) {
    v.push_back({14, 2});
    v.push_back({18, 1});
    v.push_back({21, 2});
    v.push_back({25, 2});
    v.push_back({43, 24});
  }
  return v;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) { return a / gcd(a, b) * b; }

struct SquarePoaBuild {
  BinTemplate opt_template;
  std::vector<ClassSpec> classes;
  Rational gamma;          // sand area per optimal bin
  Rational sand_side;
  mpz_class n_min;         // minimal N making every multiplicity integral
};

SquarePoaBuild build_template(const Rational& eps, bool extended) {
  const auto& table = square_poa_table(extended);
  if (table.empty())
    throw std::logic_error("square_poa: coordinate table not initialized");
  SquarePoaBuild b;
  b.classes = class_specs(extended);

  // explicit squares from the table
  int id = 0;
  std::map<int, int> seen_counts;
  for (const auto& e : table) {
    Rational side = square_poa_side(e.inv, eps);
    Rational x = Rational(e.x_num, e.x_den) + Rational(e.x_eps) * eps;
    Rational y = Rational(e.y_num, e.y_den) + Rational(e.y_eps) * eps;
    if (x.sign() < 0 || y.sign() < 0) throw BadEpsilon("square_poa: negative coordinate");
    b.opt_template.squares.placements.push_back({Item(id++, Rect(side, side)), x, y});
    seen_counts[e.inv]++;
  }
  for (const auto& cs : b.classes)
    if (seen_counts[cs.inv] != cs.count)
      throw std::logic_error("square_poa: table counts mismatch");
  if (!packing_is_valid(b.opt_template.squares))
    throw BadEpsilon("square_poa: table layout invalid at this eps");

  // residual cells via the coordinate sweep; cell edges align with all
  // square edges, so each cell is entirely free or entirely covered
  std::set<Rational> xs{Rational(0), Rational(1)}, ys{Rational(0), Rational(1)};
  for (const auto& pl : b.opt_template.squares.placements) {
    xs.insert(pl.x);
    xs.insert(pl.x + pl.item.shape.w);
    ys.insert(pl.y);
    ys.insert(pl.y + pl.item.shape.h);
  }
  std::vector<Rational> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
  mpz_class denom_lcm = 1;
  for (const auto& v : xv) denom_lcm = lcm(denom_lcm, v.den());
  for (const auto& v : yv) denom_lcm = lcm(denom_lcm, v.den());
  b.sand_side = Rational(1) / Rational(denom_lcm);

  SandFill sf;
  sf.side = b.sand_side;
  sf.count = 0;
  Rational covered_area;
  for (size_t i = 0; i + 1 < xv.size(); i++) {
    for (size_t j = 0; j + 1 < yv.size(); j++) {
      const Rational& x0 = xv[i];
      const Rational& y0 = yv[j];
      Rational w = xv[i + 1] - x0, h = yv[j + 1] - y0;
      bool covered = false;
      for (const auto& pl : b.opt_template.squares.placements) {
        if (pl.x <= x0 && xv[i + 1] <= pl.x + pl.item.shape.w && pl.y <= y0 &&
            yv[j + 1] <= pl.y + pl.item.shape.h) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        mpz_class grains = rfloor(w / b.sand_side) * rfloor(h / b.sand_side);
        sf.count += grains;
        sf.cells.push_back({x0, y0, w, h});
      }
    }
  }
  b.gamma = Rational(sf.count) * b.sand_side * b.sand_side;
  Rational squares_area = b.opt_template.squares.used_area();
  if (squares_area + b.gamma != Rational(1))
    throw std::logic_error("square_poa: sand cells do not tile the residual exactly");
  b.opt_template.sand = std::move(sf);
  if (!b.opt_template.validate())
    throw BadEpsilon("square_poa: template validation failed");

  // minimal N: every m_i = n_i N / cap_i and gamma N must be integral
  b.n_min = 1;
  for (const auto& cs : b.classes) {
    mpz_class cap = mpz_class(cs.inv - 1) * (cs.inv - 1);
    Rational coeff = Rational(cs.count) / Rational(cap);
    b.n_min = lcm(b.n_min, coeff.den());
  }
  b.n_min = lcm(b.n_min, b.gamma.den());
  return b;
}

ConstructionOutput assemble(const SquarePoaBuild& b, const mpz_class& N_in,
                            const Rational& eps) {
  mpz_class N = N_in == 0 ? b.n_min : N_in;
  if (N % b.n_min != 0)
    throw BadN("square_poa: N must be a multiple of " + b.n_min.get_str());

  ConstructionOutput out;
  out.opt.add_bin(b.opt_template.content(), N);
  out.opt_templates.push_back(b.opt_template);
  out.declared_opt = N;

  mpz_class eq_bins = 0;
  for (const auto& cs : b.classes) {
    Rational side = square_poa_side(cs.inv, eps);
    long per_axis = cs.inv - 1;
    if (Rational(per_axis) * side > Rational(1))
      throw BadEpsilon("square_poa: homogeneous grid does not fit");
    BinTemplate t;
    int id = 0;
    for (long r = 0; r < per_axis; r++)
      for (long c = 0; c < per_axis; c++)
        t.squares.placements.push_back(
            {Item(id++, Rect(side, side)), Rational(c) * side, Rational(r) * side});
    if (!t.validate()) throw BadEpsilon("square_poa: homogeneous template invalid");
    mpz_class cap = mpz_class(per_axis) * per_axis;
    mpz_class mult = cs.count * N / cap;
    out.eq.add_bin(t.content(), mult);
    out.eq_templates.push_back(t);
    eq_bins += mult;
  }
  // sand bins, completely filled by grains
  {
    Rational inv = Rational(1) / (b.sand_side * b.sand_side);
    BinTemplate t;
    SandFill sf;
    sf.side = b.sand_side;
    sf.count = inv.num();
    sf.cells.push_back({Rational(0), Rational(0), Rational(1), Rational(1)});
    t.sand = std::move(sf);
    Rational mult_r = b.gamma * Rational(N);
    if (mult_r.den() != 1) throw BadN("square_poa: sand multiplicity not integral");
    out.eq.add_bin(t.content(), mult_r.num());
    out.eq_templates.push_back(t);
    eq_bins += mult_r.num();
  }
  out.opt.normalize();
  out.eq.normalize();
  out.declared_eq_bins = eq_bins;
  return out;
}

}  // namespace

const std::vector<TableEntry>& square_poa_table(bool extended) {
  return extended ? kExtendedTable : kBaseTable;
}

ConstructionOutput gen_square_poa(const mpz_class& N, const Rational& eps_in, bool extended) {
  Rational eps = eps_in.is_zero() ? square_poa_default_eps(extended) : eps_in;
  if (eps.sign() <= 0) throw BadEpsilon("square_poa: eps must be positive");
  auto build = build_template(eps, extended);
  auto out = assemble(build, N, eps);
  // the homogeneous configuration must be a Nash equilibrium under NFDH;
  // this validates every migration inequality exactly
  FeasibilityOracle nfdh(FeasibilityOracle::Kind::Nfdh);
  auto nash = is_nash_grouped(out.eq, nfdh);
  if (!nash.is_nash) throw BadEpsilon("square_poa: equilibrium check failed at this eps");
  return out;
}

Rational square_poa_default_eps(bool extended) {
  static Rational cached_base, cached_ext;
  Rational& slot = extended ? cached_ext : cached_base;
  if (!slot.is_zero()) return slot;
  Rational target = extended ? Rational(23634, 10000) : Rational(23604, 10000);
  mpz_class p = 10;
  for (int t = 1; t <= 12; t++, p *= 10) {
    Rational eps = Rational(1) / Rational(p);
    try {
      auto build = build_template(eps, extended);
      auto out = assemble(build, 0, eps);
      FeasibilityOracle nfdh(FeasibilityOracle::Kind::Nfdh);
      if (!is_nash_grouped(out.eq, nfdh).is_nash) continue;
      if (!(out.ratio() > target)) continue;
      slot = eps;
      return slot;
    } catch (const BadEpsilon&) {
      continue;
    }
  }
  throw BadEpsilon("square_poa: no default eps of the form 1/10^t validates");
}

}  // namespace sbp
