#include "sbp/instances.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sbp {

BinContent BinTemplate::content() const {
  BinContent c;
  for (const auto& pl : squares.placements) c.add(pl.item.shape);
  if (sand) c.add(Rect(sand->side, sand->side), sand->count);
  return c;
}

Rational BinTemplate::used_area() const {
  Rational a = squares.used_area();
  if (sand) a += Rational(sand->count) * sand->side * sand->side;
  return a;
}

bool BinTemplate::validate() const {
  if (!packing_is_valid(squares)) return false;
  if (!sand) return true;
  const Rational one(1);
  mpz_class grains = 0;
  for (const auto& cell : sand->cells) {
    if (cell.x.sign() < 0 || cell.y.sign() < 0) return false;
    if (cell.x + cell.w > one || cell.y + cell.h > one) return false;
    if (cell.w.sign() <= 0 || cell.h.sign() <= 0) return false;
    if (!divides(sand->side, cell.w) || !divides(sand->side, cell.h)) return false;
    Rect cr(cell.w, cell.h);
    for (const auto& pl : squares.placements)
      if (!rects_interior_disjoint(cell.x, cell.y, cr, pl.x, pl.y, pl.item.shape))
        return false;
    grains += rfloor(cell.w / sand->side) * rfloor(cell.h / sand->side);
  }
  for (size_t i = 0; i < sand->cells.size(); i++)
    for (size_t j = i + 1; j < sand->cells.size(); j++) {
      const auto& a = sand->cells[i];
      const auto& b = sand->cells[j];
      if (!rects_interior_disjoint(a.x, a.y, Rect(a.w, a.h), b.x, b.y, Rect(b.w, b.h)))
        return false;
    }
  if (grains != sand->count) return false;
  return used_area() <= one;
}

namespace {

Rational pow2_inv(int i) {  // 1 / 2^i
  mpz_class d = 1;
  d <<= i;
  return Rational(1) / Rational(d);
}

void add_group_with_template(ConstructionOutput& out, bool opt_side, const BinTemplate& templ,
                             const mpz_class& multiplicity) {
  auto& cfg = opt_side ? out.opt : out.eq;
  auto& templates = opt_side ? out.opt_templates : out.eq_templates;
  cfg.add_bin(templ.content(), multiplicity);
  templates.push_back(templ);
}

}  // namespace

ConstructionOutput gen_unbounded_poa(int k) {
  if (k < 1) throw std::invalid_argument("gen_unbounded_poa: k >= 1");
  ConstructionOutput out;
  ExplicitConstruction ex;
  // item 2i: the wide rectangle (1, 1/2^{i+1}); item 2i+1: the tall filler
  for (int i = 1; i <= k; i++) {
    Rational h = pow2_inv(i);
    ex.items.emplace_back(2 * (i - 1), Rect(Rational(1), h));
    ex.items.emplace_back(2 * (i - 1) + 1, Rect(h, Rational(1) - h));
  }
  // equilibrium: bin per pair, filler stacked on the wide rectangle
  for (int i = 1; i <= k; i++) {
    Rational h = pow2_inv(i);
    int bin = i - 1;
    ex.eq_assignment[2 * (i - 1)] = bin;
    ex.eq_assignment[2 * (i - 1) + 1] = bin;
    Packing p;
    p.placements.push_back({ex.items[2 * (i - 1)], Rational(0), Rational(0)});
    p.placements.push_back({ex.items[2 * (i - 1) + 1], Rational(0), h});
    ex.eq_witness[bin] = p;
    BinTemplate t;
    t.squares = p;
    add_group_with_template(out, false, t, 1);
  }
  if (k == 1) {
    ex.opt_assignment = ex.eq_assignment;
    ex.opt_witness = ex.eq_witness;
    out.opt = out.eq;
    out.opt_templates = out.eq_templates;
  } else {
    Packing wides, talls;
    Rational y0, x0;
    for (int i = 1; i <= k; i++) {
      Rational h = pow2_inv(i);
      ex.opt_assignment[2 * (i - 1)] = 0;
      wides.placements.push_back({ex.items[2 * (i - 1)], Rational(0), y0});
      y0 += h;
      ex.opt_assignment[2 * (i - 1) + 1] = 1;
      talls.placements.push_back({ex.items[2 * (i - 1) + 1], x0, Rational(0)});
      x0 += h;
    }
    ex.opt_witness[0] = wides;
    ex.opt_witness[1] = talls;
    BinTemplate tw, tt;
    tw.squares = wides;
    tt.squares = talls;
    add_group_with_template(out, true, tw, 1);
    add_group_with_template(out, true, tt, 1);
  }
  out.opt.normalize();
  out.eq.normalize();
  out.declared_opt = k == 1 ? 1 : 2;
  out.declared_eq_bins = k;
  for (const auto& [bin, p] : ex.eq_witness)
    if (!packing_is_valid(p)) throw std::logic_error("gen_unbounded_poa: bad eq witness");
  for (const auto& [bin, p] : ex.opt_witness)
    if (!packing_is_valid(p)) throw std::logic_error("gen_unbounded_poa: bad opt witness");
  out.explicit_form = std::move(ex);
  return out;
}

ConstructionOutput gen_two_bad_bins(const Rational& eps_in) {
  Rational eps = eps_in.is_zero() ? Rational(1, 100) : eps_in;
  if (eps.sign() <= 0 || eps >= Rational(1, 6))
    throw BadEpsilon("two_bad_bins: need 0 < eps < 1/6");
  ConstructionOutput out;
  ExplicitConstruction ex;
  Rational half(1, 2), sixth(1, 6);
  Rational a = Rational(1, 3) + eps;
  ex.items.emplace_back(0, Rect(half, half));
  for (int i = 1; i <= 3; i++) ex.items.emplace_back(i, Rect(a, a));
  ex.items.emplace_back(4, Rect(sixth, sixth));
  ex.items.emplace_back(5, Rect(sixth, sixth));
  ex.opt_assignment = {{0, 0}, {1, 0}, {2, 0}, {3, 1}, {4, 0}, {5, 0}};
  // there is no full-bin optimum here; the construction only exhibits the
  // two-bad-bins equilibrium, so opt fields mirror the equilibrium
  ex.eq_assignment = {{0, 0}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  Packing b0, b1;
  b0.placements.push_back({ex.items[0], Rational(0), Rational(0)});
  b1.placements.push_back({ex.items[1], Rational(0), Rational(0)});
  b1.placements.push_back({ex.items[2], a, Rational(0)});
  b1.placements.push_back({ex.items[3], Rational(0), a});
  Rational sx = a + a;
  b1.placements.push_back({ex.items[4], sx, Rational(0)});
  b1.placements.push_back({ex.items[5], sx, sixth});
  if (!packing_is_valid(b0) || !packing_is_valid(b1))
    throw BadEpsilon("two_bad_bins: witness invalid for this eps");
  ex.eq_witness[0] = b0;
  ex.eq_witness[1] = b1;
  ex.opt_assignment = ex.eq_assignment;
  ex.opt_witness = ex.eq_witness;
  BinTemplate t0, t1;
  t0.squares = b0;
  t1.squares = b1;
  add_group_with_template(out, false, t0, 1);
  add_group_with_template(out, false, t1, 1);
  out.opt = out.eq;
  out.opt_templates = out.eq_templates;
  out.eq.normalize();
  out.opt.normalize();
  out.declared_opt = 2;
  out.declared_eq_bins = 2;
  out.explicit_form = std::move(ex);
  return out;
}

namespace {

// L-shell positions for the dyadic strong-poa bin: class i occupies the cells
// of the (2^i-1)-grid whose row or column index equals 2^i - 2.
std::vector<std::pair<long, long>> shell_cells(int i) {
  long edge = (1L << i) - 2;  // index of the new outer layer
  std::vector<std::pair<long, long>> cells;
  for (long r = 0; r <= edge; r++) cells.push_back({r, edge});
  for (long c = 0; c < edge; c++) cells.push_back({edge, c});
  return cells;
}

}  // namespace

ConstructionOutput gen_strong_poa(int k, const Rational& eps_in, const Rational& sigma_k_in) {
  if (k < 3) throw std::invalid_argument("gen_strong_poa: k >= 3");
  mpz_class denom = (mpz_class(1) << (k - 1)) - 1;  // 2^{k-1} - 1
  Rational eps = eps_in.is_zero() ? Rational(1) / Rational(denom) : eps_in;
  if (eps.sign() <= 0) throw BadEpsilon("strong_poa: eps must be positive");
  // sides sigma_i = (1+eps)/2^i; sigma_{k-1} must not exceed ... every side
  // must fit the maximal homogeneous grid: (2^i - 1) sigma_i <= 1
  std::vector<Rational> sigma(k);  // 1-based use: sigma[i] for i in 1..k-1
  for (int i = 1; i <= k - 1; i++) sigma[i] = (Rational(1) + eps) * pow2_inv(i);
  for (int i = 1; i <= k - 1; i++) {
    mpz_class cap = (mpz_class(1) << i) - 1;
    if (Rational(cap) * sigma[i] > Rational(1))
      throw BadEpsilon("strong_poa: eps too large for the homogeneous grids");
  }
  Rational occupied = Rational(denom) * sigma[k - 1];  // edge of the filled corner
  Rational sand_side = sigma_k_in;
  if (sand_side.is_zero()) {
    // largest 1/L with L integral dividing sigma_{k-1} = (q+p)/(q 2^{k-1})
    mpz_class q = eps.den(), p = eps.num();
    mpz_class base = (mpz_class(1) << (k - 1)) * q;
    mpz_class L = base / gcd(base, q + p);
    sand_side = Rational(1) / Rational(L);
  }
  if (sand_side.sign() <= 0 || !divides(sand_side, Rational(1)) ||
      !divides(sand_side, sigma[k - 1]))
    throw BadSigmaK("strong_poa: sigma_k must divide 1 and sigma_{k-1}");

  // per-bin class counts n_i = 2^{i+1} - 3; sand count fills the bin exactly
  std::vector<mpz_class> n(k + 1);
  for (int i = 1; i <= k - 1; i++) n[i] = (mpz_class(1) << (i + 1)) - 3;
  Rational leftover = Rational(1) - occupied * occupied;
  Rational sand_count_r = leftover / (sand_side * sand_side);
  if (sand_count_r.den() != 1)
    throw BadSigmaK("strong_poa: sand does not tile the leftover exactly");
  mpz_class n_k = sand_count_r.num();

  // multiplicities: m_i = n_i N / (2^i - 1)^2, m_k = n_k N sigma_k^2
  mpz_class N = 1;
  for (int i = 1; i <= k - 1; i++) {
    mpz_class cap = ((mpz_class(1) << i) - 1) * ((mpz_class(1) << i) - 1);
    N = N / gcd(N, cap) * cap;  // lcm
  }
  if (n_k != 0) {
    Rational mk_coeff = Rational(n_k) * sand_side * sand_side;
    mpz_class d = mk_coeff.den();
    N = N / gcd(N, d) * d;
  }

  ConstructionOutput out;
  // optimal template: nested L-shells plus sand in the leftover L-region
  BinTemplate opt_t;
  int next_id = 0;
  for (int i = 1; i <= k - 1; i++) {
    for (auto [r, c] : shell_cells(i)) {
      Item it(next_id++, Rect(sigma[i], sigma[i]));
      opt_t.squares.placements.push_back(
          {it, Rational(c) * sigma[i], Rational(r) * sigma[i]});
    }
  }
  if (n_k != 0) {
    SandFill sf;
    sf.side = sand_side;
    sf.count = n_k;
    sf.cells.push_back({occupied, Rational(0), Rational(1) - occupied, Rational(1)});
    sf.cells.push_back({Rational(0), occupied, occupied, Rational(1) - occupied});
    opt_t.sand = std::move(sf);
  }
  bool materialize_witnesses = opt_t.squares.placements.size() <= 2500;
  if (materialize_witnesses && !opt_t.validate())
    throw BadEpsilon("strong_poa: optimal template failed validation");
  add_group_with_template(out, true, opt_t, N);

  mpz_class eq_bins = 0;
  for (int i = 1; i <= k - 1; i++) {
    mpz_class side_count = (mpz_class(1) << i) - 1;
    mpz_class cap = side_count * side_count;
    mpz_class mult = n[i] * N / cap;
    if (mult == 0) continue;
    BinTemplate t;
    int id = 0;
    for (mpz_class r = 0; r < side_count; r++)
      for (mpz_class c = 0; c < side_count; c++)
        t.squares.placements.push_back(
            {Item(id++, Rect(sigma[i], sigma[i])), Rational(c) * sigma[i], Rational(r) * sigma[i]});
    if (t.squares.placements.size() <= 2500 && !t.validate())
      throw BadEpsilon("strong_poa: homogeneous template failed validation");
    add_group_with_template(out, false, t, mult);
    eq_bins += mult;
  }
  if (n_k != 0) {
    Rational mk_coeff = Rational(n_k) * sand_side * sand_side;
    Rational mult_r = mk_coeff * Rational(N);
    if (mult_r.den() != 1) throw BadN("strong_poa: sand multiplicity not integral");
    BinTemplate t;
    SandFill sf;
    sf.side = sand_side;
    Rational full = Rational(1) / (sand_side * sand_side);
    sf.count = full.num();
    sf.cells.push_back({Rational(0), Rational(0), Rational(1), Rational(1)});
    t.sand = std::move(sf);
    add_group_with_template(out, false, t, mult_r.num());
    eq_bins += mult_r.num();
  }
  out.opt.normalize();
  out.eq.normalize();
  out.declared_opt = N;
  out.declared_eq_bins = eq_bins;

  // explicit materialization for moderate sizes (sand stays implicit, so only
  // sand-free instances materialize)
  mpz_class total_items = 0;
  for (int i = 1; i <= k - 1; i++) total_items += n[i] * N;
  if (n_k == 0 && total_items <= 100000) {
    ExplicitConstruction ex;
    long Nl = N.get_si();
    int id = 0;
    std::vector<std::vector<int>> per_class_ids(k);
    for (int i = 1; i <= k - 1; i++) {
      long count = (n[i] * N).get_si();
      for (long j = 0; j < count; j++) {
        ex.items.emplace_back(id, Rect(sigma[i], sigma[i]));
        per_class_ids[i].push_back(id);
        id++;
      }
    }
    // optimal bins: N copies of the shell template
    int bin = 0;
    std::vector<size_t> cursor(k, 0);
    for (long copy = 0; copy < Nl; copy++, bin++) {
      Packing p;
      for (int i = 1; i <= k - 1; i++) {
        for (auto [r, c] : shell_cells(i)) {
          int iid = per_class_ids[i][cursor[i]++];
          ex.opt_assignment[iid] = bin;
          p.placements.push_back(
              {ex.items[iid], Rational(c) * sigma[i], Rational(r) * sigma[i]});
        }
      }
      ex.opt_witness[bin] = std::move(p);
    }
    // equilibrium bins: homogeneous grids
    bin = 0;
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int i = 1; i <= k - 1; i++) {
      mpz_class side_count = (mpz_class(1) << i) - 1;
      long sc = side_count.get_si();
      long cap = sc * sc;
      long mult = (n[i] * N / (side_count * side_count)).get_si();
      for (long b = 0; b < mult; b++, bin++) {
        Packing p;
        for (long cell = 0; cell < cap; cell++) {
          int iid = per_class_ids[i][cursor[i]++];
          ex.eq_assignment[iid] = bin;
          p.placements.push_back({ex.items[iid], Rational(cell % sc) * sigma[i],
                                  Rational(cell / sc) * sigma[i]});
        }
        ex.eq_witness[bin] = std::move(p);
      }
    }
    out.explicit_form = std::move(ex);
  }
  return out;
}

std::vector<Item> gen_random(const RandomSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("gen_random: n >= 1");
  if (spec.grid_log2 < 1 || spec.grid_log2 > 30)
    throw std::invalid_argument("gen_random: grid_log2 in [1,30]");
  std::mt19937_64 rng(spec.seed);
  mpz_class denom = mpz_class(1) << spec.grid_log2;
  Rational unit = Rational(1) / Rational(denom);
  mpz_class max_steps_z = rfloor(spec.max_side / unit);
  if (max_steps_z < 1) throw std::invalid_argument("gen_random: cap below grid unit");
  unsigned long max_steps = max_steps_z.get_ui();
  auto draw = [&]() {
    unsigned long j = 1 + rng() % max_steps;
    return Rational(mpz_class(j)) * unit;
  };
  std::vector<Item> items;
  for (int i = 0; i < spec.n; i++) {
    Rational w = draw();
    Rational h = spec.squares_only ? w : draw();
    items.emplace_back(i, Rect(w, h));
  }
  return items;
}

Rational square_poa_side(int inv, const Rational& eps) {
  return Rational(1, inv) + eps;
}

}  // namespace sbp
