#include "towerlab/galois.hpp"

namespace towerlab {

std::string to_string(GaloisType t) {
  switch (t) {
    case GaloisType::Reducible: return "Reducible";
    case GaloisType::V4: return "V4";
    case GaloisType::C4: return "C4";
    case GaloisType::D4: return "D4";
  }
  return "?";
}

namespace {

TowerElem rational_const(int level, long v) { return TowerElem::constant(level, Rat(v)); }

}  // namespace

bool biquad_irreducible(const TowerCtx& ctx, const TowerElem& b, const TowerElem& d) {
  if (b.level() != d.level()) throw precondition_error("biquad_irreducible: level mismatch");
  const int level = b.level();
  TowerElem b2_4d = sub(square(ctx, b), mul(ctx, rational_const(level, 4), d));
  if (is_square_in_tower(ctx, b2_4d)) return false;

  TowerElem minus_b = neg(b);
  if (auto droot = is_square_in_tower(ctx, d)) {
    TowerElem two_delta = add(*droot, *droot);
    if (is_square_in_tower(ctx, add(minus_b, two_delta))) return false;
    if (is_square_in_tower(ctx, sub(minus_b, two_delta))) return false;
    return true;
  }
  // d is not a square: test -b +- 2 sqrt(d) in the formal extension
  // adjoining sqrt(d); these are the squares of the root sums
  // (alpha +- beta)^2.
  TowerCtx ext = ctx.truncated(level).extend(d);
  TowerElem sqrt_d = TowerElem::generator(ext.max_level());
  TowerElem mb = lift(minus_b, ext.max_level());
  TowerElem two_sd = add(sqrt_d, sqrt_d);
  if (is_square_in_tower(ext, add(mb, two_sd))) return false;
  if (is_square_in_tower(ext, sub(mb, two_sd))) return false;
  return true;
}

GaloisType biquad_galois_type(const TowerCtx& ctx, const TowerElem& b, const TowerElem& d) {
  if (!biquad_irreducible(ctx, b, d)) return GaloisType::Reducible;
  if (is_square_in_tower(ctx, d)) return GaloisType::V4;
  const int level = b.level();
  TowerElem b2_4d = sub(square(ctx, b), mul(ctx, rational_const(level, 4), d));
  if (is_square_in_tower(ctx, mul(ctx, d, b2_4d))) return GaloisType::C4;
  return GaloisType::D4;
}

Step2Report step2_galois_type(const TowerCtx& ctx, int n) {
  if (n < 0 || n + 2 > ctx.max_level())
    throw precondition_error("step2_galois_type: tower context too shallow for n+2");
  const long nu = ctx.pair().nu;
  const long x0 = ctx.pair().x0;
  auto u = u_seq(nu, n + 2);
  const Int u0 = u[0];

  TowerElem b = rational_const(n, -2 * nu);
  TowerElem d = sub(TowerElem::constant(n, Rat(u0)), n == 0
                                                         ? TowerElem::constant(0, Rat(x0))
                                                         : TowerElem::generator(n));
  Step2Report rep;
  rep.n = n;
  rep.type = biquad_galois_type(ctx, b, d);
  rep.un_x0_square = is_perfect_square(u[static_cast<size_t>(n)] - x0);
  if (n >= 1) {
    Int fn = (u[static_cast<size_t>(n - 1)] - x0) * (u[static_cast<size_t>(n)] - x0);
    rep.fn_square = is_perfect_square(fn);
  }
  return rep;
}

bool klein_over_yeps(const Pair& pair, int eps) {
  if (eps != 1 && eps != -1) throw precondition_error("klein_over_yeps: eps must be +-1");
  Int u0 = Int(pair.nu) * pair.nu - pair.nu;
  Int a2 = u0 - pair.x0;
  if (!is_perfect_square(a2) || a2 <= 0)
    throw precondition_error("klein_over_yeps: pair has no square certificate (thin tower)");
  // Rational solvability of the (v, w) system reduces to the
  // discriminant a^2 + nu^4 - 2nu^3 being a perfect square; eps does
  // not enter the discriminant.
  Int nu(pair.nu);
  return is_perfect_square(a2 + nu * nu * nu * (nu - 2));
}

}  // namespace towerlab
