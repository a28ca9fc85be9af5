#include "towerlab/jr.hpp"

#include <algorithm>
#include <sstream>

namespace towerlab {

ConjugateSet make_conjugate_set(const Pair& pair, int level, const UPoly& coeffs, int digits) {
  ConjugateSet cs;
  cs.pair = pair;
  cs.level = level;
  cs.coeffs = coeffs;
  cs.values = conjugates_numeric(pair, level, coeffs, digits);
  cs.min = cs.values.front();
  cs.max = cs.values.back();
  for (const RealBall& v : cs.values) {
    cs.min = RealBall(std::min(cs.min.lo(), v.lo()), std::min(cs.min.hi(), v.hi()));
    cs.max = ball_max(cs.max, v);
  }
  return cs;
}

RealBall house(const ConjugateSet& cs) {
  RealBall h = cs.values.front().abs();
  for (const RealBall& v : cs.values) h = ball_max(h, v.abs());
  return h;
}

RealBall alpha_limit(long nu, int digits) {
  if (nu < 2) throw precondition_error("alpha_limit: nu must be >= 2");
  Int disc = 1 + 4 * Int(nu);
  auto [root, exact] = isqrt(disc);
  if (exact) return RealBall(make_rat(1 + root, 2));
  long bits = digits_to_bits(digits);
  RealBall r = RealBall(Rat(disc)).sqrt(bits);
  return (r + RealBall(Rat(1))) * RealBall(Rat(1, 2));
}

namespace {

// For totally real towers the largest conjugate of x_n is the all-plus
// nested radical, and conjugates come in +- pairs, so the house is that
// chain value.
std::vector<RealBall> house_chain(const Pair& pair, int N, long bits) {
  std::vector<RealBall> houses;
  RealBall v{Rat(pair.x0)};
  for (int n = 1; n <= N; ++n) {
    v = (RealBall(Rat(pair.nu)) + v).sqrt(bits).round_to(bits);
    houses.push_back(v);
  }
  return houses;
}

}  // namespace

std::vector<RealBall> house_trajectory(const Pair& pair, int N, int digits) {
  if (N < 1) throw precondition_error("house_trajectory: N must be >= 1");
  OmegaClass cls = classify_pair_interval(pair, N);
  if (!cls.verified()) throw precondition_error("house_trajectory: pair not verified in Omega");
  const bool increasing = cls.kind == OmegaClass::Kind::IncVerified;
  long bits = digits_to_bits(digits);
  for (;; bits *= 2) {
    if (bits > digits_to_bits(kDigitsCap))
      throw precision_error("house_trajectory: monotonicity undecided at the precision cap");
    auto houses = house_chain(pair, N, bits);
    bool decided = true;
    for (int n = 1; n < N && decided; ++n) {
      const RealBall& a = houses[static_cast<size_t>(n - 1)];
      const RealBall& b = houses[static_cast<size_t>(n)];
      if (increasing ? !a.certainly_lt(b) : !a.certainly_gt(b)) decided = false;
    }
    if (decided) return houses;
  }
}

OtCensus ot_census(const Pair& pair, const Rat& t, int level, long coeff_bound, int digits) {
  if (t <= 0) throw precondition_error("ot_census: t must be positive");
  if (coeff_bound < 0) throw precondition_error("ot_census: negative coefficient bound");
  TowerCtx ctx(pair, level);
  if (level >= 1 && sturm_count_all(ctx.min_poly(level)) != (1 << level))
    throw precondition_error("ot_census: tower not totally real at this level");

  OtCensus out;
  const long start_bits = digits_to_bits(digits);
  const long cap_bits = digits_to_bits(kDigitsCap);
  std::vector<RealBall> xs = generator_conjugates(pair, level, start_bits);

  for (long c1 = -coeff_bound; c1 <= coeff_bound; ++c1) {
    for (long c0 = -coeff_bound; c0 <= coeff_bound; ++c0) {
      if (c1 == 0) {
        // rational element: exact window test
        if (Rat(c0) > 0 && Rat(c0) < t) {
          out.witnesses.push_back({c0, c1});
          ++out.count;
        }
        continue;
      }
      // conjugates are irrational here, so boundary straddles resolve
      // under escalation; the cap guards against runaway refinement
      long b = start_bits;
      const std::vector<RealBall>* vals = &xs;
      std::vector<RealBall> fine;
      while (true) {
        bool all_in = true, some_out = false;
        for (const RealBall& x : *vals) {
          RealBall v = RealBall(Rat(c0)) + RealBall(Rat(c1)) * x;
          if (v.certainly_gt(Rat(0)) && v.certainly_lt(t)) continue;
          all_in = false;
          if (v.hi() <= 0 || v.lo() >= t) some_out = true;  // certainly outside (0,t)
          break;
        }
        if (all_in) {
          out.witnesses.push_back({c0, c1});
          ++out.count;
          break;
        }
        if (some_out) break;
        b *= 2;
        if (b > cap_bits) {
          out.undecided.push_back({c0, c1});
          break;
        }
        fine = generator_conjugates(pair, level, b);
        vals = &fine;
      }
    }
  }
  return out;
}

JrReport jr_upper_estimate(const Pair& pair, int N, int digits) {
  if (N < 1) throw precondition_error("jr_upper_estimate: N must be >= 1");
  OmegaClass cls = classify_pair_interval(pair, N);
  if (!cls.verified()) throw precondition_error("jr_upper_estimate: pair not verified in Omega");
  if (cls.kind != OmegaClass::Kind::DecVerified)
    throw precondition_error(
        "jr_upper_estimate: pair is not in the decreasing regime; the shifted-generator "
        "family only certifies upper bounds for decreasing towers");

  JrReport rep;
  rep.pair = pair;
  rep.alpha = alpha_limit(pair.nu, digits);
  // floor(alpha): exact when alpha is rational; otherwise certified
  // once the enclosure avoids integers (alpha is a quadratic irrational
  // there, so escalation terminates).
  Rat lo = rep.alpha.lo();
  Int fl = lo.get_num() / lo.get_den();
  if (Rat(fl) > lo) fl -= 1;  // floor for negatives not expected, but exact
  if (!rep.alpha.is_exact()) {
    int d = digits;
    while (rep.alpha.contains(Rat(fl)) || rep.alpha.contains(Rat(fl + 1))) {
      d *= 2;
      if (d > kDigitsCap) throw precision_error("jr_upper_estimate: floor(alpha) undecided");
      rep.alpha = alpha_limit(pair.nu, d);
      lo = rep.alpha.lo();
      fl = lo.get_num() / lo.get_den();
      if (Rat(fl) > lo) fl -= 1;
    }
  }
  rep.shift = fl.get_si() + 1;
  rep.family = "s + x_n with s = floor(alpha) + 1 = " + std::to_string(rep.shift);

  auto houses = house_trajectory(pair, N, digits);
  const RealBall s{Rat(rep.shift)};
  for (const RealBall& h : houses) rep.sup_estimates.push_back(s + h);
  // family member validity at the deepest level: s - house_N > 0
  if (!houses.back().certainly_lt(Rat(rep.shift)))
    throw precondition_error(
        "jr_upper_estimate: house still exceeds the shift at level N; increase N");
  rep.jr_upper = rep.sup_estimates.back();
  rep.limit_value = s + rep.alpha;
  return rep;
}

std::string trajectory_csv(const Pair& pair, int N, int digits) {
  auto houses = house_trajectory(pair, N, digits);
  RealBall alpha = alpha_limit(pair.nu, digits);
  std::ostringstream os;
  os << "n,house,gap\n";
  for (int n = 1; n <= N; ++n) {
    const RealBall& h = houses[static_cast<size_t>(n - 1)];
    RealBall gap = (h - alpha).abs();
    os << n << "," << h.decimal(digits) << "," << gap.decimal(digits) << "\n";
  }
  return os.str();
}

}  // namespace towerlab
