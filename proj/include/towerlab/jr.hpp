#pragma once

#include <string>
#include <vector>

#include "towerlab/ball.hpp"
#include "towerlab/omega.hpp"
#include "towerlab/tower.hpp"
#include "towerlab/upoly.hpp"

namespace towerlab {

inline constexpr int kDefaultDigits = 40;
inline constexpr int kDigitsCap = 256;

/// Certified conjugate data of an element written as a polynomial in
/// the level-n generator.
struct ConjugateSet {
  Pair pair;
  int level = 0;
  UPoly coeffs;
  std::vector<RealBall> values;  // 2^level enclosures, sorted ascending
  RealBall min, max;
};

ConjugateSet make_conjugate_set(const Pair& pair, int level, const UPoly& coeffs,
                                int digits = kDefaultDigits);

/// Largest absolute value among the conjugates, certified.
RealBall house(const ConjugateSet& cs);

/// Positive root of x^2 - x - nu = (1 + sqrt(1+4nu))/2: the limit of
/// the nested-radical generators. Exact when 1+4nu is a perfect square.
RealBall alpha_limit(long nu, int digits = kDefaultDigits);

/// Certified houses of x_1..x_N; strict monotonicity in the labeled
/// direction is certified along the way. Requires the pair verified in
/// Omega to depth N.
std::vector<RealBall> house_trajectory(const Pair& pair, int N, int digits = kDefaultDigits);

struct OtWitness {
  long c0 = 0;
  long c1 = 0;
};

/// Census of the degree-one slice c0 + c1*x_n of Z[x_n] against the
/// conjugate window (0, t): certified members, plus elements the
/// precision cap could not decide (never silently misclassified).
struct OtCensus {
  long count = 0;
  std::vector<OtWitness> witnesses;
  std::vector<OtWitness> undecided;
};

OtCensus ot_census(const Pair& pair, const Rat& t, int level, long coeff_bound,
                   int digits = kDefaultDigits);

/// Upper-bound reproduction for the ring generated by the tower of a
/// decreasing pair: the family floor(alpha)+1 + x_n has all conjugates
/// in (0, s + house_n) with house_n decreasing to alpha, so
/// s + house_N certifies an upper bound.
struct JrReport {
  Pair pair;
  RealBall alpha;
  long shift = 0;  // floor(alpha) + 1
  std::string family;
  std::vector<RealBall> sup_estimates;  // s + house_n for n = 1..N
  RealBall jr_upper;
  RealBall limit_value;  // s + alpha
};

JrReport jr_upper_estimate(const Pair& pair, int N, int digits = kDefaultDigits);

/// CSV trajectory "n,house,gap" for plotting.
std::string trajectory_csv(const Pair& pair, int N, int digits = kDefaultDigits);

}  // namespace towerlab
