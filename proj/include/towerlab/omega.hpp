#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towerlab/galois.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

enum class OmegaReason { DegreeCollapse, NotTotallyReal, OutsideInequalityRegions };

std::string to_string(OmegaReason r);

/// Depth-bounded membership verdict for the tower of a pair: every step
/// up to `depth` verified to have degree 2 and the level-`depth` field
/// verified totally real, then labeled by the house-monotonicity
/// inequality regimes. Failures carry the level and reason.
struct OmegaClass {
  enum class Kind { NotInOmegaAtDepth, IncVerified, DecVerified };
  Kind kind = Kind::NotInOmegaAtDepth;
  int depth = 0;  // verification depth, or failure level
  std::optional<OmegaReason> reason;

  bool verified() const { return kind != Kind::NotInOmegaAtDepth; }
};

std::string to_string(OmegaClass::Kind k);

OmegaClass classify_pair(const Pair& pair, int depth);

/// Same verdict with the total-reality check done by certified interval
/// positivity of nu - house(x_n) at each level instead of a Sturm count
/// on P_depth; the Sturm route is exact but impractical past degree a
/// few hundred, this one handles the full depth range. Degree doubling
/// is still decided by the exact square tests.
OmegaClass classify_pair_interval(const Pair& pair, int depth);

/// Sufficient criteria for degree growth at every step.
enum class IncreaseRule { Mod4, ZeroNonSquare, Unknown };

std::string to_string(IncreaseRule r);

IncreaseRule increase_sufficient(const Pair& pair);

/// Thinness criterion: thin iff u_0 - x_0 is not a perfect square; the
/// certificate carries a = sqrt(u_0 - x_0) when not thin.
struct ThinResult {
  bool thin = true;
  std::optional<Int> a;
};

ThinResult is_thin(const Pair& pair);

/// step2_galois_type for n = 0..N.
std::vector<Step2Report> klein_witness_scan(const TowerCtx& ctx, int N);

struct FnEntry {
  int n;
  Int fn;
  bool square;
};

/// Exact f_n = (u_{n-1} - x0)(u_n - x0) with perfect-square flags.
std::vector<FnEntry> fn_scan(const Pair& pair, int N);

struct EcPoint {
  Int x;
  Int y;                      // nonnegative root of P(x)
  std::optional<int> u_index; // engaged when x equals some u_j within range
};

/// All |X| <= bound with (X - x0)(X^2 - (nu + x0)) a nonnegative
/// perfect square; hits at X = u_{n-1} are cross-referenced.
std::vector<EcPoint> ec_point_scan(const Pair& pair, const Int& bound);

/// Certificate for a pair whose tower is not thin from level 0:
/// u_0 - x_0 = a^2 and the three quadratic generators below K_2.
struct Omega1Cert {
  Int a;
  Int gen_k1;     // nu + x0
  Int gen_minus;  // 2(nu - a)
  Int gen_plus;   // 2(nu + a)
};

struct Omega1Entry {
  Pair pair;
  Omega1Cert cert;
  OmegaClass cls;
};

/// All pairs (nu, u_0 - a^2), nu <= max_nu, 1 <= a <= nu-1, that verify
/// in Omega to `depth`; sorted by (nu, x0).
std::vector<Omega1Entry> enumerate_omega1(long max_nu, int depth);

struct SigmaEntry {
  Pair pair;
  long k;
  Int a;
};

struct Sigma12 {
  std::vector<SigmaEntry> sigma1;  // a = nu - k^2, 1 <= k <= sqrt(nu-1)
  std::vector<SigmaEntry> sigma2;  // a = k^2 - nu, sqrt(nu+1) <= k <= sqrt(2nu-1)
};

Sigma12 enumerate_sigma12(long max_nu, int depth);

}  // namespace towerlab
