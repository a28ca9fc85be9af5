#include "towerlab/omega.hpp"

#include <algorithm>

namespace towerlab {

std::string to_string(OmegaReason r) {
  switch (r) {
    case OmegaReason::DegreeCollapse: return "DegreeCollapse";
    case OmegaReason::NotTotallyReal: return "NotTotallyReal";
    case OmegaReason::OutsideInequalityRegions: return "OutsideInequalityRegions";
  }
  return "?";
}

std::string to_string(OmegaClass::Kind k) {
  switch (k) {
    case OmegaClass::Kind::NotInOmegaAtDepth: return "NotInOmegaAtDepth";
    case OmegaClass::Kind::IncVerified: return "IncVerified";
    case OmegaClass::Kind::DecVerified: return "DecVerified";
  }
  return "?";
}

namespace {

std::optional<OmegaClass> doubling_failure(const TowerCtx& ctx, int depth) {
  // Degree doubling at level n+1 means nu + x_n is not a square in K_n;
  // at n = 0 this is the perfect-square test on nu + x0.
  const Pair& pair = ctx.pair();
  for (int n = 0; n < depth; ++n) {
    TowerElem nu_xn = n == 0 ? TowerElem::constant(0, Rat(pair.nu + pair.x0))
                             : add(TowerElem::constant(n, Rat(pair.nu)), TowerElem::generator(n));
    if (is_square_in_tower(ctx, nu_xn))
      return OmegaClass{OmegaClass::Kind::NotInOmegaAtDepth, n + 1, OmegaReason::DegreeCollapse};
  }
  return std::nullopt;
}

OmegaClass label_by_regime(const Pair& pair, int depth) {
  const Int nu(pair.nu), x0(pair.x0);
  const Int x0sq_x0 = x0 * x0 - x0;
  if (nu > x0sq_x0) return {OmegaClass::Kind::IncVerified, depth, std::nullopt};
  if (nu < x0sq_x0 && x0 < nu * nu - nu)
    return {OmegaClass::Kind::DecVerified, depth, std::nullopt};
  // Verified-to-depth but in neither inequality regime: reported rather
  // than silently classified.
  return {OmegaClass::Kind::NotInOmegaAtDepth, depth, OmegaReason::OutsideInequalityRegions};
}

}  // namespace

OmegaClass classify_pair(const Pair& pair, int depth) {
  if (depth < 1) throw precondition_error("classify_pair: depth must be >= 1");
  TowerCtx ctx(pair, depth);
  if (auto fail = doubling_failure(ctx, depth)) return *fail;
  if (sturm_count_all(ctx.min_poly(depth)) != (1 << depth))
    return {OmegaClass::Kind::NotInOmegaAtDepth, depth, OmegaReason::NotTotallyReal};
  return label_by_regime(pair, depth);
}

OmegaClass classify_pair_interval(const Pair& pair, int depth) {
  if (depth < 1) throw precondition_error("classify_pair_interval: depth must be >= 1");
  TowerCtx ctx(pair, depth, /*build_min_polys=*/false);
  if (auto fail = doubling_failure(ctx, depth)) return *fail;
  // Level n+1 is real iff nu + xi >= 0 for every conjugate xi of x_n;
  // the conjugates of x_n come in +- pairs, so this is nu > house(x_n).
  // Equality cannot occur (x_n has no rational conjugate), hence the
  // certified strict comparison settles at some precision.
  for (long bits = 96;; bits *= 2) {
    if (bits > 1'000'000) throw precision_error("classify_pair_interval: reality undecided");
    RealBall h{Rat(pair.x0)};
    bool undecided = false;
    for (int n = 1; n < depth; ++n) {
      h = (RealBall(Rat(pair.nu)) + h).sqrt(bits).round_to(bits);
      if (h.certainly_gt(Rat(pair.nu)))
        return {OmegaClass::Kind::NotInOmegaAtDepth, n + 1, OmegaReason::NotTotallyReal};
      if (!h.certainly_lt(Rat(pair.nu))) {
        undecided = true;
        break;
      }
    }
    if (!undecided) break;
  }
  return label_by_regime(pair, depth);
}

std::string to_string(IncreaseRule r) {
  switch (r) {
    case IncreaseRule::Mod4: return "Mod4";
    case IncreaseRule::ZeroNonSquare: return "ZeroNonSquare";
    case IncreaseRule::Unknown: return "Unknown";
  }
  return "?";
}

IncreaseRule increase_sufficient(const Pair& pair) {
  // overlapping criteria: the base-row rule takes precedence
  if (pair.x0 == 0 && !is_perfect_square(Int(pair.nu))) return IncreaseRule::ZeroNonSquare;
  long m = (pair.nu + pair.x0) % 4;
  if (m == 2 || m == 3) return IncreaseRule::Mod4;
  return IncreaseRule::Unknown;
}

ThinResult is_thin(const Pair& pair) {
  Int d = Int(pair.nu) * pair.nu - pair.nu - pair.x0;
  if (d >= 0) {
    auto [root, exact] = isqrt(d);
    if (exact) return {false, root};
  }
  return {true, std::nullopt};
}

std::vector<Step2Report> klein_witness_scan(const TowerCtx& ctx, int N) {
  if (N + 2 > ctx.max_level())
    throw precondition_error("klein_witness_scan: context too shallow for N+2");
  std::vector<Step2Report> out;
  out.reserve(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) out.push_back(step2_galois_type(ctx, n));
  return out;
}

std::vector<FnEntry> fn_scan(const Pair& pair, int N) {
  if (N < 1) throw precondition_error("fn_scan: N must be >= 1");
  auto u = u_seq(pair.nu, N + 1);
  std::vector<FnEntry> out;
  out.reserve(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Int fn = (u[static_cast<size_t>(n - 1)] - pair.x0) * (u[static_cast<size_t>(n)] - pair.x0);
    out.push_back({n, fn, is_perfect_square(fn)});
  }
  return out;
}

std::vector<EcPoint> ec_point_scan(const Pair& pair, const Int& bound) {
  if (bound < 1) throw precondition_error("ec_point_scan: bound must be >= 1");
  // cross-reference table: u_j values up to the bound; the sequence is
  // constant for nu = 2, so stop as soon as it fails to grow
  std::vector<Int> u{Int(pair.nu) * pair.nu - pair.nu};
  while (u.back() <= bound) {
    Int next = u.back() * u.back() - pair.nu;
    if (next <= u.back()) break;
    u.push_back(next);
  }

  std::vector<EcPoint> out;
  const Int c(pair.nu + pair.x0);
  for (Int x = -bound; x <= bound; ++x) {
    Int val = (x - pair.x0) * (x * x - c);
    if (val < 0) continue;
    auto [root, exact] = isqrt(val);
    if (!exact) continue;
    EcPoint pt{x, root, std::nullopt};
    for (size_t j = 0; j < u.size(); ++j)
      if (u[j] == x) pt.u_index = static_cast<int>(j);
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<Omega1Entry> enumerate_omega1(long max_nu, int depth) {
  if (max_nu < 2) throw precondition_error("enumerate_omega1: max_nu must be >= 2");
  std::vector<Omega1Entry> out;
  for (long nu = 2; nu <= max_nu; ++nu) {
    const long u0 = nu * nu - nu;
    for (long a = 1; a <= nu - 1; ++a) {
      const long x0 = u0 - a * a;
      Pair p{nu, x0};
      OmegaClass cls = classify_pair(p, depth);
      if (!cls.verified()) continue;
      Omega1Cert cert{Int(a), Int(nu + x0), Int(2 * (nu - a)), Int(2 * (nu + a))};
      out.push_back({p, cert, cls});
    }
  }
  std::sort(out.begin(), out.end(), [](const Omega1Entry& l, const Omega1Entry& r) {
    return l.pair.nu != r.pair.nu ? l.pair.nu < r.pair.nu : l.pair.x0 < r.pair.x0;
  });
  return out;
}

Sigma12 enumerate_sigma12(long max_nu, int depth) {
  if (max_nu < 2) throw precondition_error("enumerate_sigma12: max_nu must be >= 2");
  Sigma12 out;
  for (long nu = 2; nu <= max_nu; ++nu) {
    const long u0 = nu * nu - nu;
    for (long k = 1; k * k <= nu - 1; ++k) {
      const long a = nu - k * k;
      Pair p{nu, u0 - a * a};
      if (classify_pair(p, depth).verified()) out.sigma1.push_back({p, k, Int(a)});
    }
    for (long k = 1; k * k <= 2 * nu - 1; ++k) {
      if (k * k < nu + 1) continue;
      const long a = k * k - nu;
      if (a < 1 || a > nu - 1) continue;
      Pair p{nu, u0 - a * a};
      if (classify_pair(p, depth).verified()) out.sigma2.push_back({p, k, Int(a)});
    }
  }
  return out;
}

}  // namespace towerlab
