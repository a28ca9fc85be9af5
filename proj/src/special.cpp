#include "towerlab/special.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

namespace towerlab {

Int XParam::q1() const { return Int(b) * b + Int(6) * b * d + Int(10) * d * d; }
Int XParam::q2() const { return Int(b) * b + Int(8) * b * d + Int(14) * d * d; }

std::string to_string(Sqrt2Result::Clause c) {
  switch (c) {
    case Sqrt2Result::Clause::SfpTwo: return "SquareFreePartTwo";
    case Sqrt2Result::Clause::Sigma1: return "Sigma1";
    case Sqrt2Result::Clause::Sigma2: return "Sigma2";
    case Sqrt2Result::Clause::None: return "None";
  }
  return "?";
}

namespace {

// Sigma1: a = nu - k^2 with 1 <= k <= sqrt(nu-1);
// Sigma2: a = k^2 - nu with sqrt(nu+1) <= k <= sqrt(2nu-1).
std::optional<long> sigma1_k(const Pair& pair) {
  const long u0 = pair.nu * pair.nu - pair.nu;
  for (long k = 1; k * k <= pair.nu - 1; ++k) {
    const long a = pair.nu - k * k;
    if (u0 - a * a == pair.x0) return k;
  }
  return std::nullopt;
}

std::optional<long> sigma2_k(const Pair& pair) {
  const long u0 = pair.nu * pair.nu - pair.nu;
  for (long k = 1; k * k <= 2 * pair.nu - 1; ++k) {
    if (k * k < pair.nu + 1) continue;
    const long a = k * k - pair.nu;
    if (a < 1 || a > pair.nu - 1) continue;
    if (u0 - a * a == pair.x0) return k;
  }
  return std::nullopt;
}

}  // namespace

Sqrt2Result sqrt2_in_K(const Pair& pair, int depth) {
  const int d = std::max(depth, 2);
  if (!classify_pair(pair, d).verified())
    throw precondition_error("sqrt2_in_K: pair not verified in Omega");
  Sqrt2Result res;
  Int sfp = square_free_part(Int(pair.nu + pair.x0));
  if (sfp == 2) {
    res.in_k = true;
    res.clause = Sqrt2Result::Clause::SfpTwo;
  } else if (auto k1 = sigma1_k(pair)) {
    res.in_k = true;
    res.clause = Sqrt2Result::Clause::Sigma1;
    res.k = *k1;
  } else if (auto k2 = sigma2_k(pair)) {
    res.in_k = true;
    res.clause = Sqrt2Result::Clause::Sigma2;
    res.k = *k2;
  }
  TowerCtx ctx(pair, 2);
  res.direct_test = is_square_in_tower(ctx, TowerElem::constant(2, Rat(2))).has_value();
  if (res.direct_test != res.in_k)
    throw std::logic_error("sqrt2_in_K: criterion disagrees with the direct square test");
  return res;
}

bool xparam_identity_holds(const XParam& p) {
  // In K^{2,0}_2 with y the level-2 generator: sqrt(2) = y^2 - 2, and
  // the claim is (b y + d y^3)^2 = nu + q2 * sqrt(2).
  TowerCtx ctx({2, 0}, 2);
  TowerElem y = TowerElem::generator(2);
  TowerElem y3 = mul(ctx, y, square(ctx, y));
  TowerElem lhs = add(mul(ctx, TowerElem::constant(2, Rat(p.b)), y),
                      mul(ctx, TowerElem::constant(2, Rat(p.d)), y3));
  lhs = square(ctx, lhs);
  TowerElem sqrt2 = sub(square(ctx, y), TowerElem::constant(2, Rat(2)));
  TowerElem rhs = add(TowerElem::constant(2, Rat(p.nu())),
                      mul(ctx, TowerElem::constant(2, Rat(p.q2())), sqrt2));
  return lhs == rhs;
}

XsetResult x2_20_in_K(const Pair& pair, int depth, long bound) {
  const int d = std::max(depth, 2);
  if (!classify_pair(pair, d).verified())
    throw precondition_error("x2_20_in_K: pair not verified in Omega");
  XsetResult res;
  res.sfp = square_free_part(Int(pair.nu + pair.x0));
  if (res.sfp != 2) {
    res.status = XsetResult::Status::HypothesisViolation;
    return res;
  }
  if (bound < 0) {
    // |d| <= sqrt(nu/2) from the definite form; b = s - 3d with
    // s^2 + d^2 = nu/2 allows |b| up to four times that.
    auto [root, exact] = isqrt(Int(pair.nu) / 2);
    long base = root.get_si() + (exact ? 0 : 1) + 1;
    bound = 4 * base;
  }
  // Deterministic preference: small |d| first, then small |b|,
  // nonnegative before negative.
  auto ordered = [](long limit) {
    std::vector<long> v;
    v.push_back(0);
    for (long t = 1; t <= limit; ++t) {
      v.push_back(t);
      v.push_back(-t);
    }
    return v;
  };
  for (long dd : ordered(bound)) {
    for (long bb : ordered(bound)) {
      XParam p{bb, dd};
      if (p.q2() == 0) continue;
      if (p.nu() != pair.nu || p.x0() != pair.x0) continue;
      if (!xparam_identity_holds(p))
        throw std::logic_error("x2_20_in_K: family identity failed for a matching parameter");
      res.status = XsetResult::Status::Found;
      res.witness = p;
      return res;
    }
  }
  res.status = XsetResult::Status::NotFound;
  return res;
}

std::string to_string(FermatForm f) {
  switch (f) {
    case FermatForm::Form2rP1P2: return "Form2rP1P2";
    case FermatForm::Form2rP1: return "Form2rP1";
    case FermatForm::Form2r: return "Form2r";
    case FermatForm::NotAdmissible: return "NotAdmissible";
  }
  return "?";
}

namespace {

constexpr std::array<long, 5> kFermatPrimes{3, 5, 17, 257, 65537};

struct FermatSplit {
  long r = 0;
  std::vector<long> primes;
  bool clean = true;
};

FermatSplit split_fermat(long m) {
  FermatSplit s;
  while (m % 2 == 0) {
    m /= 2;
    ++s.r;
  }
  for (long p : kFermatPrimes) {
    if (m % p == 0) {
      m /= p;
      s.primes.push_back(p);
      if (m % p == 0) s.clean = false;  // repeated Fermat prime
    }
  }
  if (m != 1) s.clean = false;  // leftover non-Fermat odd factor
  return s;
}

}  // namespace

FermatForm fermat_m_classifier(long m) {
  if (m < 3) throw precondition_error("fermat_m_classifier: m must be >= 3");
  FermatSplit s = split_fermat(m);
  if (!s.clean) return FermatForm::NotAdmissible;
  if (s.primes.size() == 2 && s.r <= 2) return FermatForm::Form2rP1P2;
  if (s.primes.size() == 1 && s.r >= 3) return FermatForm::Form2rP1;
  if (s.primes.empty() && s.r >= 2) return FermatForm::Form2r;
  return FermatForm::NotAdmissible;
}

FermatReport fermat_report(long m) {
  FermatReport rep;
  rep.m = m;
  rep.form = fermat_m_classifier(m);
  FermatSplit s = split_fermat(m);
  rep.two_exponent = s.r;
  rep.fermat_primes = s.primes;
  rep.odd_part_clean = s.clean;
  if (m == 12)
    rep.notes.push_back(
        "m=12 is excluded by the literal form list (2^2 * 3 has a single Fermat prime with "
        "r < 3) although 2cos(2pi/12) = sqrt(3) does lie in the (2,1) tower; the classifier "
        "follows the stated forms and this case is flagged here.");
  return rep;
}

namespace {

UPoly cyclotomic_uncached(long m, std::map<long, UPoly>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by the cyclotomic polynomials of proper divisors
  std::vector<Rat> xm(static_cast<size_t>(m) + 1, Rat(0));
  xm[0] = -1;
  xm[static_cast<size_t>(m)] = 1;
  UPoly result(std::move(xm));
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = UPoly::divmod(result, cyclotomic_uncached(d, cache));
    if (!r.is_zero()) throw std::logic_error("cyclotomic_poly: non-exact division");
    result = q;
  }
  cache[m] = result;
  return result;
}

}  // namespace

UPoly cyclotomic_poly(long m) {
  if (m < 1) throw precondition_error("cyclotomic_poly: m must be >= 1");
  static std::mutex mu;
  static std::map<long, UPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  return cyclotomic_uncached(m, cache);
}

long euler_phi(long m) {
  long result = m;
  long n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

UPoly min_poly_2cos(long m) {
  if (m < 3) throw precondition_error("min_poly_2cos: m must be >= 3");
  UPoly phi = cyclotomic_poly(m);
  const int k = phi.degree() / 2;
  // Phi_m is palindromic for m >= 3, so Phi_m / X^k is a polynomial in
  // X + 1/X; X^j + X^-j expands through the Dickson recursion
  // D_0 = 2, D_1 = Y, D_{j+1} = Y D_j - D_{j-1}.
  for (int i = 0; i <= phi.degree(); ++i)
    if (!(phi[i] == phi[phi.degree() - i]))
      throw std::logic_error("min_poly_2cos: cyclotomic polynomial not palindromic");
  UPoly d_prev = UPoly::constant(Rat(2));
  UPoly d_cur = UPoly::x();
  UPoly result = UPoly::constant(phi[k]);
  for (int j = 1; j <= k; ++j) {
    result = result + d_cur.scaled(phi[k + j]);
    UPoly d_next = UPoly::x() * d_cur - d_prev;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return result;
}

std::vector<CycloCheck> verify_cyclotomic_towers(int N) {
  if (N < 1) throw precondition_error("verify_cyclotomic_towers: N must be >= 1");
  TowerCtx ctx20({2, 0}, N);
  TowerCtx ctx21({2, 1}, N + 1);
  std::vector<CycloCheck> out;
  out.reserve(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) {
    CycloCheck c;
    c.n = n;
    c.matches_20 = (min_poly_2cos(1L << (n + 2)) == ctx20.min_poly(n));
    c.matches_21 = (min_poly_2cos(3L << (n + 2)) == ctx21.min_poly(n + 1));
    out.push_back(c);
  }
  return out;
}

}  // namespace towerlab
