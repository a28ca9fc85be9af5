#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towerlab/omega.hpp"
#include "towerlab/tower.hpp"
#include "towerlab/upoly.hpp"

namespace towerlab {

/// Parameters of the two-variable family whose pairs admit the (2,0)
/// level-2 generator: nu = 2(b^2+6bd+10d^2) and
/// x0 = 2(b^2+8bd+14d^2)^2 - nu.
struct XParam {
  long b = 0;
  long d = 0;

  Int q1() const;  // b^2 + 6bd + 10d^2 (positive definite)
  Int q2() const;  // b^2 + 8bd + 14d^2 (indefinite)
  Int nu() const { return 2 * q1(); }
  Int x0() const { return 2 * q2() * q2() - nu(); }
};

/// Membership of sqrt(2) in the tower field of a pair.
struct Sqrt2Result {
  enum class Clause { SfpTwo, Sigma1, Sigma2, None };
  bool in_k = false;
  Clause clause = Clause::None;
  long k = 0;         // the Sigma parameter when a Sigma clause fires
  bool direct_test;   // is_square_in_tower(2) at level 2 (cross-check)
};

std::string to_string(Sqrt2Result::Clause c);

/// True iff sqrt(2) is in K: square-free part of nu+x0 equal to 2, or
/// the pair lies in Sigma1 or Sigma2; cross-checked against the direct
/// level-2 square test. Requires the pair verified in Omega (depth>=2).
Sqrt2Result sqrt2_in_K(const Pair& pair, int depth);

struct XsetResult {
  enum class Status { Found, NotFound, HypothesisViolation };
  Status status = Status::NotFound;
  std::optional<XParam> witness;
  Int sfp;  // square-free part of nu + x0
};

/// Search for (b, d) presenting the pair in the X family, verifying the
/// closed-form identity exactly in the (2,0) tower. Pairs whose nu+x0
/// has square-free part other than 2 are reported as hypothesis
/// violations, distinct from a failed search. `bound < 0` selects the
/// automatic bound derived from nu.
XsetResult x2_20_in_K(const Pair& pair, int depth, long bound = -1);

/// Exact check of the identity x2^{nu,x0} = b*y + d*y^3 with
/// y = x2^{2,0}, both sides squared and compared in the (2,0) tower.
bool xparam_identity_holds(const XParam& p);

enum class FermatForm { Form2rP1P2, Form2rP1, Form2r, NotAdmissible };

std::string to_string(FermatForm f);

/// Literal classification of m against the admissible forms
/// 2^r p1 p2 (r <= 2), 2^r p1 (r >= 3), 2^r (r >= 2), with p1, p2
/// distinct Fermat primes.
FermatForm fermat_m_classifier(long m);

struct FermatReport {
  long m = 0;
  FermatForm form = FermatForm::NotAdmissible;
  long two_exponent = 0;
  std::vector<long> fermat_primes;
  bool odd_part_clean = true;  // odd part is a squarefree product of Fermat primes
  std::vector<std::string> notes;
};

/// Classification plus the documented m = 12 edge flag.
FermatReport fermat_report(long m);

/// Cyclotomic polynomial of index m (exact, by divisor recursion).
UPoly cyclotomic_poly(long m);

/// Euler phi by trial factorization.
long euler_phi(long m);

/// Minimal polynomial of 2cos(2pi/m) over Q, degree phi(m)/2 for m >= 3.
UPoly min_poly_2cos(long m);

struct CycloCheck {
  int n = 0;
  bool matches_20 = false;  // min_poly_2cos(2^{n+2}) == P_n of (2,0)
  bool matches_21 = false;  // min_poly_2cos(3*2^{n+2}) == P_{n+1} of (2,1)
};

/// Exact polynomial identities tying the tower minimal polynomials to
/// 2cos minimal polynomials, for n = 1..N.
std::vector<CycloCheck> verify_cyclotomic_towers(int N);

}  // namespace towerlab
