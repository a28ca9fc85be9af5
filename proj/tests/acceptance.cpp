// Acceptance suite: one check per shipped capability, each printed as a
// single pass/fail line with its runtime. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "towerlab/galois.hpp"
#include "towerlab/jr.hpp"
#include "towerlab/lattice.hpp"
#include "towerlab/omega.hpp"
#include "towerlab/special.hpp"
#include "towerlab/tower.hpp"

using namespace towerlab;

namespace {

int g_failures = 0;

void run(int id, const std::string& name, bool (*fn)()) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    err = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(t1 - t0).count();
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << "  ["
            << secs << " s]";
  if (!err.empty()) std::cout << "  error: " << err;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

Rat pow10_inv(int digits) { return make_rat(1, pow_int(10, static_cast<unsigned long>(digits))); }

// 1. enumerate omega1 max_nu 3: exactly (2,1) and (3,2), both increasing
bool c01() {
  auto got = enumerate_omega1(3, 6);
  if (got.size() != 2) return false;
  return got[0].pair == Pair{2, 1} && got[1].pair == Pair{3, 2} &&
         got[0].cls.kind == OmegaClass::Kind::IncVerified &&
         got[1].cls.kind == OmegaClass::Kind::IncVerified;
}

// 2. thinness vs Klein witness scan across the family
bool c02() {
  std::vector<Pair> pairs{{2, 0}, {3, 0}, {5, 0}, {6, 0}};
  for (const auto& e : enumerate_omega1(8, 5)) pairs.push_back(e.pair);
  for (const Pair& p : pairs) {
    TowerCtx ctx(p, 5);
    auto scan = klein_witness_scan(ctx, 3);
    bool v4_at_0 = scan[0].type == GaloisType::V4;
    if (is_thin(p).thin != !v4_at_0) return false;
    for (int n = 1; n <= 3; ++n)
      if (scan[static_cast<size_t>(n)].type == GaloisType::V4) return false;
  }
  return true;
}

// 3. quartic classification vs the integer oracle on the 441-point grid
bool c03() {
  TowerCtx q({2, 0}, 1);
  for (long b = -10; b <= 10; ++b)
    for (long d = -10; d <= 10; ++d) {
      GaloisType got = biquad_galois_type(q, TowerElem::constant(0, Rat(b)),
                                          TowerElem::constant(0, Rat(d)));
      oracles::QuarticClass expect = oracles::quartic_oracle(b, d);
      bool match = (got == GaloisType::Reducible && expect == oracles::QuarticClass::Reducible) ||
                   (got == GaloisType::V4 && expect == oracles::QuarticClass::V4) ||
                   (got == GaloisType::C4 && expect == oracles::QuarticClass::C4) ||
                   (got == GaloisType::D4 && expect == oracles::QuarticClass::D4);
      if (!match) return false;
    }
  return true;
}

// 4. the (4,3) lattice: chain plus Q(sqrt 2), Q(sqrt 14) under K_2
bool c04() {
  if (quadratic_subfields({4, 3}, 3) != std::vector<Int>{7, 2, 14}) return false;
  TowerCtx ctx({4, 3}, 2);
  for (long D : {7L, 2L, 14L}) {
    auto w = is_square_in_tower(ctx, TowerElem::constant(2, Rat(D)));
    if (!w) return false;
    if (!(square(ctx, *w) == TowerElem::constant(2, Rat(D)))) return false;
  }
  auto g = build_lattice({4, 3}, 3);
  if (g.nodes.size() != 6) return false;
  std::set<std::string> labels;
  for (const auto& n : g.nodes) labels.insert(n.label);
  for (const char* want : {"Q", "K_1", "K_2", "K_3", "Q(sqrt(2))", "Q(sqrt(14))"})
    if (!labels.count(want)) return false;
  // every edge has relative degree 2; quadratic nodes feed K_2 only
  for (const auto& [a, b] : g.edges)
    if (!(g.nodes[static_cast<size_t>(b)].degree == 2 * g.nodes[static_cast<size_t>(a)].degree))
      return false;
  int quad_up_edges = 0;
  for (const auto& [a, b] : g.edges)
    if (g.nodes[static_cast<size_t>(a)].label.rfind("Q(", 0) == 0) {
      if (g.nodes[static_cast<size_t>(b)].label != "K_2") return false;
      ++quad_up_edges;
    }
  return quad_up_edges == 2;
}

// 5. the (2,1) lattice: five checks, three subfields per degree, M_1 = Q(sqrt 6)
bool c05() {
  auto rep = verify_21_lattice(4);
  if (!rep.all_passed()) return false;
  if (rep.degree2_squarefree != std::vector<Int>{2, 3, 6}) return false;
  return true;
}

// 6. cyclotomic identities to level 4
bool c06() {
  for (const auto& c : verify_cyclotomic_towers(4))
    if (!c.matches_20 || !c.matches_21) return false;
  return true;
}

// 7. containment chains at depth
bool c07() {
  auto full = embed_chain({2, 0}, {2, 1}, 3, 4);
  if (full.size() != 3) return false;
  for (const auto& s : full)
    if (!s.ok) return false;
  auto partial = embed_chain({2, 0}, {4, 3}, 2, 4);
  return partial.size() == 2 && partial[0].ok && !partial[1].ok;
}

// 8. the (4,3) upper-bound value at depth 12
bool c08() {
  auto rep = jr_upper_estimate({4, 3}, 12, 40);
  RealBall diff = (rep.jr_upper - rep.limit_value).abs();
  if (!(diff.hi() < pow10_inv(6))) return false;
  for (size_t i = 1; i < rep.sup_estimates.size(); ++i)
    if (!rep.sup_estimates[i - 1].certainly_gt(rep.sup_estimates[i])) return false;
  // pin the decimal value 5.5615528128 of the limit 3 + (1 + sqrt 17)/2
  Rat pinned = make_rat(Int("55615528128"), Int("10000000000"));
  RealBall pin_diff = (rep.limit_value - RealBall(pinned)).abs();
  if (!(pin_diff.hi() < pow10_inv(9))) return false;
  RealBall upper_vs_pin = (rep.jr_upper - RealBall(pinned)).abs();
  return upper_vs_pin.hi() < pow10_inv(6);
}

// 9. sqrt(2) criterion vs the direct square test
bool c09() {
  std::vector<Pair> pairs{{2, 0}, {3, 0}, {20, 372}};
  for (const auto& e : enumerate_omega1(10, 4)) pairs.push_back(e.pair);
  for (const Pair& p : pairs) {
    auto r = sqrt2_in_K(p, 4);  // throws on criterion/direct-test mismatch
    if (r.in_k != r.direct_test) return false;
  }
  return true;
}

// 10. the parametrized family identity and the (20,372) witness
bool c10() {
  for (long b = -3; b <= 3; ++b)
    for (long d = -3; d <= 3; ++d) {
      XParam p{b, d};
      if (p.q2() == 0) continue;
      if (!xparam_identity_holds(p)) return false;
    }
  auto r = x2_20_in_K({20, 372}, 2);
  return r.status == XsetResult::Status::Found && r.witness->b == 0 && r.witness->d == 1;
}

// 11. norm identities across levels, parameters and shifts
bool c11() {
  for (Pair p : {Pair{2, 0}, Pair{2, 1}, Pair{3, 0}, Pair{4, 3}}) {
    TowerCtx ctx(p, 5);
    auto u = u_seq(p.nu, 10);
    auto u_minus_x = [&](int j, int n) {
      TowerElem c = TowerElem::constant(n, Rat(u[static_cast<size_t>(j)]));
      return n == 0 ? sub(c, TowerElem::constant(0, Rat(p.x0)))
                    : sub(c, TowerElem::generator(n));
    };
    for (int n = 0; n <= 5; ++n) {
      for (int l = 0; l <= n; ++l)
        for (int j = 0; j <= 3; ++j)
          if (!(norm_to_base(ctx, u_minus_x(j, n), l) == u_minus_x(j + n - l, l))) return false;
      if (n >= 1) {
        TowerElem nu_xn = add(TowerElem::constant(n, Rat(p.nu)), TowerElem::generator(n));
        if (!(norm_down(ctx, nu_xn) == u_minus_x(0, n - 1))) return false;
      }
    }
  }
  return true;
}

// 12. full real-root counts and conjugate enumeration against isolation
bool c12() {
  for (Pair p : {Pair{2, 0}, Pair{2, 1}, Pair{3, 0}, Pair{4, 3}}) {
    TowerCtx ctx(p, 6);
    for (int n = 1; n <= 6; ++n)
      if (sturm_count_all(ctx.min_poly(n)) != (1 << n)) return false;
    for (int n = 1; n <= 5; ++n) {
      auto conj = conjugates_numeric(p, n, UPoly::x(), 35);
      auto iso = isolate_real_roots(ctx.min_poly(n), pow10_inv(32));
      if (conj.size() != iso.size()) return false;
      for (size_t i = 0; i < conj.size(); ++i) {
        // sorted enclosure vs sorted isolating interval, within 1e-30
        Rat dist_lo = conj[i].lo() - iso[i].second;
        Rat dist_hi = iso[i].first - conj[i].hi();
        Rat gap = dist_lo > dist_hi ? dist_lo : dist_hi;  // positive => disjoint by gap
        if (gap > pow10_inv(30)) return false;
      }
    }
  }
  return true;
}

// 13. the admissible-form classifier on the named values, with the m=12 flag
bool c13() {
  using F = FermatForm;
  const std::vector<std::pair<long, F>> table{
      {15, F::Form2rP1P2}, {20, F::NotAdmissible}, {40, F::Form2rP1},
      {60, F::Form2rP1P2}, {68, F::NotAdmissible}, {7, F::NotAdmissible},
      {9, F::NotAdmissible}, {16, F::Form2r},      {32, F::Form2r},
      {255, F::NotAdmissible}, {257 * 8, F::Form2rP1}};
  for (const auto& [m, want] : table)
    if (fermat_m_classifier(m) != want) return false;
  if (fermat_report(12).notes.size() != 1) return false;
  if (!fermat_report(40).notes.empty()) return false;
  return true;
}

}  // namespace

int main() {
  run(1, "omega1 enumeration with max nu 3", c01);
  run(2, "thinness criterion vs Klein witness scan", c02);
  run(3, "quartic classification vs integer oracle (441 cases)", c03);
  run(4, "(4,3) lattice and quadratic subfields", c04);
  run(5, "(2,1) lattice five-point verification", c05);
  run(6, "2cos minimal polynomials match tower polynomials", c06);
  run(7, "containment chains (2,0)->(2,1) and (2,0)->(4,3)", c07);
  run(8, "(4,3) upper bound at depth 12 within 1e-6", c08);
  run(9, "sqrt(2) criterion vs direct square test", c09);
  run(10, "family identity and the (20,372) witness", c10);
  run(11, "norm identity suite over levels 0..5", c11);
  run(12, "real-root counts and conjugate isolation", c12);
  run(13, "admissible-form classifier and the m=12 flag", c13);
  if (g_failures > 0) {
    std::cout << g_failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all 13 criteria passed\n";
  return 0;
}
