#pragma once

#include <optional>
#include <string>

#include "towerlab/tower.hpp"

namespace towerlab {

/// Galois classification of a biquadratic quartic X^4 + bX^2 + d over a
/// base field: the splitting-field group when irreducible.
enum class GaloisType { Reducible, V4, C4, D4 };

std::string to_string(GaloisType t);

/// Irreducibility of X^4 + bX^2 + d over the field of b and d's level:
/// b^2 - 4d must not be a square there, and neither -b + 2*sqrt(d) nor
/// -b - 2*sqrt(d) may be a square (tested in the quadratic extension
/// adjoining sqrt(d) when d itself is not a square).
bool biquad_irreducible(const TowerCtx& ctx, const TowerElem& b, const TowerElem& d);

/// Reducible / V4 (d a square) / C4 (d(b^2-4d) a square) / D4.
GaloisType biquad_galois_type(const TowerCtx& ctx, const TowerElem& b, const TowerElem& d);

/// Classification of the degree-4 step K_{n+2}/K_n of a tower, whose
/// minimal polynomial is X^4 - 2nu X^2 + (u_0 - x_n), together with the
/// two fast rational necessary conditions obtained by pushing squares
/// down with the norm: u_n - x0 square in Q (necessary for V4) and
/// f_n = (u_{n-1}-x0)(u_n-x0) square in Q (necessary for C4, n >= 1).
struct Step2Report {
  int n = 0;
  GaloisType type = GaloisType::Reducible;
  bool un_x0_square = false;
  std::optional<bool> fn_square;  // engaged for n >= 1
};

Step2Report step2_galois_type(const TowerCtx& ctx, int n);

/// Whether the degree-4 extension K_3 over Q(sqrt(2(nu + eps*a))) can be
/// Klein for a pair with u_0 - x_0 = a^2: decided by the rational
/// solvability test, i.e. whether a^2 + nu^4 - 2nu^3 is a perfect
/// square. Requires a non-thin pair (the square certificate exists).
bool klein_over_yeps(const Pair& pair, int eps);

}  // namespace towerlab
