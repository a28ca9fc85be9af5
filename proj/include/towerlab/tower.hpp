#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "towerlab/ball.hpp"
#include "towerlab/rat.hpp"
#include "towerlab/upoly.hpp"

namespace towerlab {

/// Tower parameters: x_{n+1} = sqrt(nu + x_n) starting from the integer
/// x0, with nu >= 2 and x0 >= 0.
struct Pair {
  long nu = 2;
  long x0 = 0;

  bool operator==(const Pair&) const = default;
};

/// Element of K_n in the recursive quadratic basis. Stored flat: 2^n
/// rational coordinates; the low half is the K_{n-1} part and the high
/// half the coefficient of the level-n generator, recursively.
class TowerElem {
 public:
  TowerElem() : c_(1, Rat(0)) {}

  static TowerElem constant(int level, const Rat& v);
  static TowerElem generator(int level);
  static TowerElem from_coords(std::vector<Rat> coords);  // size must be 2^k

  int level() const;
  bool is_zero() const;
  /// True when all coordinates above the constant one vanish.
  bool is_rational() const;
  const Rat& rat() const { return c_[0]; }

  std::span<const Rat> coords() const { return c_; }
  std::span<const Rat> low() const { return {c_.data(), c_.size() / 2}; }
  std::span<const Rat> high() const { return {c_.data() + c_.size() / 2, c_.size() / 2}; }

  bool operator==(const TowerElem&) const = default;

 private:
  explicit TowerElem(std::vector<Rat> c) : c_(std::move(c)) {}
  std::vector<Rat> c_;
};

/// An increasing square-root tower over Q: level k adjoins a square
/// root of gen_square(k), an element of level k-1. The standard tower
/// for a pair uses gen_square(k) = nu + x_{k-1}; `extend` appends one
/// formal level whose generator squares to an arbitrary element, which
/// is how quadratic extensions K_n(sqrt(d)) are realized.
class TowerCtx {
 public:
  /// `build_min_polys = false` skips the eager P_0..P_max cache; element
  /// arithmetic and square testing never consult it, and composing
  /// polynomials past degree ~1000 costs seconds.
  TowerCtx(Pair pair, int max_level, bool build_min_polys = true);

  TowerCtx extend(const TowerElem& square) const;

  /// Same tower cut down to a smaller top level.
  TowerCtx truncated(int new_max_level) const;

  const Pair& pair() const { return pair_; }
  int max_level() const { return max_level_; }
  bool is_extension() const { return extension_levels_ > 0; }

  /// x_k^2 as an element of level k-1 (1 <= k <= max_level).
  const TowerElem& gen_square(int k) const;

  /// Minimal polynomial P_n of x_n over Q, degree 2^n; cached for the
  /// standard levels of the tower.
  const UPoly& min_poly(int n) const;

 private:
  Pair pair_;
  int max_level_ = 0;
  int extension_levels_ = 0;
  std::vector<TowerElem> gen_sq_;  // index k >= 1
  std::vector<UPoly> min_poly_;    // index 0..(max_level - extension_levels)
};

/// The obstruction sequence u_0 = nu^2 - nu, u_{k+1} = u_k^2 - nu.
std::vector<Int> u_seq(long nu, int count);

// --- element arithmetic (exact, pure) ---

TowerElem lift(const TowerElem& e, int level);
TowerElem add(const TowerElem& x, const TowerElem& y);
TowerElem sub(const TowerElem& x, const TowerElem& y);
TowerElem neg(const TowerElem& x);
TowerElem mul(const TowerCtx& ctx, const TowerElem& x, const TowerElem& y);
TowerElem inv(const TowerCtx& ctx, const TowerElem& x);
TowerElem div(const TowerCtx& ctx, const TowerElem& x, const TowerElem& y);
TowerElem square(const TowerCtx& ctx, const TowerElem& x);

/// Conjugation flipping the sign of the top-level generator.
TowerElem conj_top(const TowerElem& x);

/// (a + b x_n)(a - b x_n) = a^2 - b^2 (nu + x_{n-1}), one level down.
TowerElem norm_down(const TowerCtx& ctx, const TowerElem& x);

/// Iterated norm_down to the target level.
TowerElem norm_to_base(const TowerCtx& ctx, const TowerElem& x, int target_level);

/// (a + b x_n) + (a - b x_n) = 2a, one level down.
TowerElem trace_down(const TowerElem& x);

/// Recursive square test with witness: returns w with w^2 = s when s is
/// a square in its level's field, empty otherwise.
std::optional<TowerElem> is_square_in_tower(const TowerCtx& ctx, const TowerElem& s);

/// Nested-radical rendering, e.g. "1 + 2*sqrt(2+sqrt(2))".
std::string to_string(const TowerCtx& ctx, const TowerElem& e);

/// All 2^n conjugates of the element written in the power basis of x_n
/// (coeffs, lowest first), as certified enclosures with radius at most
/// 10^-digits, sorted ascending. Requires the tower totally real to
/// level n, checked via sturm_count(P_n) = 2^n.
std::vector<RealBall> conjugates_numeric(const Pair& pair, int n, const UPoly& coeffs,
                                         int digits);

/// Conjugates of x_n itself (all sign patterns), unsorted, pattern
/// order; bit k of the pattern flips the sign of the level-(k+1) root.
std::vector<RealBall> generator_conjugates(const Pair& pair, int n, long bits);

}  // namespace towerlab
