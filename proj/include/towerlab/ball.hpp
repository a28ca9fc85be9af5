#pragma once

#include <string>

#include "towerlab/rat.hpp"

namespace towerlab {

/// Certified real: an exact rational enclosure [lo, hi]. The midpoint /
/// radius view is derived. Operations round outward, so every enclosure
/// is rigorous; `round_to(bits)` snaps endpoints outward to the dyadic
/// grid 2^-bits to keep denominators bounded along long computations.
class RealBall {
 public:
  RealBall() = default;
  explicit RealBall(const Rat& exact) : lo_(exact), hi_(exact) {}
  RealBall(Rat lo, Rat hi);

  static RealBall hull(const Rat& a, const Rat& b);

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  Rat mid() const { return (lo_ + hi_) / 2; }
  Rat rad() const { return (hi_ - lo_) / 2; }
  bool is_exact() const { return lo_ == hi_; }

  RealBall round_to(long bits) const;

  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  RealBall operator-() const { return RealBall(-hi_, -lo_); }

  RealBall abs() const;

  /// Certified square root with outward dyadic rounding at `bits`.
  /// Throws precision_error if the enclosure reaches below zero.
  RealBall sqrt(long bits) const;

  bool certainly_lt(const Rat& q) const { return hi_ < q; }
  bool certainly_gt(const Rat& q) const { return lo_ > q; }
  bool certainly_lt(const RealBall& o) const { return hi_ < o.lo_; }
  bool certainly_gt(const RealBall& o) const { return lo_ > o.hi_; }
  bool contains(const Rat& q) const { return lo_ <= q && q <= hi_; }

  /// Midpoint rendered with `digits` fractional digits.
  std::string decimal(int digits) const { return rat_decimal(mid(), digits); }
  /// Upper bound on the radius as "<c>e<e>" with one significant digit,
  /// or "0" when exact.
  std::string radius_string() const;

 private:
  Rat lo_, hi_;
};

/// max(a, b) as intervals (monotone hull).
RealBall ball_max(const RealBall& a, const RealBall& b);

/// Decimal digits -> working precision in bits, with guard bits.
long digits_to_bits(int digits);

}  // namespace towerlab
