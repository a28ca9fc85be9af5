#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "towerlab/rat.hpp"

namespace towerlab {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has an empty coefficient list (degree -1).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<long> coeffs);

  static UPoly constant(const Rat& c);
  static UPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& x) const;

  UPoly derivative() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const Rat& s) const;

  /// Exact euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  /// Human-readable form, highest degree first, e.g. "X^4 - 4*X^2 + 2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Monic gcd.
UPoly poly_gcd(UPoly a, UPoly b);

/// p with repeated roots stripped: p / gcd(p, p').
UPoly square_free_poly(const UPoly& p);

/// The composition p(X^2 - nu): one square-root step of the tower
/// minimal-polynomial recursion. Degree doubles.
UPoly poly_step(const UPoly& p, long nu);

/// Extended rational: a finite value or one of the two infinities,
/// used as a Sturm interval endpoint.
struct XRat {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rat value;

  static XRat neg_inf() { return {Kind::NegInf, Rat()}; }
  static XRat pos_inf() { return {Kind::PosInf, Rat()}; }
  static XRat finite(const Rat& v) { return {Kind::Finite, v}; }
};

bool xrat_less(const XRat& a, const XRat& b);

/// Number of distinct real roots of p in (lo, hi], by Sturm's theorem
/// on the square-free part of p. Rejects the zero polynomial.
int sturm_count(const UPoly& p, const XRat& lo, const XRat& hi);

/// Convenience: distinct real roots on the whole line.
int sturm_count_all(const UPoly& p);

/// Disjoint isolating intervals (a, b] for every distinct real root,
/// each of width at most `width`, sorted ascending.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UPoly& p, const Rat& width);

}  // namespace towerlab
