#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace towerlab {

/// Arbitrary-precision integer.
using Int = mpz_class;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator (GMP canonical form).
using Rat = mpq_class;

/// Thrown when a documented precondition of an operation is violated.
/// The CLI maps this to exit code 2.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by certified-real routines when the working precision cannot
/// decide a comparison; callers escalate precision up to a cap.
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rational from a numerator/denominator pair, canonicalized.
Rat make_rat(const Int& num, const Int& den);

/// Floor square root together with an exactness flag.
/// Rejects negative input.
std::pair<Int, bool> isqrt(const Int& n);

bool is_perfect_square(const Int& n);

/// Square-free part: the unique square-free s with n = s*m^2 and
/// sign(s) = sign(n). Factors by trial division up to `trial_bound`,
/// falling back to Pollard rho for any remaining cofactor.
/// Rejects zero input.
Int square_free_part(const Int& n, unsigned long trial_bound = 1'000'000UL);

/// Nonnegative rational square root witness, or empty when q is not a
/// square in Q.
std::optional<Rat> rat_is_square(const Rat& q);

/// b^e for a nonnegative exponent.
Int pow_int(const Int& base, unsigned long e);

/// "p/q", or just "p" for integers.
std::string rat_to_string(const Rat& q);

/// Fixed-point decimal rendering with `digits` fractional digits,
/// rounded to nearest (ties away from zero). Deterministic.
std::string rat_decimal(const Rat& q, int digits);

}  // namespace towerlab
