#include "towerlab/rat.hpp"

#include <map>

namespace towerlab {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw precondition_error("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::pair<Int, bool> isqrt(const Int& n) {
  if (n < 0) throw precondition_error("isqrt: negative input");
  Int root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  return {root, rem == 0};
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Pollard rho (Brent variant); n odd composite > 1, not a prime power
// edge case handled by the caller loop.
Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  gmp_randstate_t st;
  gmp_randinit_mt(st);
  gmp_randseed_ui(st, 0x5eedu);
  Int d = n;
  while (d == n) {
    Int x, c;
    mpz_urandomm(x.get_mpz_t(), st, n.get_mpz_t());
    mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
    if (c == 0) c = 1;
    Int y = x;
    d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) {
        d = n;  // cycle without factor, retry with new (x, c)
        break;
      }
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
  }
  gmp_randclear(st);
  return d;
}

void factor_into(const Int& n, std::map<Int, unsigned long>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Int square_free_part(const Int& n, unsigned long trial_bound) {
  if (n == 0) throw precondition_error("square_free_part: zero input");
  Int m = abs(n);
  Int result = (n < 0) ? -1 : 1;

  std::map<Int, unsigned long> exps;
  for (unsigned long p = 2; p <= trial_bound && Int(p) * p <= m; p = (p == 2) ? 3 : p + 2) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++exps[Int(p)];
    }
  }
  if (m > 1) {
    // Cofactor of large prime factors; perfect powers and semiprimes
    // are resolved by rho + primality splitting.
    factor_into(m, exps);
  }
  for (const auto& [p, e] : exps)
    if (e % 2 == 1) result *= p;
  return result;
}

std::optional<Rat> rat_is_square(const Rat& q) {
  if (q < 0) return std::nullopt;
  auto [rn, en] = isqrt(q.get_num());
  if (!en) return std::nullopt;
  auto [rd, ed] = isqrt(q.get_den());
  if (!ed) return std::nullopt;
  return make_rat(rn, rd);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rat_decimal(const Rat& q, int digits) {
  if (digits < 0) digits = 0;
  const bool neg = q < 0;
  Rat a = neg ? Rat(-q) : q;
  const Int scale = pow_int(10, static_cast<unsigned long>(digits));
  // round(|q| * 10^digits), ties away from zero
  Int scaled_num = a.get_num() * scale * 2 + a.get_den();
  Int units = scaled_num / (a.get_den() * 2);
  std::string ds = units.get_str();
  if (static_cast<int>(ds.size()) <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
  std::string out;
  if (neg && units != 0) out += "-";
  out += ds.substr(0, ds.size() - digits);
  if (digits > 0) {
    out += ".";
    out += ds.substr(ds.size() - digits);
  }
  return out;
}

}  // namespace towerlab
