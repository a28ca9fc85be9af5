#include "towerlab/ball.hpp"

#include <algorithm>

namespace towerlab {

RealBall::RealBall(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw precondition_error("RealBall: inverted endpoints");
}

RealBall RealBall::hull(const Rat& a, const Rat& b) {
  return a <= b ? RealBall(a, b) : RealBall(b, a);
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rat round_down(const Rat& q, const Int& scale) {
  return make_rat(floor_div(q.get_num() * scale, q.get_den()), scale);
}

Rat round_up(const Rat& q, const Int& scale) {
  return make_rat(ceil_div(q.get_num() * scale, q.get_den()), scale);
}

}  // namespace

RealBall RealBall::round_to(long bits) const {
  Int scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(bits));
  return RealBall(round_down(lo_, scale), round_up(hi_, scale));
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  return RealBall(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  return RealBall(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  Rat p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return RealBall(lo, hi);
}

RealBall RealBall::abs() const {
  if (lo_ >= 0) return *this;
  if (hi_ <= 0) return -*this;
  return RealBall(Rat(0), std::max(Rat(-lo_), hi_));
}

RealBall RealBall::sqrt(long bits) const {
  if (lo_ < 0) throw precision_error("RealBall::sqrt: enclosure reaches below zero");
  Int scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(bits));
  const Int scale2 = scale * scale;
  // floor(sqrt(lo)*2^bits) / 2^bits <= sqrt(lo)
  Int nlo = floor_div(lo_.get_num() * scale2, lo_.get_den());
  Rat rlo = make_rat(isqrt(nlo).first, scale);
  // ceil side for hi
  Int nhi = ceil_div(hi_.get_num() * scale2, hi_.get_den());
  auto [rhroot, exact] = isqrt(nhi);
  Rat rhi = make_rat(exact ? rhroot : rhroot + 1, scale);
  return RealBall(rlo, rhi);
}

std::string RealBall::radius_string() const {
  Rat r = rad();
  if (r == 0) return "0";
  // smallest c*10^e >= r with c in 1..9
  int e = 0;
  Rat v = r;
  while (v > 9) {
    v /= 10;
    ++e;
  }
  while (v <= make_rat(9, 10)) {
    v *= 10;
    --e;
  }
  Int c = ceil_div(v.get_num(), v.get_den());
  return c.get_str() + "e" + std::to_string(e);
}

RealBall ball_max(const RealBall& a, const RealBall& b) {
  return RealBall(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

long digits_to_bits(int digits) {
  return static_cast<long>(digits) * 10 / 3 + 64;
}

}  // namespace towerlab
