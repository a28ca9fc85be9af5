#include "towerlab/tower.hpp"

#include <algorithm>
#include <bit>

namespace towerlab {

namespace {

size_t level_to_size(int level) { return size_t{1} << level; }

int size_to_level(size_t n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw precondition_error("TowerElem: coordinate count must be a power of two");
  return std::countr_zero(n);
}

}  // namespace

TowerElem TowerElem::constant(int level, const Rat& v) {
  std::vector<Rat> c(level_to_size(level), Rat(0));
  c[0] = v;
  return TowerElem(std::move(c));
}

TowerElem TowerElem::generator(int level) {
  if (level < 1) throw precondition_error("TowerElem::generator: level must be >= 1");
  std::vector<Rat> c(level_to_size(level), Rat(0));
  c[c.size() / 2] = 1;
  return TowerElem(std::move(c));
}

TowerElem TowerElem::from_coords(std::vector<Rat> coords) {
  size_to_level(coords.size());
  return TowerElem(std::move(coords));
}

int TowerElem::level() const { return size_to_level(c_.size()); }

bool TowerElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool TowerElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return r == 0; });
}

TowerCtx::TowerCtx(Pair pair, int max_level, bool build_min_polys)
    : pair_(pair), max_level_(max_level) {
  if (pair.nu < 2) throw precondition_error("TowerCtx: nu must be >= 2");
  if (pair.x0 < 0) throw precondition_error("TowerCtx: x0 must be >= 0");
  if (max_level < 0) throw precondition_error("TowerCtx: negative level");
  gen_sq_.resize(static_cast<size_t>(max_level) + 1);
  for (int k = 1; k <= max_level; ++k) {
    if (k == 1) {
      gen_sq_[1] = TowerElem::constant(0, Rat(pair.nu + pair.x0));
    } else {
      gen_sq_[static_cast<size_t>(k)] =
          add(TowerElem::constant(k - 1, Rat(pair.nu)), TowerElem::generator(k - 1));
    }
  }
  min_poly_.reserve(static_cast<size_t>(max_level) + 1);
  min_poly_.push_back(UPoly({-pair.x0, 1}));
  if (build_min_polys)
    for (int n = 1; n <= max_level; ++n) min_poly_.push_back(poly_step(min_poly_.back(), pair.nu));
}

TowerCtx TowerCtx::extend(const TowerElem& square) const {
  if (square.level() != max_level_)
    throw precondition_error("TowerCtx::extend: generator square must live at the top level");
  TowerCtx ext(*this);
  ext.max_level_ += 1;
  ext.extension_levels_ += 1;
  ext.gen_sq_.push_back(square);
  return ext;
}

TowerCtx TowerCtx::truncated(int new_max_level) const {
  if (new_max_level < 0 || new_max_level > max_level_)
    throw precondition_error("TowerCtx::truncated: level out of range");
  TowerCtx cut(*this);
  int removed = max_level_ - new_max_level;
  cut.max_level_ = new_max_level;
  cut.extension_levels_ = std::max(0, extension_levels_ - removed);
  cut.gen_sq_.resize(static_cast<size_t>(new_max_level) + 1);
  int standard = new_max_level - cut.extension_levels_;
  if (static_cast<int>(cut.min_poly_.size()) > standard + 1)
    cut.min_poly_.resize(static_cast<size_t>(standard) + 1);
  return cut;
}

const TowerElem& TowerCtx::gen_square(int k) const {
  if (k < 1 || k > max_level_) throw precondition_error("TowerCtx::gen_square: level out of range");
  return gen_sq_[static_cast<size_t>(k)];
}

const UPoly& TowerCtx::min_poly(int n) const {
  if (n < 0 || n >= static_cast<int>(min_poly_.size()))
    throw precondition_error("TowerCtx::min_poly: level out of range");
  return min_poly_[static_cast<size_t>(n)];
}

std::vector<Int> u_seq(long nu, int count) {
  if (nu < 2) throw precondition_error("u_seq: nu must be >= 2");
  if (count < 1) throw precondition_error("u_seq: need at least one term");
  std::vector<Int> u;
  u.reserve(static_cast<size_t>(count));
  u.emplace_back(Int(nu) * nu - nu);
  for (int i = 1; i < count; ++i) u.push_back(u.back() * u.back() - nu);
  return u;
}

// ---------------------------------------------------------------------------
// element arithmetic

namespace {

using CSpan = std::span<const Rat>;
using MSpan = std::span<Rat>;

void add_into(MSpan out, CSpan a) {
  for (size_t i = 0; i < out.size(); ++i) out[i] += a[i];
}

void sub_into(MSpan out, CSpan a) {
  for (size_t i = 0; i < out.size(); ++i) out[i] -= a[i];
}

bool span_zero(CSpan s) {
  for (const Rat& r : s)
    if (r != 0) return false;
  return true;
}

void zero_out(MSpan out) {
  for (Rat& r : out) r = 0;
}

// out = a*b at `level`; all spans have size 2^level. Karatsuba split:
// (a0 + a1 x)(b0 + b1 x) = (a0 b0 + a1 b1 s) + ((a0+a1)(b0+b1) - a0 b0 - a1 b1) x
// with s = x^2 the generator square one level down. Tower elements are
// typically sparse, so zero halves short-circuit the recursion.
void mul_rec(const TowerCtx& ctx, int level, CSpan a, CSpan b, MSpan out) {
  if (level == 0) {
    out[0] = a[0] * b[0];
    return;
  }
  if (span_zero(a) || span_zero(b)) {
    zero_out(out);
    return;
  }
  const size_t h = a.size() / 2;
  CSpan a0 = a.first(h), a1 = a.last(h), b0 = b.first(h), b1 = b.last(h);
  std::vector<Rat> ac(h), bd(h), mid(h), asum(h), bsum(h), bds(h);
  mul_rec(ctx, level - 1, a0, b0, ac);
  mul_rec(ctx, level - 1, a1, b1, bd);
  for (size_t i = 0; i < h; ++i) {
    asum[i] = a0[i] + a1[i];
    bsum[i] = b0[i] + b1[i];
  }
  mul_rec(ctx, level - 1, asum, bsum, mid);
  mul_rec(ctx, level - 1, bd, ctx.gen_square(level).coords(), bds);
  MSpan low = out.first(h), high = out.last(h);
  for (size_t i = 0; i < h; ++i) {
    low[i] = ac[i] + bds[i];
    high[i] = mid[i] - ac[i] - bd[i];
  }
}

void check_same_level(const TowerElem& x, const TowerElem& y, const char* op) {
  if (x.level() != y.level())
    throw precondition_error(std::string(op) + ": level mismatch; lift explicitly first");
}

std::vector<Rat> coords_copy(const TowerElem& e) {
  return {e.coords().begin(), e.coords().end()};
}

TowerElem half_elem(CSpan half) { return TowerElem::from_coords({half.begin(), half.end()}); }

TowerElem join_halves(const TowerElem& lo, const TowerElem& hi) {
  std::vector<Rat> c;
  c.reserve(lo.coords().size() * 2);
  c.insert(c.end(), lo.coords().begin(), lo.coords().end());
  c.insert(c.end(), hi.coords().begin(), hi.coords().end());
  return TowerElem::from_coords(std::move(c));
}

}  // namespace

TowerElem lift(const TowerElem& e, int level) {
  if (level < e.level()) throw precondition_error("lift: target level below element level");
  std::vector<Rat> c(level_to_size(level), Rat(0));
  std::copy(e.coords().begin(), e.coords().end(), c.begin());
  return TowerElem::from_coords(std::move(c));
}

TowerElem add(const TowerElem& x, const TowerElem& y) {
  check_same_level(x, y, "add");
  std::vector<Rat> c = coords_copy(x);
  add_into(c, y.coords());
  return TowerElem::from_coords(std::move(c));
}

TowerElem sub(const TowerElem& x, const TowerElem& y) {
  check_same_level(x, y, "sub");
  std::vector<Rat> c = coords_copy(x);
  sub_into(c, y.coords());
  return TowerElem::from_coords(std::move(c));
}

TowerElem neg(const TowerElem& x) {
  std::vector<Rat> c = coords_copy(x);
  for (Rat& r : c) r = -r;
  return TowerElem::from_coords(std::move(c));
}

TowerElem mul(const TowerCtx& ctx, const TowerElem& x, const TowerElem& y) {
  check_same_level(x, y, "mul");
  if (x.level() > ctx.max_level())
    throw precondition_error("mul: element level above tower context");
  // rational factors act coordinatewise
  if (x.is_rational() || y.is_rational()) {
    const Rat& s = x.is_rational() ? x.rat() : y.rat();
    const TowerElem& e = x.is_rational() ? y : x;
    std::vector<Rat> out(e.coords().size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = e.coords()[i] * s;
    return TowerElem::from_coords(std::move(out));
  }
  std::vector<Rat> out(x.coords().size());
  mul_rec(ctx, x.level(), x.coords(), y.coords(), out);
  return TowerElem::from_coords(std::move(out));
}

TowerElem square(const TowerCtx& ctx, const TowerElem& x) { return mul(ctx, x, x); }

TowerElem conj_top(const TowerElem& x) {
  if (x.level() == 0) return x;
  return join_halves(half_elem(x.low()), neg(half_elem(x.high())));
}

TowerElem norm_down(const TowerCtx& ctx, const TowerElem& x) {
  if (x.level() == 0) throw precondition_error("norm_down: already at level 0");
  TowerElem a = half_elem(x.low());
  TowerElem b = half_elem(x.high());
  TowerElem b2s = mul(ctx, mul(ctx, b, b), ctx.gen_square(x.level()));
  return sub(mul(ctx, a, a), b2s);
}

TowerElem norm_to_base(const TowerCtx& ctx, const TowerElem& x, int target_level) {
  if (target_level > x.level()) throw precondition_error("norm_to_base: target above element");
  TowerElem e = x;
  while (e.level() > target_level) e = norm_down(ctx, e);
  return e;
}

TowerElem trace_down(const TowerElem& x) {
  if (x.level() == 0) throw precondition_error("trace_down: already at level 0");
  TowerElem a = half_elem(x.low());
  return add(a, a);
}

TowerElem inv(const TowerCtx& ctx, const TowerElem& x) {
  if (x.level() == 0) {
    if (x.rat() == 0) throw precondition_error("inv: division by zero");
    return TowerElem::constant(0, Rat(1) / x.rat());
  }
  // 1/(a + b x) = (a - b x) / (a^2 - b^2 x^2); the denominator is the
  // norm one level down, nonzero whenever x is nonzero in a field.
  TowerElem n = norm_down(ctx, x);
  if (n.is_zero()) throw precondition_error("inv: zero norm (division by zero or collapsed level)");
  TowerElem ninv = inv(ctx, n);
  TowerElem a = half_elem(x.low());
  TowerElem b = half_elem(x.high());
  return join_halves(mul(ctx, a, ninv), neg(mul(ctx, b, ninv)));
}

TowerElem div(const TowerCtx& ctx, const TowerElem& x, const TowerElem& y) {
  check_same_level(x, y, "div");
  return mul(ctx, x, inv(ctx, y));
}

std::optional<TowerElem> is_square_in_tower(const TowerCtx& ctx, const TowerElem& s) {
  if (s.level() == 0) {
    auto w = rat_is_square(s.rat());
    if (!w) return std::nullopt;
    return TowerElem::constant(0, *w);
  }
  const int level = s.level();
  TowerElem a = half_elem(s.low());
  TowerElem b = half_elem(s.high());
  const TowerElem& c = ctx.gen_square(level);

  if (b.is_zero()) {
    // s = a: either a = w^2 below, or a = (v x)^2 with v^2 = a/c;
    // a/c is a square iff a*c is, which avoids a division.
    if (auto w = is_square_in_tower(ctx, a)) return lift(*w, level);
    if (auto w = is_square_in_tower(ctx, mul(ctx, a, c)))
      return join_halves(TowerElem::constant(level - 1, Rat(0)), div(ctx, *w, c));
    return std::nullopt;
  }

  // s = a + b x, b != 0: a witness u + v x needs u^2 + v^2 c = a and
  // 2uv = b, hence (u^2 - v^2 c)^2 = a^2 - b^2 c. Both square roots of
  // the norm are tried; v then comes for free from b.
  TowerElem delta2 = norm_down(ctx, s);
  auto delta = is_square_in_tower(ctx, delta2);
  if (!delta) return std::nullopt;
  const Rat half(1, 2);
  for (int sign = 0; sign < 2; ++sign) {
    TowerElem t = sign == 0 ? add(a, *delta) : sub(a, *delta);
    std::vector<Rat> tc = {t.coords().begin(), t.coords().end()};
    for (Rat& r : tc) r *= half;
    TowerElem t_half = TowerElem::from_coords(std::move(tc));
    if (t_half.is_zero()) continue;
    if (auto u = is_square_in_tower(ctx, t_half)) {
      if (u->is_zero()) continue;
      TowerElem v = div(ctx, b, add(*u, *u));
      return join_halves(*u, v);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string gen_string(const TowerCtx& ctx, int level);

std::string elem_string(const TowerCtx& ctx, const TowerElem& e) {
  if (e.level() == 0) return rat_to_string(e.rat());
  TowerElem a = half_elem(e.low());
  TowerElem b = half_elem(e.high());
  if (b.is_zero()) return elem_string(ctx, a);
  std::string gen = gen_string(ctx, e.level());
  std::string bs;
  if (b.is_rational()) {
    if (b.rat() == 1)
      bs = gen;
    else if (b.rat() == -1)
      bs = "-" + gen;
    else
      bs = rat_to_string(b.rat()) + "*" + gen;
  } else {
    bs = "(" + elem_string(ctx, b) + ")*" + gen;
  }
  if (a.is_zero()) return bs;
  if (!bs.empty() && bs[0] == '-') return elem_string(ctx, a) + " - " + bs.substr(1);
  return elem_string(ctx, a) + " + " + bs;
}

std::string gen_string(const TowerCtx& ctx, int level) {
  return "sqrt(" + elem_string(ctx, ctx.gen_square(level)) + ")";
}

}  // namespace

std::string to_string(const TowerCtx& ctx, const TowerElem& e) { return elem_string(ctx, e); }

// ---------------------------------------------------------------------------
// numeric conjugates

std::vector<RealBall> generator_conjugates(const Pair& pair, int n, long bits) {
  std::vector<RealBall> values{RealBall(Rat(pair.x0))};
  for (int k = 1; k <= n; ++k) {
    std::vector<RealBall> next;
    next.reserve(values.size() * 2);
    for (const RealBall& v : values) {
      RealBall root = (RealBall(Rat(pair.nu)) + v).sqrt(bits);
      next.push_back(root);
      next.push_back(-root);
    }
    values = std::move(next);
  }
  return values;
}

std::vector<RealBall> conjugates_numeric(const Pair& pair, int n, const UPoly& coeffs,
                                         int digits) {
  if (n < 0) throw precondition_error("conjugates_numeric: negative level");
  if (coeffs.degree() + 1 > (1 << n))
    throw precondition_error("conjugates_numeric: polynomial degree exceeds field degree");
  TowerCtx ctx(pair, n);
  if (sturm_count_all(ctx.min_poly(n)) != (1 << n))
    throw precondition_error("conjugates_numeric: tower not totally real at this level");

  const Rat target = make_rat(1, pow_int(10, static_cast<unsigned long>(digits)));
  long bits = digits_to_bits(digits);
  for (;; bits *= 2) {
    if (bits > digits_to_bits(60000))
      throw precision_error("conjugates_numeric: precision cap exceeded");
    try {
      auto gens = generator_conjugates(pair, n, bits);
      std::vector<RealBall> out;
      out.reserve(gens.size());
      bool precise = true;
      for (const RealBall& g : gens) {
        RealBall acc{Rat(0)};
        for (int i = coeffs.degree(); i >= 0; --i)
          acc = (acc * g + RealBall(coeffs[i])).round_to(bits);
        if (acc.rad() > target) precise = false;
        out.push_back(acc);
      }
      if (!precise) continue;
      std::sort(out.begin(), out.end(),
                [](const RealBall& a, const RealBall& b) { return a.mid() < b.mid(); });
      return out;
    } catch (const precision_error&) {
      continue;
    }
  }
}

}  // namespace towerlab
