#include "towerlab/upoly.hpp"

#include <algorithm>

namespace towerlab {

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

UPoly UPoly::constant(const Rat& c) {
  UPoly p;
  if (c != 0) p.c_.push_back(c);
  return p;
}

UPoly UPoly::x() {
  UPoly p;
  p.c_ = {Rat(0), Rat(1)};
  return p;
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (degree() <= 0) return UPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Rat& s) const {
  if (s == 0) return UPoly();
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw precondition_error("UPoly::divmod: division by zero polynomial");
  std::vector<Rat> rem = a.c_;
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rat> quot(static_cast<size_t>(a.degree() - db + 1), Rat(0));
  for (int i = a.degree(); i >= db; --i) {
    Rat coef = rem[static_cast<size_t>(i)] / b.leading();
    if (coef == 0) continue;
    quot[static_cast<size_t>(i - db)] = coef;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(i - db + j)] -= coef * b[static_cast<size_t>(j)];
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    const bool first = out.empty();
    const bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = (a == 1) && i > 0;
    if (!unit) out += rat_to_string(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += "X";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {
UPoly primitive_positive(const UPoly& p);
}

UPoly poly_gcd(UPoly a, UPoly b) {
  // Remainders rescaled to primitive integer form each round; plain
  // rational Euclid blows up on the degree-64 inputs seen here.
  a = primitive_positive(a);
  b = primitive_positive(b);
  while (!b.is_zero()) {
    UPoly r = primitive_positive(UPoly::divmod(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rat(1) / a.leading());
}

UPoly square_free_poly(const UPoly& p) {
  if (p.is_zero() || p.degree() == 0) return p;
  UPoly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return UPoly::divmod(p, g).first;
}

UPoly poly_step(const UPoly& p, long nu) {
  // Horner in the polynomial ring with X^2 - nu as the variable image.
  UPoly sub({-nu, 0, 1});
  UPoly acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * sub + UPoly::constant(p[i]);
  return acc;
}

bool xrat_less(const XRat& a, const XRat& b) {
  using K = XRat::Kind;
  if (a.kind == K::NegInf) return b.kind != K::NegInf;
  if (a.kind == K::PosInf) return false;
  if (b.kind == K::PosInf) return true;
  if (b.kind == K::NegInf) return false;
  return a.value < b.value;
}

namespace {

// Scale to a primitive integer polynomial; only positive scaling, so
// every sign evaluation is preserved.
UPoly primitive_positive(const UPoly& p) {
  if (p.is_zero()) return p;
  Int lcm_den = 1;
  for (const Rat& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  Int content = 0;
  for (const Rat& c : p.coeffs()) {
    Int n = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  return p.scaled(make_rat(lcm_den, content));
}

int sign_of(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int sign_at(const UPoly& p, const XRat& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case XRat::Kind::Finite:
      return sign_of(p.eval(x.value));
    case XRat::Kind::PosInf:
      return sign_of(p.leading());
    case XRat::Kind::NegInf:
      return (p.degree() % 2 == 0) ? sign_of(p.leading()) : -sign_of(p.leading());
  }
  return 0;
}

std::vector<UPoly> sturm_chain(const UPoly& squarefree) {
  std::vector<UPoly> chain;
  chain.push_back(primitive_positive(squarefree));
  UPoly d = squarefree.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(primitive_positive(d));
  while (true) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain.back();
    UPoly r = UPoly::divmod(a, b).second;
    if (r.is_zero()) break;
    chain.push_back(primitive_positive(-r));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

// Sign variations at x with zero entries dropped. With a square-free
// head polynomial this equals the variation count just right of x, so
// V(lo) - V(hi) counts roots in the half-open interval (lo, hi].
int variations_at(const std::vector<UPoly>& chain, const XRat& x) {
  int count = 0, prev = 0;
  for (const UPoly& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

int sturm_count(const UPoly& p, const XRat& lo, const XRat& hi) {
  if (p.is_zero()) throw precondition_error("sturm_count: zero polynomial");
  if (!xrat_less(lo, hi)) throw precondition_error("sturm_count: empty interval");
  UPoly sf = square_free_poly(p);
  if (sf.degree() <= 0) return 0;
  auto chain = sturm_chain(sf);
  return variations_at(chain, lo) - variations_at(chain, hi);
}

int sturm_count_all(const UPoly& p) { return sturm_count(p, XRat::neg_inf(), XRat::pos_inf()); }

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UPoly& p, const Rat& width) {
  if (p.is_zero()) throw precondition_error("isolate_real_roots: zero polynomial");
  UPoly sf = square_free_poly(p);
  std::vector<std::pair<Rat, Rat>> out;
  if (sf.degree() <= 0) return out;
  auto chain = sturm_chain(sf);
  auto count_in = [&](const Rat& a, const Rat& b) {
    return variations_at(chain, XRat::finite(a)) - variations_at(chain, XRat::finite(b));
  };
  // Cauchy bound: all roots in [-B, B].
  Rat bound(1);
  for (int i = 0; i < sf.degree(); ++i) {
    Rat q = abs(sf[i] / sf.leading());
    if (q > bound) bound = q;
  }
  bound += 1;
  // Refinement of an isolated root by sign bisection on sf alone; the
  // Sturm chain is only consulted while intervals hold several roots.
  auto refine = [&](Rat a, Rat b) {
    int sb = sign_of(sf.eval(b));
    while (b - a > width) {
      Rat mid = (a + b) / 2;
      int sm = sign_of(sf.eval(mid));
      if (sm == 0) {
        // root exactly at mid; shrink around it
        Rat half = width / 2;
        out.emplace_back(mid - half, mid);
        return;
      }
      if (sm == sb)
        b = mid;
      else
        a = mid;
    }
    out.emplace_back(a, b);
  };
  struct Seg {
    Rat a, b;
    int n;
  };
  std::vector<Seg> work{{-bound, bound, count_in(-bound, bound)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.n == 0) continue;
    if (s.n == 1) {
      if (sign_of(sf.eval(s.a)) == 0 || sign_of(sf.eval(s.b)) == 0 ||
          sign_of(sf.eval(s.a)) == sign_of(sf.eval(s.b))) {
        // endpoint root or no sign change: fall back to chain bisection
        if (s.b - s.a <= width) {
          out.emplace_back(s.a, s.b);
        } else {
          Rat mid = (s.a + s.b) / 2;
          int left = count_in(s.a, mid);
          work.push_back({mid, s.b, s.n - left});
          work.push_back({s.a, mid, left});
        }
      } else {
        refine(s.a, s.b);
      }
      continue;
    }
    Rat mid = (s.a + s.b) / 2;
    int left = count_in(s.a, mid);
    work.push_back({mid, s.b, s.n - left});
    work.push_back({s.a, mid, left});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace towerlab
