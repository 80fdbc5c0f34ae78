#pragma once

#include <cstdint>
#include <map>

#include "poincare_deform/poly.hpp"

namespace poincare_deform {

inline constexpr int32_t kExactOrder = std::numeric_limits<int32_t>::max();

// A polynomial known modulo l^ord.  ord == kExactOrder means the value is
// exact; finite ord tracks how far a truncated expansion can be trusted.
// All engine values flow through this one type so exact and series
// computations share every code path.
struct Series {
  Poly p;
  int32_t ord = kExactOrder;

  Series() = default;
  explicit Series(Poly poly, int32_t o = kExactOrder) : p(std::move(poly)), ord(o) {
    if (o != kExactOrder) p = p.truncate_lambda(o);
  }

  static Series zero() { return Series(); }
  static Series one() { return Series(Poly::one()); }
  static Series constant(Scalar c) { return Series(Poly::constant(std::move(c))); }
  static Series integer(long long n) { return constant(Scalar::integer(n)); }
  static Series generator(const std::string& name) { return Series(Poly::generator(name)); }
  static Series generator(int gen) { return Series(Poly::generator(gen)); }

  bool is_zero() const { return p.is_zero(); }
  bool exact() const { return ord == kExactOrder; }

  // Smallest l-power present; kExactOrder-as-int-max for the zero value.
  int valuation() const { return p.lambda_valuation(); }

  Series truncated(int32_t n) const {
    Series r;
    r.ord = std::min(ord, n);
    r.p = p.truncate_lambda(r.ord);
    return r;
  }

  Series operator-() const {
    Series r = *this;
    r.p = -r.p;
    return r;
  }

  Series star() const {
    Series r = *this;
    r.p = r.p.star();
    return r;
  }

  Series set_lambda_zero() const { return Series(p.set_lambda_zero(), kExactOrder); }

  Series scaled(const Scalar& c) const {
    Series r = *this;
    r.p = r.p.scaled(c);
    // scaling by an l-carrying Scalar shifts the trusted window
    if (ord != kExactOrder && !c.is_zero()) {
      int v = c.lambda_valuation();
      long long o = static_cast<long long>(ord) + v;
      r.ord = static_cast<int32_t>(std::min<long long>(o, kExactOrder));
      r.p = r.p.truncate_lambda(r.ord);
    }
    return r;
  }

  std::string str() const {
    std::string s = p.str();
    if (ord != kExactOrder) s += " + O(l^" + std::to_string(ord) + ")";
    return s;
  }
};

namespace detail {
inline int32_t sat_add_ord(int32_t ord, int val) {
  if (ord == kExactOrder || val == std::numeric_limits<int>::max()) return kExactOrder;
  long long s = static_cast<long long>(ord) + val;
  if (s >= kExactOrder) return kExactOrder;
  if (s < std::numeric_limits<int32_t>::min()) throw std::domain_error("Series: order underflow");
  return static_cast<int32_t>(s);
}
}  // namespace detail

inline Series operator+(const Series& a, const Series& b) {
  Series r;
  r.ord = std::min(a.ord, b.ord);
  r.p = a.p + b.p;
  if (r.ord != kExactOrder) r.p = r.p.truncate_lambda(r.ord);
  return r;
}
inline Series operator-(const Series& a, const Series& b) { return a + (-b); }

inline Series operator*(const Series& a, const Series& b) {
  Series r;
  // error(a)*b has valuation >= a.ord + val(b), and symmetrically
  r.ord = std::min(detail::sat_add_ord(a.ord, b.valuation()),
                   detail::sat_add_ord(b.ord, a.valuation()));
  r.p = (r.ord == kExactOrder) ? a.p * b.p : mul_truncated(a.p, b.p, r.ord);
  return r;
}

inline Series& operator+=(Series& a, const Series& b) { return a = a + b; }
inline Series& operator-=(Series& a, const Series& b) { return a = a - b; }
inline Series& operator*=(Series& a, const Series& b) { return a = a * b; }

inline bool operator==(const Series& a, const Series& b) {
  if (a.ord != b.ord) return false;
  return a.p == b.p;
}
inline bool operator!=(const Series& a, const Series& b) { return !(a == b); }

// Exact division of every coefficient by l; requires the l^0 layer to vanish.
inline Series divide_by_lambda(const Series& s, long long scale_den = 1) {
  if (!s.is_zero() && s.valuation() < 1)
    throw std::domain_error("Series: value has a nonzero l^0 part, cannot divide by l");
  Series r;
  Scalar f = Scalar::frac(1, scale_den) / Scalar::lambda();
  r.p = s.p.scaled(f);
  r.ord = detail::sat_add_ord(s.ord, -1);
  return r;
}

// Inverse square root of s = 1 + O(l) to the requested order, by Newton
// iteration t <- t(3 - s t^2)/2 which doubles the trusted order each step.
inline Series series_sqrt_inv(const Series& s, int32_t order) {
  if (s.set_lambda_zero().p != Poly::one())
    throw std::domain_error("Series: sqrt_inv requires constant term 1");
  int32_t target = std::min(order, s.ord);
  Series t = Series::one().truncated(1);
  const Scalar half = Scalar::frac(1, 2);
  int32_t prec = 1;
  while (prec < target) {
    prec = (target - prec < prec) ? target : 2 * prec;
    Series tw = Series(t.p, prec);  // widen: error enters only through the update
    Series st2 = (s.truncated(prec) * tw * tw);
    Series upd = (Series::integer(3) - st2) * tw;
    t = upd.scaled(half).truncated(prec);
  }
  t.ord = target;
  return t;
}

// Substitute Series values for selected generators; untouched generators stay
// symbolic.
inline Series substitute(const Series& s, const std::map<int, Series>& vals) {
  Series acc = Series::zero();
  acc.ord = s.ord;
  for (const auto& [m, c] : s.p.terms()) {
    Series term = Series::constant(c);
    for (int g = 0; g < kMaxGenerators; ++g) {
      uint8_t e = m.e[static_cast<std::size_t>(g)];
      if (!e) continue;
      auto it = vals.find(g);
      Series base = (it != vals.end()) ? it->second : Series::generator(g);
      for (int k = 0; k < e; ++k) term *= base;
    }
    acc += term;
  }
  return acc;
}

}  // namespace poincare_deform
