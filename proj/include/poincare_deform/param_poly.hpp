#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "poincare_deform/rational.hpp"

namespace poincare_deform {

// Polynomial in the two formal parameters l (deformation) and h (semiclassical)
// with GaussRat coefficients.  Terms are kept sorted by packed key, zero
// coefficients are never stored.
class ParamPoly {
 public:
  struct Term {
    uint32_t key;  // (l_deg << 16) | h_deg
    GaussRat c;
  };

  static uint32_t pack(int l, int h) {
    return (static_cast<uint32_t>(l) << 16) | static_cast<uint32_t>(h);
  }
  static int ldeg_of(uint32_t key) { return static_cast<int>(key >> 16); }
  static int hdeg_of(uint32_t key) { return static_cast<int>(key & 0xffffu); }

  ParamPoly() = default;

  static ParamPoly zero() { return ParamPoly(); }
  static ParamPoly constant(GaussRat c) { return monomial(0, 0, std::move(c)); }
  static ParamPoly one() { return constant(GaussRat(1)); }
  static ParamPoly lambda(int k = 1) { return monomial(k, 0, GaussRat(1)); }
  static ParamPoly hbar(int k = 1) { return monomial(0, k, GaussRat(1)); }
  static ParamPoly monomial(int l, int h, GaussRat c) {
    ParamPoly p;
    if (!c.is_zero()) p.terms_.push_back({pack(l, h), std::move(c)});
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0);
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].key == 0 && terms_[0].c == GaussRat(1);
  }
  bool is_single_term() const { return terms_.size() == 1; }

  GaussRat constant_coeff() const {
    if (terms_.empty() || terms_[0].key != 0) return GaussRat(0);
    return terms_[0].c;
  }

  // Degree helpers; min functions return INT_MAX on the zero polynomial.
  int lambda_min() const {
    int m = std::numeric_limits<int>::max();
    for (const auto& t : terms_) m = std::min(m, ldeg_of(t.key));
    return m;
  }
  int lambda_max() const {
    int m = -1;
    for (const auto& t : terms_) m = std::max(m, ldeg_of(t.key));
    return m;
  }
  int hbar_min() const {
    int m = std::numeric_limits<int>::max();
    for (const auto& t : terms_) m = std::min(m, hdeg_of(t.key));
    return m;
  }
  int hbar_max() const {
    int m = -1;
    for (const auto& t : terms_) m = std::max(m, hdeg_of(t.key));
    return m;
  }

  ParamPoly operator-() const {
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key < b.terms_[j].key)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].key < a.terms_[i].key) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        GaussRat c = a.terms_[i].c + b.terms_[j].c;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].key, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }

  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        // exponents add component-wise; 16-bit fields never overflow at our degrees
        ParamPoly m = monomial(ldeg_of(ta.key) + ldeg_of(tb.key),
                               hdeg_of(ta.key) + hdeg_of(tb.key), ta.c * tb.c);
        r = r + m;
      }
    return r;
  }

  ParamPoly scaled(const GaussRat& c) const {
    if (c.is_zero()) return zero();
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
  }

  ParamPoly conj() const {
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.c = t.c.conj();
    return r;
  }

  // Multiply by l^dl * h^dh; negative shifts must divide exactly.
  ParamPoly shifted(int dl, int dh) const {
    ParamPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      int l = ldeg_of(t.key) + dl;
      int h = hdeg_of(t.key) + dh;
      if (l < 0 || h < 0) throw std::domain_error("ParamPoly: inexact monomial shift");
      r.terms_.push_back({pack(l, h), t.c});
    }
    // shifting preserves ordering
    return r;
  }

  ParamPoly lambda_below(int n) const {
    ParamPoly r;
    for (const auto& t : terms_)
      if (ldeg_of(t.key) < n) r.terms_.push_back(t);
    return r;
  }
  ParamPoly lambda_at(int n) const {  // terms of exact l-degree n, factor kept
    ParamPoly r;
    for (const auto& t : terms_)
      if (ldeg_of(t.key) == n) r.terms_.push_back(t);
    return r;
  }
  ParamPoly hbar_at(int n) const {  // terms of exact h-degree n, factor kept
    ParamPoly r;
    for (const auto& t : terms_)
      if (hdeg_of(t.key) == n) r.terms_.push_back(t);
    return r;
  }
  ParamPoly set_lambda_zero() const { return lambda_below(1); }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (a.terms_[k].key != b.terms_[k].key || a.terms_[k].c != b.terms_[k].c) return false;
    return true;
  }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

  const Term& leading() const {
    if (terms_.empty()) throw std::domain_error("ParamPoly: leading term of zero");
    return terms_.back();
  }

  std::complex<double> eval_double(double lam, double hb) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& t : terms_) {
      double w = 1.0;
      for (int k = 0; k < ldeg_of(t.key); ++k) w *= lam;
      for (int k = 0; k < hdeg_of(t.key); ++k) w *= hb;
      s += std::complex<double>(t.c.to_double_re(), t.c.to_double_im()) * w;
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // print highest degree last, matching ascending key order
    for (const auto& t : terms_) {
      std::string piece;
      GaussRat c = t.c;
      bool neg = c.is_real() && c.re < 0;
      GaussRat disp = neg ? -c : c;
      int ld = ldeg_of(t.key), hd = hdeg_of(t.key);
      bool unit_coeff = (disp == GaussRat(1)) && (ld + hd > 0);
      if (!unit_coeff) piece += disp.str();
      auto append_var = [&piece](const char* v, int d) {
        if (d == 0) return;
        if (!piece.empty()) piece += "*";
        piece += v;
        if (d > 1) piece += "^" + std::to_string(d);
      };
      append_var("l", ld);
      append_var("h", hd);
      if (first) {
        out += (neg ? "-" : "") + piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  std::vector<Term> terms_;
};

namespace detail {

// Exact multivariate long division; throws if not exact.
inline ParamPoly divexact(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero()) throw std::domain_error("ParamPoly: division by zero");
  if (a.is_zero()) return ParamPoly::zero();
  if (b.is_single_term()) {
    const auto& lb = b.leading();
    ParamPoly q;
    for (const auto& t : a.terms()) {
      int l = ParamPoly::ldeg_of(t.key) - ParamPoly::ldeg_of(lb.key);
      int h = ParamPoly::hdeg_of(t.key) - ParamPoly::hdeg_of(lb.key);
      if (l < 0 || h < 0) throw std::domain_error("ParamPoly: inexact division");
      q = q + ParamPoly::monomial(l, h, t.c / lb.c);
    }
    return q;
  }
  ParamPoly rem = a, q;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    int l = ParamPoly::ldeg_of(lr.key) - ParamPoly::ldeg_of(lb.key);
    int h = ParamPoly::hdeg_of(lr.key) - ParamPoly::hdeg_of(lb.key);
    if (l < 0 || h < 0) throw std::domain_error("ParamPoly: inexact division");
    ParamPoly m = ParamPoly::monomial(l, h, lr.c / lb.c);
    q = q + m;
    rem = rem - m * b;
  }
  return q;
}

// Dense univariate view along one of the two variables.
inline std::vector<GaussRat> to_univariate(const ParamPoly& p, bool along_lambda) {
  std::vector<GaussRat> v;
  for (const auto& t : p.terms()) {
    int d = along_lambda ? ParamPoly::ldeg_of(t.key) : ParamPoly::hdeg_of(t.key);
    if (static_cast<int>(v.size()) <= d) v.resize(d + 1);
    v[d] += t.c;
  }
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

inline ParamPoly from_univariate(const std::vector<GaussRat>& v, bool along_lambda) {
  ParamPoly p;
  for (std::size_t d = 0; d < v.size(); ++d)
    if (!v[d].is_zero())
      p = p + ParamPoly::monomial(along_lambda ? static_cast<int>(d) : 0,
                                  along_lambda ? 0 : static_cast<int>(d), v[d]);
  return p;
}

inline std::vector<GaussRat> uni_gcd(std::vector<GaussRat> a, std::vector<GaussRat> b) {
  auto strip = [](std::vector<GaussRat>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    // a mod b over the field Q(i)
    while (a.size() >= b.size() && !a.empty()) {
      GaussRat q = a.back() / b.back();
      std::size_t off = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[off + k] -= q * b[k];
      strip(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    GaussRat lead = a.back();
    for (auto& c : a) c = c / lead;
  }
  return a;
}

ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b);

// Content of a (viewed in Q(i)[h][l]) as a polynomial in h: gcd of l-coefficients.
inline ParamPoly hbar_content(const ParamPoly& p) {
  ParamPoly g;
  int lmax = p.lambda_max();
  for (int l = 0; l <= lmax; ++l) {
    ParamPoly cl = p.lambda_at(l).shifted(-l, 0);
    if (cl.is_zero()) continue;
    g = g.is_zero() ? cl : poly_gcd(g, cl);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

inline ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // factor out the common monomial part first
  int la = a.lambda_min(), ha = a.hbar_min();
  int lb = b.lambda_min(), hb = b.hbar_min();
  int lm = std::min(la, lb), hm = std::min(ha, hb);
  ParamPoly A = a.shifted(-la, -ha);
  ParamPoly B = b.shifted(-lb, -hb);
  ParamPoly mono = ParamPoly::monomial(lm, hm, GaussRat(1));

  auto monic = [](ParamPoly p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading().c.inverse());
  };

  if (A.is_single_term() || B.is_single_term()) return mono;
  bool a_l_only = A.hbar_max() == 0, b_l_only = B.hbar_max() == 0;
  bool a_h_only = A.lambda_max() == 0, b_h_only = B.lambda_max() == 0;
  if (a_l_only && b_l_only)
    return mono * from_univariate(uni_gcd(to_univariate(A, true), to_univariate(B, true)), true);
  if (a_h_only && b_h_only)
    return mono * from_univariate(uni_gcd(to_univariate(A, false), to_univariate(B, false)), false);
  if ((a_l_only && b_h_only) || (a_h_only && b_l_only)) return mono;

  // genuinely bivariate: primitive pseudo-remainder sequence in l over Q(i)[h]
  auto primitive = [&](const ParamPoly& p) -> ParamPoly {
    if (p.is_zero()) return p;
    ParamPoly c = hbar_content(p);
    return divexact(p, c);
  };
  ParamPoly ca = hbar_content(A), cb = hbar_content(B);
  ParamPoly cont_gcd = poly_gcd(ca, cb);
  ParamPoly U = primitive(A), V = primitive(B);
  if (U.lambda_max() < V.lambda_max()) std::swap(U, V);
  while (!V.is_zero()) {
    // pseudo-remainder of U by V in the variable l
    int du = U.lambda_max(), dv = V.lambda_max();
    if (du < dv) std::swap(U, V), std::swap(du, dv);
    ParamPoly lv = V.lambda_at(dv).shifted(-dv, 0);  // leading coeff in Q(i)[h]
    ParamPoly R = U;
    while (!R.is_zero() && R.lambda_max() >= dv) {
      int dr = R.lambda_max();
      ParamPoly lr = R.lambda_at(dr).shifted(-dr, 0);
      R = R * lv - V * lr.shifted(dr - dv, 0);
    }
    U = V;
    V = primitive(R);
  }
  return mono * cont_gcd * monic(primitive(U));
}

}  // namespace detail

}  // namespace poincare_deform
