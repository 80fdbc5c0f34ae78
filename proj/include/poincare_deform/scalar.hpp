#pragma once

#include <complex>
#include <string>

#include "poincare_deform/param_poly.hpp"

namespace poincare_deform {

// Element of the field Q(i)(l, h): a reduced fraction of two ParamPoly with
// the denominator normalised to be monic in its lex-leading term.  The
// deformation parameter l may legitimately appear in denominators (several
// observables divide by it), so the field structure is genuine.
class Scalar {
 public:
  Scalar() : num_(), den_(ParamPoly::one()) {}
  explicit Scalar(long long n) : num_(ParamPoly::constant(GaussRat(n))), den_(ParamPoly::one()) {}
  explicit Scalar(GaussRat c) : num_(ParamPoly::constant(std::move(c))), den_(ParamPoly::one()) {}
  explicit Scalar(ParamPoly p) : num_(std::move(p)), den_(ParamPoly::one()) {}
  Scalar(ParamPoly n, ParamPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar integer(long long n) { return Scalar(n); }
  static Scalar frac(long long n, long long d) { return Scalar(GaussRat::frac(n, d)); }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar lambda(int k = 1) { return Scalar(ParamPoly::lambda(k)); }
  static Scalar hbar(int k = 1) { return Scalar(ParamPoly::hbar(k)); }
  static Scalar rational(GaussRat c) { return Scalar(std::move(c)); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool den_is_one() const { return den_.is_one(); }
  bool den_lambda_free() const { return den_.lambda_max() <= 0; }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (a.is_zero()) return zero();
    return Scalar(a.num_ * b.den_, a.den_ * b.num_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar conj() const {
    // l and h are real parameters; conjugation acts on coefficients only.
    Scalar r;
    r.num_ = num_.conj();
    r.den_ = den_.conj();
    r.reduce();
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    return Scalar(den_, num_);
  }

  // l-adic valuation of the fraction (valuation of num minus valuation of den);
  // returns INT_MAX for zero.
  int lambda_valuation() const {
    if (is_zero()) return std::numeric_limits<int>::max();
    return num_.lambda_min() - den_.lambda_min();
  }

  // Drop numerator terms of l-degree >= n.  Requires an l-free denominator,
  // which holds for every quantity that participates in series arithmetic.
  Scalar truncate_lambda(int n) const {
    if (is_zero()) return *this;
    if (!den_lambda_free())
      throw std::domain_error("Scalar: truncation needs an l-free denominator");
    Scalar r;
    r.num_ = num_.lambda_below(n);
    r.den_ = den_;
    r.reduce();
    return r;
  }

  Scalar set_lambda_zero() const {
    if (is_zero()) return *this;
    int v = lambda_valuation();
    if (v > 0) return zero();
    if (v < 0) throw std::domain_error("Scalar: pole at l = 0");
    ParamPoly n0 = num_.lambda_below(num_.lambda_min() + 1).shifted(-num_.lambda_min(), 0);
    ParamPoly d0 = den_.lambda_below(den_.lambda_min() + 1).shifted(-den_.lambda_min(), 0);
    return Scalar(n0, d0);
  }

  // Coefficient of h^k, as a Scalar in l alone (fraction preserved).
  Scalar hbar_coefficient(int k) const {
    if (den_.hbar_max() > 0)
      throw std::domain_error("Scalar: h-grading needs an h-free denominator");
    Scalar r;
    r.num_ = num_.hbar_at(k).shifted(0, -k);
    r.den_ = den_;
    r.reduce();
    return r;
  }
  int hbar_max() const { return num_.hbar_max(); }

  std::complex<double> eval_double(double lam, double hb = 0.0) const {
    if (is_zero()) return {0.0, 0.0};
    return num_.eval_double(lam, hb) / den_.eval_double(lam, hb);
  }

  std::string str() const {
    if (is_zero()) return "0";
    auto wrap = [](const ParamPoly& p) {
      std::string s = p.str();
      if (p.terms().size() > 1) return "(" + s + ")";
      return s;
    };
    if (den_.is_one()) return num_.str();
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
    if (num_.is_zero()) {
      den_ = ParamPoly::one();
      return;
    }
    ParamPoly g = detail::poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = detail::divexact(num_, g);
      den_ = detail::divexact(den_, g);
    }
    // make the denominator monic in its lex-leading term
    GaussRat lead = den_.leading().c;
    if (lead != GaussRat(1)) {
      GaussRat inv = lead.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  ParamPoly num_;
  ParamPoly den_;
};

}  // namespace poincare_deform
