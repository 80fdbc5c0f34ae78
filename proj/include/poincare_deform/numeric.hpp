#pragma once

// Double-precision evaluation of the exact symbolic layer: substitute numbers
// for the deformation parameter and the generator symbols, and a minimal
// complex 2x2 matrix kit shared by the trajectory integrator.  The numeric
// embeddings mirror the symbolic layouts entry for entry, so symbolic
// residuals can be replayed against floating-point runs.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "poincare_deform/layouts.hpp"

namespace poincare_deform::numeric {

using cplx = std::complex<double>;
using GenValues = std::array<cplx, kMaxGenerators>;

inline cplx to_cplx(const GaussRat& q) {
  return {q.re.convert_to<double>(), q.im.convert_to<double>()};
}

inline double ipow(double b, int e) {
  double r = 1.0;
  while (e-- > 0) r *= b;
  return r;
}

inline cplx eval(const ParamPoly& p, double lambda, double hbar = 0.0) {
  cplx acc = 0.0;
  for (const auto& t : p.terms())
    acc += to_cplx(t.c) * ipow(lambda, ParamPoly::ldeg_of(t.key)) *
           ipow(hbar, ParamPoly::hdeg_of(t.key));
  return acc;
}

inline cplx eval(const Scalar& s, double lambda, double hbar = 0.0) {
  cplx den = eval(s.den(), lambda, hbar);
  if (std::abs(den) < 1e-300) throw std::domain_error("numeric: denominator vanished");
  return eval(s.num(), lambda, hbar) / den;
}

inline cplx eval(const Series& s, double lambda, const GenValues& vals, double hbar = 0.0) {
  cplx acc = 0.0;
  for (const auto& [m, c] : s.p.terms()) {
    cplx term = eval(c, lambda, hbar);
    for (int g = 0; g < kMaxGenerators; ++g)
      for (uint8_t k = m.e[static_cast<std::size_t>(g)]; k > 0; --k) term *= vals[static_cast<std::size_t>(g)];
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Complex 2x2 matrices, row major.
// ---------------------------------------------------------------------------
struct C2 {
  std::array<cplx, 4> a{};

  static C2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }
  cplx trace() const { return a[0] + a[3]; }
  C2 dagger() const { return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }
  C2 adj() const { return {{a[3], -a[1], -a[2], a[0]}}; }  // adjugate: M * adj(M) = det(M) 1l

  double norm_max() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
  }

  friend C2 operator+(const C2& x, const C2& y) {
    C2 r;
    for (int k = 0; k < 4; ++k) r.a[static_cast<std::size_t>(k)] = x.a[static_cast<std::size_t>(k)] + y.a[static_cast<std::size_t>(k)];
    return r;
  }
  friend C2 operator-(const C2& x, const C2& y) {
    C2 r;
    for (int k = 0; k < 4; ++k) r.a[static_cast<std::size_t>(k)] = x.a[static_cast<std::size_t>(k)] - y.a[static_cast<std::size_t>(k)];
    return r;
  }
  friend C2 operator*(const C2& x, const C2& y) {
    C2 r;
    r.a[0] = x.a[0] * y.a[0] + x.a[1] * y.a[2];
    r.a[1] = x.a[0] * y.a[1] + x.a[1] * y.a[3];
    r.a[2] = x.a[2] * y.a[0] + x.a[3] * y.a[2];
    r.a[3] = x.a[2] * y.a[1] + x.a[3] * y.a[3];
    return r;
  }
  friend C2 operator*(const C2& x, cplx c) {
    C2 r;
    for (int k = 0; k < 4; ++k) r.a[static_cast<std::size_t>(k)] = x.a[static_cast<std::size_t>(k)] * c;
    return r;
  }
  friend C2 operator*(const C2& x, double c) { return x * cplx(c, 0.0); }
};

// Numeric mirror of the symbolic momentum embedding:
//   [[-p0 + p3, p1 - i p2], [p1 + i p2, -p0 - p3]].
inline C2 momentum_embedding(const std::array<double, 4>& p) {
  return {{cplx(-p[0] + p[3], 0), cplx(p[1], -p[2]), cplx(p[1], p[2]), cplx(-p[0] - p[3], 0)}};
}

// Numeric mirror of the symbolic position embedding:
//   [[-x0 - x3, -x1 + i x2], [-x1 - i x2, -x0 + x3]].
inline C2 position_embedding(const std::array<double, 4>& x) {
  return {{cplx(-x[0] - x[3], 0), cplx(-x[1], x[2]), cplx(-x[1], -x[2]), cplx(-x[0] + x[3], 0)}};
}

// Inverse of position_embedding on hermitean matrices (real parts taken).
inline std::array<double, 4> position_components(const C2& m) {
  return {-std::real(m.a[0] + m.a[3]) / 2.0, -std::real(m.a[1]),
          std::imag(m.a[1]), std::real(m.a[3] - m.a[0]) / 2.0};
}

inline C2 eval(const Mat& m, double lambda, const GenValues& vals, double hbar = 0.0) {
  if (m.dim() != 2) throw std::invalid_argument("numeric: eval expects a 2x2 symbolic matrix");
  C2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j) = eval(m.at(i, j), lambda, vals, hbar);
  return r;
}

// Generator substitution table holding a phase-space point.
inline GenValues phase_space_values(const std::array<double, 4>& x,
                                    const std::array<double, 4>& p) {
  GenValues v{};
  for (int mu = 0; mu < 4; ++mu) {
    v[static_cast<std::size_t>(gen_id("x" + std::to_string(mu)))] = x[static_cast<std::size_t>(mu)];
    v[static_cast<std::size_t>(gen_id("p" + std::to_string(mu)))] = p[static_cast<std::size_t>(mu)];
  }
  return v;
}

}  // namespace poincare_deform::numeric
