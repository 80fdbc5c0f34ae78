#pragma once

// Double-precision Hamiltonian dynamics of the deformed particle.  The
// Hamiltonian is the mass-shell constraint H = alpha (det ptilde - m^2); the
// momenta are frozen along the flow and the coordinates obey
//   xdot = -alpha (f p + p f^dagger),    p = adj(ptilde),
// with f = C + i u, u = lambda x ptilde and C the square root of 1l - u^2
// continued from the identity.  Massless trajectories are exact straight
// lines; massive ones run between the singularities of C, and the elapsed
// coordinate time between them is the particle's lifetime.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "poincare_deform/numeric.hpp"

namespace poincare_deform {

struct DynamicsParams {
  double lambda = 0.0;
  double m = 0.0;
  double alpha = 1.0;  // Lagrange-multiplier gauge; pure rescaling of tau
};

struct NumericState {
  std::array<double, 4> x{};
  std::array<double, 4> p{};
  double tau = 0.0;
};

// |det ptilde| below which a light-like momentum is accepted, and
// |det(1l - u^2)| below which the square-root branch point is declared hit.
inline constexpr double kLightLikeTol = 1e-12;
inline constexpr double kSingularDetTol = 1e-13;

struct FNumericResult {
  numeric::C2 f, C, u;
  double detM = 0.0;  // det(1l - u^2); real by structure
};

// Closed form for f: the principal square root of 1l - u^2 is computed by the
// Cayley-Hamilton formula sqrt(M) = (M + delta 1l)/s, delta^2 = det M,
// s^2 = tr M + 2 delta; among the four root branches the one nearest `prev`
// (the identity at the start of a trajectory) keeps C continuous in tau.
inline FNumericResult f_numeric(const std::array<double, 4>& x, const std::array<double, 4>& p,
                                double lambda, const numeric::C2* prev = nullptr) {
  using numeric::C2;
  using numeric::cplx;
  C2 u = (numeric::position_embedding(x) * numeric::momentum_embedding(p)) * lambda;
  C2 M = C2::identity() - u * u;
  double detM = std::real(M.det());

  C2 ref = prev ? *prev : C2::identity();
  cplx delta = std::sqrt(M.det());
  bool have = false;
  C2 best{};
  double best_dist = 0.0;
  for (int flip = 0; flip < 2; ++flip) {
    cplx d = flip ? -delta : delta;
    cplx s = std::sqrt(M.trace() + 2.0 * d);
    if (std::abs(s) < 1e-150) continue;  // the two roots collide on this branch
    C2 base = (M + C2::identity() * d) * (1.0 / s);
    for (int sign = 0; sign < 2; ++sign) {
      C2 cand = sign ? base * (-1.0) : base;
      double dist = (cand - ref).norm_max();
      if (!have || dist < best_dist) {
        have = true;
        best = cand;
        best_dist = dist;
      }
    }
  }
  if (!have)
    throw std::domain_error("f_numeric: square-root branches collide, det(1l - u^2) = " +
                            std::to_string(detM));
  return {best + u * cplx(0.0, 1.0), best, u, detM};
}

struct Derivatives {
  std::array<double, 4> xdot{};
  std::array<double, 4> pdot{};  // identically zero: momenta are frozen
  FNumericResult fr;
};

inline Derivatives hamilton_rhs(const NumericState& s, const DynamicsParams& par,
                                const numeric::C2* prevC = nullptr) {
  Derivatives d;
  d.fr = f_numeric(s.x, s.p, par.lambda, prevC);
  numeric::C2 plow = numeric::momentum_embedding(s.p).adj();
  numeric::C2 xdotm = (d.fr.f * plow + plow * d.fr.f.dagger()) * (-par.alpha);
  d.xdot = numeric::position_components(xdotm);
  return d;
}

struct Diagnostics {
  double collinearity = 0.0;      // max |xdot^mu p^nu - xdot^nu p^mu|
  double trace_contraction = 0.0; // |xdot^mu p_mu| (signature +---)
  double singularity_det = 0.0;   // det(1l - u^2)
  double detp = 0.0;              // det ptilde, conserved exactly
};

inline Diagnostics diagnostics_of(const NumericState& s, const Derivatives& d) {
  Diagnostics g;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      g.collinearity =
          std::max(g.collinearity, std::abs(d.xdot[static_cast<std::size_t>(mu)] * s.p[static_cast<std::size_t>(nu)] -
                                            d.xdot[static_cast<std::size_t>(nu)] * s.p[static_cast<std::size_t>(mu)]));
  g.trace_contraction = std::abs(d.xdot[0] * s.p[0] - d.xdot[1] * s.p[1] - d.xdot[2] * s.p[2] -
                                 d.xdot[3] * s.p[3]);
  g.singularity_det = d.fr.detM;
  g.detp = std::real(numeric::momentum_embedding(s.p).det());
  return g;
}

struct TrajectoryRow {
  double tau = 0.0;
  std::array<double, 4> x{}, p{};
  double collinearity = 0.0, singularity_det = 0.0, detp = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  bool hit_singularity = false;
  NumericState final_state;
  numeric::C2 final_C = numeric::C2::identity();
  double max_collinearity = 0.0;
  double max_trace_contraction = 0.0;
};

namespace detail {

// One classical RK4 step of the frozen-momentum flow; the branch reference is
// held fixed across the four stages.
inline NumericState rk4_step(const NumericState& s, const DynamicsParams& par, double dt,
                             const numeric::C2& Cref) {
  auto shift = [&](const NumericState& base, const std::array<double, 4>& k, double h) {
    NumericState n = base;
    for (int mu = 0; mu < 4; ++mu) n.x[static_cast<std::size_t>(mu)] += h * k[static_cast<std::size_t>(mu)];
    return n;
  };
  auto k1 = hamilton_rhs(s, par, &Cref).xdot;
  auto k2 = hamilton_rhs(shift(s, k1, dt / 2), par, &Cref).xdot;
  auto k3 = hamilton_rhs(shift(s, k2, dt / 2), par, &Cref).xdot;
  auto k4 = hamilton_rhs(shift(s, k3, dt), par, &Cref).xdot;
  NumericState n = s;
  for (int mu = 0; mu < 4; ++mu)
    n.x[static_cast<std::size_t>(mu)] +=
        dt / 6.0 *
        (k1[static_cast<std::size_t>(mu)] + 2 * k2[static_cast<std::size_t>(mu)] +
         2 * k3[static_cast<std::size_t>(mu)] + k4[static_cast<std::size_t>(mu)]);
  n.tau = s.tau + dt;
  return n;
}

inline bool past_singularity(double detM, double detM0) {
  return std::abs(detM) < kSingularDetTol || (detM0 > 0) != (detM > 0);
}

}  // namespace detail

// Fixed-step RK4 with singularity detection: when det(1l - u^2) crosses the
// threshold (or flips sign) inside a step, the crossing parameter is bracketed
// by bisection from the last regular state and the run stops there.
inline Trajectory integrate(const NumericState& s0, const DynamicsParams& par, double dt,
                            int steps) {
  if (dt == 0.0) throw std::invalid_argument("integrate: dt must be nonzero");
  Trajectory tr;
  NumericState s = s0;
  numeric::C2 C = numeric::C2::identity();

  auto record = [&](const NumericState& st, const Derivatives& d) {
    Diagnostics g = diagnostics_of(st, d);
    tr.rows.push_back({st.tau, st.x, st.p, g.collinearity, g.singularity_det, g.detp});
    tr.max_collinearity = std::max(tr.max_collinearity, g.collinearity);
    tr.max_trace_contraction = std::max(tr.max_trace_contraction, g.trace_contraction);
  };

  Derivatives d0 = hamilton_rhs(s, par, &C);
  C = d0.fr.C;
  record(s, d0);

  for (int k = 0; k < steps; ++k) {
    NumericState next = detail::rk4_step(s, par, dt, C);
    for (double v : next.x)
      if (!std::isfinite(v)) throw std::runtime_error("integrate: non-finite state");
    FNumericResult fn = f_numeric(next.x, next.p, par.lambda, &C);

    if (detail::past_singularity(fn.detM, d0.fr.detM)) {
      // bisect the crossing parameter within [0, dt] from the regular state
      double detM0 = f_numeric(s.x, s.p, par.lambda, &C).detM;
      double lo = 0.0, hi = dt;
      for (int it = 0; it < 80; ++it) {
        double mid = (lo + hi) / 2.0;
        NumericState probe = detail::rk4_step(s, par, mid, C);
        double dm = f_numeric(probe.x, probe.p, par.lambda, &C).detM;
        if (detail::past_singularity(dm, detM0))
          hi = mid;
        else
          lo = mid;
      }
      NumericState stop = detail::rk4_step(s, par, lo, C);
      Derivatives dstop = hamilton_rhs(stop, par, &C);
      record(stop, dstop);
      tr.hit_singularity = true;
      tr.final_state = stop;
      tr.final_C = dstop.fr.C;
      return tr;
    }

    s = next;
    C = fn.C;
    Derivatives d = hamilton_rhs(s, par, &C);
    record(s, d);
    d0 = d;
  }
  tr.final_state = s;
  tr.final_C = C;
  return tr;
}

struct PhotonReport {
  double max_collinearity = 0.0;
  double max_trace_contraction = 0.0;
  double detp = 0.0;
  int steps = 0;
};

// Light-like momentum: the trajectory must stay an exact straight line with
// xdot proportional to p, at every lambda.
inline PhotonReport photon_check(const NumericState& s0, const DynamicsParams& par, double dt,
                                 int steps) {
  double detp = std::real(numeric::momentum_embedding(s0.p).det());
  if (std::abs(detp) > kLightLikeTol)
    throw std::invalid_argument("photon_check: momentum is not light-like, det ptilde = " +
                                std::to_string(detp));
  Trajectory tr = integrate(s0, par, dt, steps);
  return {tr.max_collinearity, tr.max_trace_contraction, detp,
          static_cast<int>(tr.rows.size()) - 1};
}

struct LifetimeReport {
  double measured = 0.0;   // |x0(forward singularity) - x0(backward singularity)|
  double formula = 0.0;    // |Tr(gamma p) / (lambda det ptilde)| at the initial state
  double relative_error = 0.0;
  double tau_forward = 0.0, tau_backward = 0.0;
};

// Massive particle: run to the branch-point singularities in both directions
// and compare the elapsed coordinate time with the closed lifetime formula
// (computed from the realization's gamma = f / sqrt(det f), never assumed).
inline LifetimeReport lifetime_check(const NumericState& s0, const DynamicsParams& par, double dt,
                                     int max_steps) {
  using numeric::cplx;
  double detp = std::real(numeric::momentum_embedding(s0.p).det());
  if (std::abs(detp) <= kLightLikeTol)
    throw std::invalid_argument("lifetime_check: needs a massive state, det ptilde = " +
                                std::to_string(detp));
  if (par.lambda == 0.0)
    throw std::invalid_argument("lifetime_check: lambda = 0 has no singularity (infinite life)");

  Trajectory fwd = integrate(s0, par, std::abs(dt), max_steps);
  Trajectory bwd = integrate(s0, par, -std::abs(dt), max_steps);
  if (!fwd.hit_singularity || !bwd.hit_singularity)
    throw std::runtime_error("lifetime_check: no singularity within the step budget");

  LifetimeReport r;
  r.tau_forward = fwd.final_state.tau;
  r.tau_backward = bwd.final_state.tau;
  r.measured = std::abs(fwd.final_state.x[0] - bwd.final_state.x[0]);

  FNumericResult f0 = f_numeric(s0.x, s0.p, par.lambda);
  cplx gamma_norm = std::sqrt(f0.f.det());  // branch continued from f = 1l
  numeric::C2 gamma = f0.f * (1.0 / gamma_norm);
  numeric::C2 plow = numeric::momentum_embedding(s0.p).adj();
  r.formula = std::abs((gamma * plow).trace()) / std::abs(par.lambda * detp);
  r.relative_error = std::abs(r.measured - r.formula) / r.formula;
  return r;
}

// Trajectory CSV: full double precision, LF line endings.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "tau,x0,x1,x2,x3,p0,p1,p2,p3,collinearity,singularity_det,detp\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << sep;
  };
  for (const auto& row : tr.rows) {
    put(row.tau, ',');
    for (double v : row.x) put(v, ',');
    for (double v : row.p) put(v, ',');
    put(row.collinearity, ',');
    put(row.singularity_det, ',');
    put(row.detp, '\n');
  }
}

}  // namespace poincare_deform
