#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "poincare_deform/dynamics.hpp"
#include "poincare_deform/spinless.hpp"

using namespace poincare_deform;
using numeric::C2;
using numeric::cplx;

namespace {
const SpinlessRealization& realization6() {
  static const SpinlessRealization r(6);
  return r;
}

constexpr std::array<double, 4> kMassivePoint = {1.25, 0.75, 0.0, 0.0};  // det ptilde = 1
}  // namespace

TEST_CASE("Closed-form f reduces to the identity in the canonical limit", "[dynamics]") {
  std::array<double, 4> x = {0.3, -0.2, 0.7, 0.1}, p = {1.1, 0.4, -0.3, 0.2};
  auto fr = f_numeric(x, p, 0.0);
  CHECK((fr.f - C2::identity()).norm_max() == 0.0);
  CHECK(fr.detM == 1.0);

  // sine relation f - C = i u holds by construction at any lambda
  auto fr2 = f_numeric(x, p, 0.37);
  CHECK((fr2.f - fr2.C - fr2.u * cplx(0, 1)).norm_max() < 1e-15);
  // and C is an actual square root of 1l - u^2
  C2 M = C2::identity() - fr2.u * fr2.u;
  CHECK((fr2.C * fr2.C - M).norm_max() < 1e-14);
}

TEST_CASE("Closed-form f matches the symbolic series evaluated numerically", "[dynamics]") {
  const auto& base = realization6();
  std::array<double, 4> x = {0.8, -0.6, 0.5, -0.9}, p = {1.2, 0.3, -0.7, 0.4};
  double lambda = 1e-3;  // truncation tail of the order-6 series is ~3e-16

  auto vals = numeric::phase_space_values(x, p);
  C2 f_series = numeric::eval(base.f, lambda, vals);
  auto fr = f_numeric(x, p, lambda);
  CHECK((fr.f - f_series).norm_max() < 1e-12);

  cplx detf_series = numeric::eval(base.detf, lambda, vals);
  CHECK(std::abs(fr.f.det() - detf_series) < 1e-12);
}

TEST_CASE("Hamilton equations replay the symbolic bracket with det ptilde", "[dynamics]") {
  const auto& base = realization6();
  Series detp_sym = det2(p_tilde_matrix());

  NumericState s;
  s.x = {0.4, -1.1, 0.6, 0.2};
  s.p = {1.3, 0.5, -0.4, 0.7};
  DynamicsParams par{1e-3, 0.0, 1.0};

  auto vals = numeric::phase_space_values(s.x, s.p);
  auto d = hamilton_rhs(s, par);
  for (int mu = 0; mu < 4; ++mu) {
    Series br = base.ps.bracket(Series::generator("x" + std::to_string(mu)), detp_sym);
    cplx sym = numeric::eval(br, par.lambda, vals);
    CHECK(std::abs(sym - cplx(d.xdot[static_cast<std::size_t>(mu)] / par.alpha)) < 1e-10);
  }
  for (double v : d.pdot) CHECK(v == 0.0);
}

TEST_CASE("Canonical limit is straight-line free motion", "[dynamics]") {
  NumericState s;
  s.x = {0.0, 1.0, -2.0, 0.5};
  s.p = kMassivePoint;
  DynamicsParams par{0.0, 1.0, 1.0};

  auto d = hamilton_rhs(s, par);
  for (int mu = 0; mu < 4; ++mu)
    CHECK(d.xdot[static_cast<std::size_t>(mu)] ==
          Catch::Approx(-2.0 * s.p[static_cast<std::size_t>(mu)]).margin(1e-15));

  auto tr = integrate(s, par, 1e-2, 200);
  REQUIRE_FALSE(tr.hit_singularity);
  double tau = tr.final_state.tau;
  for (int mu = 0; mu < 4; ++mu)
    CHECK(tr.final_state.x[static_cast<std::size_t>(mu)] ==
          Catch::Approx(s.x[static_cast<std::size_t>(mu)] +
                        tau * d.xdot[static_cast<std::size_t>(mu)])
              .margin(1e-13));
  CHECK(tr.max_collinearity < 1e-14);
  // momenta and det ptilde are frozen exactly
  for (const auto& row : tr.rows) {
    CHECK(row.p == s.p);
    CHECK(row.detp == tr.rows.front().detp);
  }
}

TEST_CASE("Photon trajectories stay collinear at every deformation strength", "[dynamics]") {
  for (double lambda : {0.0, 0.01, 0.1, 1.0}) {
    for (auto p : {std::array<double, 4>{1, 0, 0, 1}, std::array<double, 4>{1, 0, 0, -1}}) {
      NumericState s;
      s.x = {0.2, -0.3, 0.4, 0.1};
      s.p = p;
      DynamicsParams par{lambda, 0.0, 1.0};
      auto rep = photon_check(s, par, 1e-3, 2000);
      INFO("lambda = " << lambda << ", p3 = " << p[3]);
      CHECK(rep.max_collinearity <= 1e-9);
      CHECK(rep.max_trace_contraction <= 1e-9);
    }
  }
  // a massive state must be rejected
  NumericState massive;
  massive.p = kMassivePoint;
  CHECK_THROWS_AS(photon_check(massive, DynamicsParams{0.1, 1.0, 1.0}, 1e-3, 10),
                  std::invalid_argument);
}

TEST_CASE("Massive particle lives exactly as long as the closed formula", "[dynamics]") {
  NumericState s;
  s.p = kMassivePoint;  // det ptilde = 25/16 - 9/16 = 1
  DynamicsParams par{0.1, 1.0, 1.0};

  auto rep = lifetime_check(s, par, 1e-3, 20000);
  // measured coordinate-time span against |Tr(gamma p)/(lambda det ptilde)|,
  // both computed at runtime
  CHECK(rep.relative_error < 5e-3);
  CHECK(rep.formula == Catch::Approx(25.0).epsilon(1e-12));
  CHECK(rep.measured == Catch::Approx(25.0).epsilon(5e-3));

  // the evolution-parameter span to each singularity is pi/2 over
  // mu = 2 alpha lambda det ptilde, independent of the coordinate clock
  double mu = 2.0 * par.alpha * par.lambda * 1.0;
  CHECK(std::abs(rep.tau_forward - M_PI / (2 * mu)) < 5e-3);
  CHECK(std::abs(rep.tau_backward + M_PI / (2 * mu)) < 5e-3);

  // gauge invariance: rescaling alpha rescales tau but not the lifetime
  auto rep2 = lifetime_check(s, par = DynamicsParams{0.1, 1.0, 2.0}, 1e-3, 20000);
  CHECK(rep2.measured == Catch::Approx(rep.measured).epsilon(1e-6));
  CHECK(rep2.tau_forward == Catch::Approx(rep.tau_forward / 2.0).epsilon(1e-3));

  // rejected inputs: light-like momentum, vanishing deformation
  NumericState photon;
  photon.p = {1, 0, 0, 1};
  CHECK_THROWS_AS(lifetime_check(photon, par, 1e-3, 100), std::invalid_argument);
  CHECK_THROWS_AS(lifetime_check(s, DynamicsParams{0.0, 1.0, 1.0}, 1e-3, 100),
                  std::invalid_argument);
}

TEST_CASE("Displaced start still measures the same lifetime", "[dynamics]") {
  // u(0) proportional to the identity: momentum along the clock axis only
  NumericState s;
  s.x = {0.3, 0.0, 0.0, 0.0};
  s.p = {1.0, 0.0, 0.0, 0.0};
  DynamicsParams par{0.2, 1.0, 1.0};
  auto rep = lifetime_check(s, par, 1e-3, 20000);
  // analytic: lifetime 2 p0 / (lambda det ptilde) = 10, independent of the
  // starting phase; the forward tau span is (pi/2 + arcsin(lambda x0 p0))/mu
  CHECK(rep.measured == Catch::Approx(10.0).epsilon(5e-3));
  CHECK(rep.relative_error < 5e-3);
  double mu = 2.0 * par.alpha * par.lambda;
  CHECK(std::abs(rep.tau_forward - (M_PI / 2 + std::asin(par.lambda * 0.3)) / mu) < 5e-3);
}

TEST_CASE("Halving the step size shrinks the trajectory error sixteenfold", "[dynamics]") {
  NumericState s;
  s.p = kMassivePoint;
  DynamicsParams par{0.1, 1.0, 1.0};
  double mu = 2.0 * par.alpha * par.lambda;

  // analytic solution from u(0) = 0: x0(tau) = -(2 p0 / mu) sin(mu tau)
  auto x0_exact = [&](double tau) { return -2.0 * s.p[0] / mu * std::sin(mu * tau); };
  auto err_at = [&](double dt) {
    int steps = static_cast<int>(std::lround(5.0 / dt));
    auto tr = integrate(s, par, dt, steps);
    REQUIRE_FALSE(tr.hit_singularity);
    return std::abs(tr.final_state.x[0] - x0_exact(tr.final_state.tau));
  };
  double e1 = err_at(0.05), e2 = err_at(0.025);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("Square-root branch stays continuous along the flow", "[dynamics]") {
  NumericState s;
  s.p = kMassivePoint;
  DynamicsParams par{0.1, 1.0, 1.0};
  double dt = 1e-2, mu = 2.0 * par.alpha * par.lambda;

  C2 C = f_numeric(s.x, s.p, par.lambda).C;
  for (int k = 0; k < 700; ++k) {  // up to tau = 7, before the branch point
    NumericState next = detail::rk4_step(s, par, dt, C);
    C2 Cnext = f_numeric(next.x, next.p, par.lambda, &C).C;
    CHECK((Cnext - C).norm_max() <= 2.0 * mu * dt);
    s = next;
    C = Cnext;
  }
}

TEST_CASE("Singularity stop lands on the detection threshold", "[dynamics]") {
  NumericState s;
  s.p = kMassivePoint;
  DynamicsParams par{0.1, 1.0, 1.0};
  auto tr = integrate(s, par, 1e-3, 20000);
  REQUIRE(tr.hit_singularity);
  double last = tr.rows.back().singularity_det;
  CHECK(std::abs(last) >= kSingularDetTol * 0.5);
  CHECK(std::abs(last) <= 1e-11);
}

TEST_CASE("Trajectory CSV carries the full-precision diagnostic columns", "[dynamics]") {
  NumericState s;
  s.x = {0.2, -0.3, 0.4, 0.1};
  s.p = {1, 0, 0, 1};
  auto tr = integrate(s, DynamicsParams{0.1, 0.0, 1.0}, 0.25, 4);

  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::string text = os.str();

  CHECK(text.rfind("tau,x0,x1,x2,x3,p0,p1,p2,p3,collinearity,singularity_det,detp\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  // header + five rows (initial state plus four steps), LF terminated
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);

  // first data row starts at tau = 0 with the exact initial state
  std::istringstream is(text);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(row.rfind("0,0.20000000000000001,-0.29999999999999999,", 0) == 0);
}
