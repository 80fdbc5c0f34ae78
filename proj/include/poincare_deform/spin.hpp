#pragma once

// Spin sector: a second unimodular 2x2 block gamma_s carried by the particle
// on top of the spinless phase-space realization.  The product Poisson
// structure ({gamma_s, everything} = 0) would not survive the dressing
// gamma -> gamma gamma_s, so the spin block instead receives quadratic
// r-matrix brackets of its own against itself, the momenta and the
// coordinates; with those rows installed the dressed product carries exactly
// the relations of the bare group element, det(gamma_s) is central, and the
// usual commuting spin of the canonical theory reappears as lambda -> 0.
//
// Only the holomorphic sector (gamma, gamma_s, p, x, f) closes under the
// implemented table; brackets of gamma_s against the conjugate block are not
// part of it, which is why the spin-dressed Pauli-Lubanski determinant is
// certified at an exact rational substitution point instead of re-derived as
// a symbolic Casimir.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "poincare_deform/spinless.hpp"

namespace poincare_deform {

// Relation selectors of the spin rows (alpha, beta, gamma, delta of
// relation_rhs).  The spin block repeats the group-element pattern against
// itself, pairs with the momenta through a pattern of its own, and pairs
// with the coordinates through the same selector pattern as x-x.
inline RelationSpec rel_gsgs() { return rel_gg(); }
inline RelationSpec rel_pgs() { return {RSel::RDag, RSel::R, RSel::RDag, RSel::R}; }
inline RelationSpec rel_xgs() { return rel_xx(); }
// Derived consequences ({f or gamma or (x p)^n against gamma_s}) all follow
// the uniform unconjugated pattern, the same one as the gamma / gamma^dag
// pair -- which is also why the Jacobi identity carries over.
inline RelationSpec rel_ggs() { return rel_ggb(); }

// Traceless 2x2 symbol block used by the near-identity parametrizations of
// the classical-limit checks.
inline Mat small_traceless_matrix(const std::string& prefix) {
  Mat m(2);
  m.at(0, 0) = Series::generator(prefix + "11");
  m.at(0, 1) = Series::generator(prefix + "12");
  m.at(1, 0) = Series::generator(prefix + "21");
  m.at(1, 1) = -Series::generator(prefix + "11");
  return m;
}

// 1l + i*lambda*small: the first-order slice of exp(i*lambda*small), which is
// all the lowest-order statements below can see.
inline Mat near_identity(const Mat& small) {
  return Mat::identity(2) + small.scaled(Scalar::i() * Scalar::lambda());
}

// ---------------------------------------------------------------------------
// The spin-extended realization: the spinless table plus the three spin rows,
// packed onto twelve lanes (x, p, gamma_s) for the heavy residual checks.
// ---------------------------------------------------------------------------
struct SpinRealization {
  int32_t order;
  const SpinlessRealization& base;
  Mat gs;              // the spin block, four exact symbol entries
  PoissonStructure ps; // spinless rows + gamma_s rows
  GradedLanes lanes;
  FlatMat flat_x, flat_p, flat_f, flat_gamma, flat_gs;

  explicit SpinRealization(const SpinlessRealization& b)
      : order(b.order),
        base(b),
        gs(group_matrix("gs")),
        ps(merged_structure(b.ps, spin_rows())),
        lanes(GradedLanes::for_gens(spin_gens())) {
    flat_x = flat_from_matrix(b.x, lanes);
    flat_p = flat_from_matrix(b.p, lanes);
    flat_f = flat_from_matrix(b.f, lanes);
    flat_gamma = flat_from_matrix(b.gamma, lanes);
    flat_gs = flat_from_matrix(gs, lanes);
    graded_.emplace(ps, lanes);
  }

  const GradedStructure& graded() const { return *graded_; }

  static PoissonStructure spin_rows() {
    PoissonStructure sp;
    auto gse = extraction_group("gs");
    install_relation(sp, gse, gse, rel_gsgs());
    install_relation(sp, extraction_momentum(), gse, rel_pgs());
    install_relation(sp, extraction_position(), gse, rel_xgs());
    return sp;
  }

  static std::vector<int> spin_gens() {
    std::vector<int> g = SpinlessRealization::phase_space_gens();
    for (const char* cell : {"11", "12", "21", "22"})
      g.push_back(gen_id(std::string("gs") + cell));
    return g;
  }

 private:
  std::optional<GradedStructure> graded_;
};

namespace detail {

// Exact Gaussian rational with small numerators/denominators, for the
// substitution-point certificate.
inline GaussRat random_gauss(std::mt19937_64& rng, bool complex_part) {
  std::uniform_int_distribution<long long> num(-9, 9), den(1, 6);
  auto pick = [&]() {
    long long n = num(rng);
    if (n == 0) n = 2;
    return Rat(n) / den(rng);
  };
  Rat re = pick();
  return complex_part ? GaussRat(re, pick()) : GaussRat(re);
}

}  // namespace detail

inline void add_spin_checks(CheckRunner& run, const SpinRealization& s, uint64_t seed) {
  const GradedStructure& gm = s.graded();
  const int32_t floor = s.order - 2;  // guaranteed order for derived residuals

  // --- the three installed spin rows reproduce their matrix relations ---
  run.run("spin.rel.gsgs", "spin-spin quadratic relation (the group-element pattern)",
          [&](CheckResult& c) {
            FlatMat res = flat_relation_residual(gm, rel_gsgs(), s.flat_gs, s.flat_gs);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), kExactOrder);
          });
  run.run("spin.rel.pgs", "momentum-spin quadratic relation", [&](CheckResult& c) {
    FlatMat res = flat_relation_residual(gm, rel_pgs(), s.flat_p, s.flat_gs);
    detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), kExactOrder);
  });
  run.run("spin.rel.xgs", "coordinate-spin quadratic relation (the x-x pattern)",
          [&](CheckResult& c) {
            FlatMat res = flat_relation_residual(gm, rel_xgs(), s.flat_x, s.flat_gs);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), kExactOrder);
          });

  // --- derived brackets against the spin block ---
  run.run("spin.monomial.xp",
          "every power (x p)^n, n = 1..4, brackets with the spin block in the uniform pattern",
          [&](CheckResult& c) {
            FlatMat xp = s.flat_x * s.flat_p;
            FlatMat an = xp;
            bool zero = true;
            int32_t ord = kExactOrder;
            for (int n = 1; n <= 4; ++n) {
              if (n > 1) an = an * xp;
              FlatMat res = flat_bracket_matrix(gm, an, s.flat_gs) -
                            flat_relation_rhs(rel_ggs(), an, s.flat_gs);
              zero = zero && res.is_zero();
              ord = std::min(ord, res.min_ord());
            }
            detail::fill_zero_mod(c, zero, ord, kExactOrder);
          });
  run.run("spin.rel.fgs", "the dressing matrix f brackets with the spin block in the same form",
          [&](CheckResult& c) {
            FlatMat res = flat_bracket_matrix(gm, s.flat_f, s.flat_gs) -
                          flat_relation_rhs(rel_ggs(), s.flat_f, s.flat_gs);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), floor);
          });
  run.run("spin.rel.gammags",
          "gamma against the spin block follows the conjugate-pair pattern "
          "(f relation divided by sqrt(det f))",
          [&](CheckResult& c) {
            FlatMat res = flat_bracket_matrix(gm, s.flat_gamma, s.flat_gs) -
                          flat_relation_rhs(rel_ggs(), s.flat_gamma, s.flat_gs);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), floor);
          });

  // --- centrality of the determinants ---
  run.run("spin.casimir.detgs",
          "det(gamma_s) has zero bracket with every generator, so unimodularity is consistent",
          [&](CheckResult& c) {
            FlatPoly detgs = flat_det2(s.flat_gs);
            bool zero = true;
            int32_t ord = kExactOrder;
            for (int g : SpinRealization::spin_gens()) {
              FlatPoly br = flat_bracket(gm, detgs, flat_generator(g, s.lanes));
              zero = zero && br.terms.empty();
              ord = std::min(ord, br.ord);
            }
            detail::fill_zero_mod(c, zero, ord, kExactOrder);
          });
  run.run("spin.casimir.detf", "det(f) keeps zero bracket against the spin block",
          [&](CheckResult& c) {
            FlatPoly detf = flat_det2(s.flat_f);
            bool zero = true;
            int32_t ord = kExactOrder;
            for (const char* cell : {"11", "12", "21", "22"}) {
              int g = gen_id(std::string("gs") + cell);
              FlatPoly br = flat_bracket(gm, detf, flat_generator(g, s.lanes));
              zero = zero && br.terms.empty();
              ord = std::min(ord, br.ord);
            }
            detail::fill_zero_mod(c, zero, ord, floor);
          });
  run.run("spin.noprecession",
          "det(p) brackets to zero with the spin block: the mass-shell flow leaves spin inert",
          [&](CheckResult& c) {
            FlatPoly detp = flat_det2(s.flat_p);
            bool zero = true;
            int32_t ord = kExactOrder;
            for (const char* cell : {"11", "12", "21", "22"}) {
              int g = gen_id(std::string("gs") + cell);
              FlatPoly br = flat_bracket(gm, detp, flat_generator(g, s.lanes));
              zero = zero && br.terms.empty();
              ord = std::min(ord, br.ord);
            }
            detail::fill_zero_mod(c, zero, ord, kExactOrder);
          });

  // --- Jacobi across the mixed sector ---
  run.run("spin.jacobi", "Jacobi identity over all (gamma, p, gamma_s) entry triples",
          [&](CheckResult& c) {
            bool zero = true;
            int32_t ord = kExactOrder;
            for (int a = 0; a < 4; ++a)
              for (int b = 0; b < 4; ++b)
                for (int d = 0; d < 4; ++d) {
                  FlatPoly res =
                      flat_jacobi(gm, s.flat_gamma.at(a / 2, a % 2), s.flat_p.at(b / 2, b % 2),
                                  s.flat_gs.at(d / 2, d % 2));
                  zero = zero && res.terms.empty();
                  ord = std::min(ord, res.ord);
                }
            detail::fill_zero_mod(c, zero, ord, floor);
          });

  // --- the dressed product carries the bare group-element structure ---
  run.run("spin.product.gg",
          "gamma gamma_s satisfies the gamma-gamma relation: right multiplication by the spin "
          "block preserves the Poisson structure",
          [&](CheckResult& c) {
            FlatMat prod = s.flat_gamma * s.flat_gs;
            FlatMat res = flat_bracket_matrix(gm, prod, prod) -
                          flat_relation_rhs(rel_gg(), prod, prod);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), floor);
          });
  run.run("spin.product.pg", "momentum against gamma gamma_s keeps the momentum-gamma relation",
          [&](CheckResult& c) {
            FlatMat prod = s.flat_gamma * s.flat_gs;
            FlatMat res = flat_bracket_matrix(gm, s.flat_p, prod) -
                          flat_relation_rhs(rel_pg(), s.flat_p, prod);
            detail::fill_zero_mod(c, res.is_zero(), res.min_ord(), floor);
          });
  run.run("spin.product.unit",
          "with the spin block set to 1l the dressed relations collapse to the spinless ones",
          [&](CheckResult& c) {
            FlatMat resg = flat_bracket_matrix(gm, s.flat_gamma, s.flat_gamma) -
                           flat_relation_rhs(rel_gg(), s.flat_gamma, s.flat_gamma);
            FlatMat resp = flat_bracket_matrix(gm, s.flat_p, s.flat_gamma) -
                           flat_relation_rhs(rel_pg(), s.flat_p, s.flat_gamma);
            bool zero = resg.is_zero() && resp.is_zero();
            detail::fill_zero_mod(c, zero, std::min(resg.min_ord(), resp.min_ord()), floor);
          });

  // --- canonical limit: near-identity parametrizations commute at lowest order ---
  run.run("spin.classical.sj",
          "with gamma = 1l + i l j and gamma_s = 1l + i l s the relation forces {j1, s2} -> 0: "
          "its right side cancels through order l^2",
          [&](CheckResult& c) {
            Mat rhs = relation_rhs(rel_ggs(), near_identity(small_traceless_matrix("y")),
                                   near_identity(small_traceless_matrix("s")));
            bool zero = rhs.truncated(3).is_zero();
            c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "exact";
            c.residual_summary = zero ? "0" : "nonzero";
          });
  run.run("spin.classical.xs",
          "with gamma_s = 1l + i l s the coordinate-spin relation forces {x1, s2} -> 0 as l -> 0",
          [&](CheckResult& c) {
            Mat rhs = relation_rhs(rel_xgs(), x_matrix(),
                                   near_identity(small_traceless_matrix("s")));
            bool zero = rhs.truncated(2).is_zero();
            c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "exact";
            c.residual_summary = zero ? "0" : "nonzero";
          });
  run.run("spin.classical.ps",
          "with gamma_s = 1l + i l s the momentum-spin relation forces {p1, s2} -> 0 as l -> 0",
          [&](CheckResult& c) {
            Mat rhs = relation_rhs(rel_pgs(), p_tilde_matrix(),
                                   near_identity(small_traceless_matrix("s")));
            bool zero = rhs.truncated(2).is_zero();
            c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "exact";
            c.residual_summary = zero ? "0" : "nonzero";
          });

  // --- brackets that must NOT vanish in the deformed theory ---
  auto nonzero = [&](const char* id, const char* claim, const FlatMat& A, const FlatMat& B) {
    run.run(id, claim, [&](CheckResult& c) {
      FlatMat br = flat_bracket_matrix(gm, A, B);
      c.status = !br.is_zero() ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
      c.order = detail::order_label(br.min_ord());
      c.residual_summary = !br.is_zero() ? "nonzero (as required)" : "0 (sector collapsed)";
    });
  };
  nonzero("spin.control.orbit",
          "spin does not Poisson-commute with the orbital group element: the product structure "
          "assumption is genuinely dropped",
          s.flat_gamma, s.flat_gs);
  nonzero("spin.control.momentum", "spin does not Poisson-commute with the momenta", s.flat_p,
          s.flat_gs);
  nonzero("spin.control.position", "spin does not Poisson-commute with the coordinates", s.flat_x,
          s.flat_gs);

  // --- the spin-dressed Pauli-Lubanski block ---
  run.run("spin.wspin.detw",
          "dressing gamma -> gamma gamma_s turns on the Pauli-Lubanski determinant: "
          "(Gamma^dag p Gamma - p) has nonzero det at an exact rational point, generically in l",
          [&](CheckResult& c) {
            std::mt19937_64 rng(seed);
            std::map<int, Series> vals;
            for (int m = 0; m < 4; ++m)
              vals[gen_id("x" + std::to_string(m))] =
                  Series::constant(Scalar::rational(detail::random_gauss(rng, false)));
            for (int m = 0; m < 4; ++m)
              vals[gen_id("p" + std::to_string(m))] =
                  Series::constant(Scalar::rational(detail::random_gauss(rng, false)));
            // unimodular spin block: d = (1 + b c) / a keeps det = 1 exactly
            GaussRat a = detail::random_gauss(rng, true);
            GaussRat b = detail::random_gauss(rng, true);
            GaussRat cc = detail::random_gauss(rng, true);
            GaussRat d = (GaussRat(1) + b * cc) / a;
            vals[gen_id("gs11")] = Series::constant(Scalar::rational(a));
            vals[gen_id("gs12")] = Series::constant(Scalar::rational(b));
            vals[gen_id("gs21")] = Series::constant(Scalar::rational(cc));
            vals[gen_id("gs22")] = Series::constant(Scalar::rational(d));

            auto eval = [&](const Mat& m) {
              Mat r(2);
              for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) r.at(i, j) = substitute(m.at(i, j), vals);
              return r;
            };
            Mat gs_pt = eval(s.gs);
            bool unimodular = (det2(gs_pt) - Series::one()).is_zero();
            Mat big = eval(s.base.gamma) * gs_pt;
            Mat p_pt = eval(s.base.p);
            Mat wnum = big.dagger() * p_pt * big - p_pt;
            Series detw = det2(wnum);
            bool ok = unimodular && !detw.is_zero();
            c.status = ok ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.order = detail::order_label(detw.ord);
            c.residual_summary =
                !unimodular ? "substitution point lost unimodularity"
                            : (ok ? "nonzero (as required)" : "0 (spin invisible to det w)");
          });
}

inline VerificationReport run_spin_suite(int order, uint64_t seed) {
  VerificationReport rep;
  rep.suite = "spin";
  rep.order = order;
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  CheckRunner run(rep);
  if (order == 8) {
    SpinRealization s(SpinlessRealization::instance());
    add_spin_checks(run, s, seed);
  } else {
    SpinlessRealization b(order);
    SpinRealization s(b);
    add_spin_checks(run, s, seed);
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace poincare_deform
