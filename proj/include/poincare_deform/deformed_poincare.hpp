#pragma once

#include <map>

#include "poincare_deform/relation.hpp"
#include "poincare_deform/report.hpp"

namespace poincare_deform {

// ---------------------------------------------------------------------------
// Observable sector: momenta p0..p3 and the boost-sector group element
// (gam, gamb).  The Poisson structure is read off the quadratic matrix
// relations; overlapping relations are cross-checked on insert.
// ---------------------------------------------------------------------------

// Relation selector catalog for the observable sector (alpha, beta, gamma,
// delta slots of relation_rhs).
inline RelationSpec rel_pp() { return {RSel::R, RSel::RDag, RSel::RDag, RSel::R}; }
inline RelationSpec rel_gg() { return {RSel::RDag, RSel::R, RSel::R, RSel::RDag}; }
inline RelationSpec rel_ggb() { return {RSel::R, RSel::R, RSel::R, RSel::R}; }
inline RelationSpec rel_pg() { return {RSel::RDag, RSel::R, RSel::RDag, RSel::RDag}; }
inline RelationSpec rel_gbgb() { return {RSel::R, RSel::RDag, RSel::RDag, RSel::R}; }
inline RelationSpec rel_gbg() { return {RSel::RDag, RSel::RDag, RSel::RDag, RSel::RDag}; }
inline RelationSpec rel_pgb() { return {RSel::R, RSel::R, RSel::RDag, RSel::R}; }
// Pauli-Lubanski sector: w against the group element uses the same patterns
// as p; w against p and w against w use the momentum-momentum pattern, the
// latter with an inhomogeneous extra term.
inline RelationSpec rel_wp() { return rel_pp(); }
inline RelationSpec rel_ww() { return rel_pp(); }

struct DeformedPoincare {
  PoissonStructure ps;
  Mat p, gam, gamb;
  Mat w;                        // Pauli-Lubanski matrix (entries carry 1/l)
  std::array<Series, 4> wc;     // components w0..w3

  DeformedPoincare() : p(p_tilde_matrix()), gam(group_matrix("gam")), gamb(group_matrix("gamb")) {
    auto pe = extraction_momentum();
    auto ge = extraction_group("gam");
    auto be = extraction_group("gamb");
    install_relation(ps, pe, pe, rel_pp());
    install_relation(ps, ge, ge, rel_gg());
    install_relation(ps, ge, be, rel_ggb());
    install_relation(ps, pe, ge, rel_pg());
    install_relation(ps, be, be, rel_gbgb());
    install_relation(ps, pe, be, rel_pgb());
    // overlapping orientation of the gamma/gammabar sector: every insert must
    // agree with what the relation above already installed
    install_relation(ps, be, ge, rel_gbg());

    // w = (adj(gamb) p gam - p) / (2 l); adjugate stands in for the inverse,
    // det(gamb) being central (verified by the Casimir suite).  The group
    // entries are free symbols, so the numerator is not divisible by l as a
    // polynomial: the 1/l lives in the coefficient field.
    Mat raw = adjugate2(gamb) * p * gam - p;
    w = raw.scaled(Scalar::frac(1, 2) / Scalar::lambda());
    auto ww = momentum_weights();
    for (std::size_t c = 0; c < 4; ++c) wc[c] = apply_weights(ww[c], w);
  }

  static const DeformedPoincare& instance() {
    static const DeformedPoincare d;
    return d;
  }

  // Extra (inhomogeneous) term of the w-w relation: -i Pi (w1 p2 - w2 p1).
  Mat ww_extra() const {
    Mat t = slot1(w) * slot2(p) - slot2(w) * slot1(p);
    return (flip_pi() * t).scaled(-Scalar::i());
  }

  std::vector<int> observable_gens() const {
    std::vector<int> g;
    for (int m = 0; m < 4; ++m) g.push_back(gen_id("p" + std::to_string(m)));
    for (int id : entry_gen_ids("gam")) g.push_back(id);
    for (int id : entry_gen_ids("gamb")) g.push_back(id);
    return g;
  }

  Series det_p() const { return det2(p); }
  Series det_w() const { return det2(w); }
  Series w_dot_p() const {
    Series s;
    for (int i = 1; i < 4; ++i)
      s += wc[static_cast<std::size_t>(i)] * Series::generator("p" + std::to_string(i));
    return s;
  }
  Series spatial_p_sq() const {
    Series s;
    for (int i = 1; i < 4; ++i) {
      Series pi = Series::generator("p" + std::to_string(i));
      s += pi * pi;
    }
    return s;
  }
};

inline int levi_civita3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2))
    return 1;
  return -1;
}

// ---------------------------------------------------------------------------
// Component form of the momentum sector: {p_i, p_j} = 2 l eps_ijk p_k (p0+p3),
// {p_i, p0} = 0.
// ---------------------------------------------------------------------------
inline Series momentum_component_rhs(int i, int j) {
  Series rhs;
  for (int k = 1; k <= 3; ++k) {
    int e = levi_civita3(i, j, k);
    if (!e) continue;
    Series term = Series::generator("p" + std::to_string(k)) *
                  (Series::generator("p0") + Series::generator("p3"));
    rhs += term.scaled(Scalar::lambda() * Scalar::integer(2 * e));
  }
  return rhs;
}

// {w_i, p_j} = 2 l (eps_ijl (p0+p3) - delta_j3 eps_ikl p_k) w_l
inline Series w_p_component_rhs(const DeformedPoincare& d, int i, int j) {
  Series rhs;
  for (int l = 1; l <= 3; ++l) {
    Series coeff;
    int e = levi_civita3(i, j, l);
    if (e)
      coeff += (Series::generator("p0") + Series::generator("p3")).scaled(Scalar::integer(e));
    if (j == 3)
      for (int k = 1; k <= 3; ++k) {
        int e2 = levi_civita3(i, k, l);
        if (e2) coeff -= Series::generator("p" + std::to_string(k)).scaled(Scalar::integer(e2));
      }
    rhs += coeff * d.wc[static_cast<std::size_t>(l)].scaled(Scalar::lambda() * Scalar::integer(2));
  }
  return rhs;
}

// {w_i, p_0} = 2 l eps_ijk p_j w_k
inline Series w_p0_component_rhs(const DeformedPoincare& d, int i) {
  Series rhs;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      int e = levi_civita3(i, j, k);
      if (!e) continue;
      rhs += (Series::generator("p" + std::to_string(j)) * d.wc[static_cast<std::size_t>(k)])
                 .scaled(Scalar::lambda() * Scalar::integer(2 * e));
    }
  return rhs;
}

// {w_i, w_j} = eps_ijk (w0 p_k - p0 w_k + 2 l (w0+w3) w_k).
// This is the component content of the w-w matrix relation: its coefficient
// pattern is the same as the momentum-momentum one, so the pattern part
// reproduces the momentum component form with p -> w, and the extra
// -i Pi (w1 p2 - w2 p1) term supplies the w0 p_k - p0 w_k piece.
inline Series w_w_component_rhs_from(const std::array<Series, 4>& w, int i, int j) {
  Series rhs;
  for (int k = 1; k <= 3; ++k) {
    int e = levi_civita3(i, j, k);
    if (!e) continue;
    Series pk = Series::generator("p" + std::to_string(k));
    Series term = w[0] * pk - Series::generator("p0") * w[static_cast<std::size_t>(k)] +
                  ((w[0] + w[3]) * w[static_cast<std::size_t>(k)])
                      .scaled(Scalar::lambda() * Scalar::integer(2));
    rhs += term.scaled(Scalar::integer(e));
  }
  return rhs;
}

inline Series w_w_component_rhs(const DeformedPoincare& d, int i, int j) {
  return w_w_component_rhs_from(d.wc, i, j);
}

// The p <-> w transposition of the identity above,
//   eps_ijk (p0 w_k - w0 p_k + 2 l (p0+p3) p_k),
// is NOT satisfied -- not even modulo unimodularity of the group matrices.
// It is kept as a control distinguishing the two orderings.
inline Series w_w_component_transposed(const DeformedPoincare& d, int i, int j) {
  Series rhs;
  for (int k = 1; k <= 3; ++k) {
    int e = levi_civita3(i, j, k);
    if (!e) continue;
    Series pk = Series::generator("p" + std::to_string(k));
    Series term = Series::generator("p0") * d.wc[static_cast<std::size_t>(k)] - d.wc[0] * pk +
                  (Series::generator("p0") + Series::generator("p3")).scaled(
                      Scalar::lambda() * Scalar::integer(2)) * pk;
    rhs += term.scaled(Scalar::integer(e));
  }
  return rhs;
}

// Canonical reduction modulo the unimodularity ideal
//   (det gamma - 1, det gammabar - 1):
// rewrite u11*u22 -> u12*u21 + 1 for each group prefix until no monomial
// carries a u11,u22 pair.  The two ideal generators have coprime leading
// monomials (disjoint variable sets), so they form a Groebner basis and the
// rewrite terminates in a canonical normal form: the input lies in the ideal
// exactly when the result is zero.
inline Poly reduce_unimodular(const Poly& q) {
  struct Quad { int a11, a12, a21, a22; };
  static const std::array<Quad, 2> quads = {{
      {gen_id("gam11"), gen_id("gam12"), gen_id("gam21"), gen_id("gam22")},
      {gen_id("gamb11"), gen_id("gamb12"), gen_id("gamb21"), gen_id("gamb22")},
  }};
  Poly out = Poly::zero();
  std::vector<std::pair<Mono, Scalar>> work(q.terms().begin(), q.terms().end());
  while (!work.empty()) {
    auto [m, c] = work.back();
    work.pop_back();
    bool rewrote = false;
    for (const auto& qd : quads) {
      if (m.e[static_cast<std::size_t>(qd.a11)] > 0 &&
          m.e[static_cast<std::size_t>(qd.a22)] > 0) {
        Mono unit = m;
        --unit.e[static_cast<std::size_t>(qd.a11)];
        --unit.e[static_cast<std::size_t>(qd.a22)];
        Mono swapped = unit;
        ++swapped.e[static_cast<std::size_t>(qd.a12)];
        ++swapped.e[static_cast<std::size_t>(qd.a21)];
        work.emplace_back(swapped, c);
        work.emplace_back(unit, c);
        rewrote = true;
        break;
      }
    }
    if (!rewrote) out.insert(m, c);
  }
  return out;
}

// {w_0, w_i} = eps_ijk p_j w_k
inline Series w0_w_component_rhs(const DeformedPoincare& d, int i) {
  Series rhs;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      int e = levi_civita3(i, j, k);
      if (!e) continue;
      rhs += (Series::generator("p" + std::to_string(j)) * d.wc[static_cast<std::size_t>(k)])
                 .scaled(Scalar::integer(e));
    }
  return rhs;
}

// ---------------------------------------------------------------------------
// Canonical (undeformed) structure on p_mu and the antisymmetric tensor
// j_mu_nu, eta = diag(-1,1,1,1):
//   {p_mu, p_nu} = 0
//   {p_mu, j_nu_rho} = eta_mu_rho p_nu - eta_mu_nu p_rho
//   {j_mu_nu, j_rho_sig} = eta_mu_rho j_nu_sig + eta_nu_sig j_mu_rho
//                        + eta_mu_sig j_rho_nu + eta_nu_rho j_sig_mu
// ---------------------------------------------------------------------------
inline long long eta_diag(int mu) { return mu == 0 ? -1 : 1; }

// Signed generator for j_mu_nu (antisymmetric, j stored for mu < nu).
inline Series j_component(int mu, int nu) {
  if (mu == nu) return Series::zero();
  if (mu > nu) return -j_component(nu, mu);
  return Series::generator("j" + std::to_string(mu) + std::to_string(nu));
}

inline PoissonStructure canonical_poincare_structure() {
  PoissonStructure cps;
  struct JP { int mu, nu; };
  std::vector<JP> js = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto eta = [](int a, int b) { return a == b ? eta_diag(a) : 0; };
  // {p_mu, j_nu_rho}
  for (int mu = 0; mu < 4; ++mu)
    for (auto [nu, rho] : js) {
      Series v;
      if (eta(mu, rho)) v += Series::generator("p" + std::to_string(nu)).scaled(Scalar::integer(eta(mu, rho)));
      if (eta(mu, nu)) v -= Series::generator("p" + std::to_string(rho)).scaled(Scalar::integer(eta(mu, nu)));
      cps.insert(gen_id("p" + std::to_string(mu)), gen_id("j" + std::to_string(nu) + std::to_string(rho)), v);
    }
  // {j_mu_nu, j_rho_sig}
  for (std::size_t a = 0; a < js.size(); ++a)
    for (std::size_t b = a + 1; b < js.size(); ++b) {
      auto [mu, nu] = js[a];
      auto [rho, sig] = js[b];
      Series v;
      if (eta(mu, rho)) v += j_component(nu, sig).scaled(Scalar::integer(eta(mu, rho)));
      if (eta(nu, sig)) v += j_component(mu, rho).scaled(Scalar::integer(eta(nu, sig)));
      if (eta(mu, sig)) v += j_component(rho, nu).scaled(Scalar::integer(eta(mu, sig)));
      if (eta(nu, rho)) v += j_component(sig, mu).scaled(Scalar::integer(eta(nu, rho)));
      cps.insert(gen_id("j" + std::to_string(mu) + std::to_string(nu)),
                 gen_id("j" + std::to_string(rho) + std::to_string(sig)), v);
    }
  return cps;
}

// exp(i l M) truncated at l^N for a matrix of l-free entries.
inline Mat exp_il_series(const Mat& m, int N) {
  Mat acc = Mat::identity(m.dim()).truncated(N);
  Mat pow = Mat::identity(m.dim());
  Scalar il = Scalar::i() * Scalar::lambda();
  Scalar fact = Scalar::one();
  Scalar ilk = Scalar::one();
  for (int k = 1; k < N; ++k) {
    pow = pow * m;
    ilk *= il;
    fact *= Scalar::integer(k);
    acc = acc + pow.scaled(ilk / fact).truncated(N);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Core verification suite
// ---------------------------------------------------------------------------
inline void add_core_checks(CheckRunner& run, const DeformedPoincare& d) {
  const PoissonStructure& ps = d.ps;

  // --- defining matrix relations, exact residuals ---
  struct RelCase {
    const char* id;
    const char* claim;
    RelationSpec spec;
    Mat A, B;
    std::optional<Mat> extra;
  };
  std::vector<RelCase> rels = {
      {"core.rel.pp", "momentum-momentum quadratic relation", rel_pp(), d.p, d.p, {}},
      {"core.rel.gg", "group-group quadratic relation", rel_gg(), d.gam, d.gam, {}},
      {"core.rel.ggb", "group vs conjugate-group relation", rel_ggb(), d.gam, d.gamb, {}},
      {"core.rel.pg", "momentum-group quadratic relation", rel_pg(), d.p, d.gam, {}},
      {"core.rel.gbgb", "conjugate-group pair relation", rel_gbgb(), d.gamb, d.gamb, {}},
      {"core.rel.gbg", "conjugate-group vs group relation", rel_gbg(), d.gamb, d.gam, {}},
      {"core.rel.pgb", "momentum vs conjugate-group relation", rel_pgb(), d.p, d.gamb, {}},
      {"core.rel.wg", "spin-vector vs group relation", rel_pg(), d.w, d.gam, {}},
      {"core.rel.wgb", "spin-vector vs conjugate-group relation", rel_pgb(), d.w, d.gamb, {}},
      {"core.rel.wp", "spin-vector vs momentum relation", rel_wp(), d.w, d.p, {}},
      {"core.rel.ww", "spin-vector pair relation with inhomogeneous term", rel_ww(), d.w, d.w,
       d.ww_extra()},
  };
  for (auto& rc : rels) {
    run.run(rc.id, rc.claim, [&](CheckResult& c) {
      Mat res = relation_residual(ps, rc.spec, rc.A, rc.B, rc.extra);
      c.status = res.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
      c.residual_summary = res.is_zero() ? "0" : res.str();
    });
  }

  // --- reality: conjugating a bracket equals the bracket of conjugates ---
  run.run("core.reality", "bracket table closes under complex conjugation", [&](CheckResult& c) {
    const auto& tab = GenTable::instance();
    auto gens = d.observable_gens();
    bool ok = true;
    for (std::size_t a = 0; a < gens.size() && ok; ++a)
      for (std::size_t b = a + 1; b < gens.size() && ok; ++b) {
        Series lhs = ps.bracket(Series::generator(gens[a]).star(),
                                Series::generator(gens[b]).star());
        Series rhs = ps.table(gens[a], gens[b]).star();
        ok = (lhs - rhs).is_zero();
        (void)tab;
      }
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = ok ? "0" : "conjugation mismatch";
  });

  // --- Jacobi identity over all generator triples (with repetition) ---
  run.run("core.jacobi", "Jacobi identity on all observable generator triples",
          [&](CheckResult& c) {
            auto gens = d.observable_gens();
            int n = static_cast<int>(gens.size());
            int checked = 0, bad = 0;
            for (int a = 0; a < n; ++a)
              for (int b = a; b < n; ++b)
                for (int cc = b; cc < n; ++cc) {
                  Series r = ps.jacobi(Series::generator(gens[a]), Series::generator(gens[b]),
                                       Series::generator(gens[cc]));
                  ++checked;
                  if (!r.is_zero()) ++bad;
                }
            c.status = bad == 0 ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary =
                std::to_string(checked) + " triples, " + std::to_string(bad) + " violations";
          });

  // --- component forms of the momentum sector ---
  run.run("core.comp.pp", "momentum component brackets match the epsilon form",
          [&](CheckResult& c) {
            bool ok = true;
            for (int i = 1; i <= 3 && ok; ++i) {
              for (int j = 1; j <= 3 && ok; ++j) {
                Series lhs = ps.table(gen_id("p" + std::to_string(i)), gen_id("p" + std::to_string(j)));
                ok = (lhs - momentum_component_rhs(i, j)).is_zero();
              }
              if (ok)
                ok = ps.table(gen_id("p" + std::to_string(i)), gen_id("p0")).is_zero();
            }
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "component mismatch";
          });

  // --- p0 is central within the momentum sector ---
  run.run("core.p0.central", "time-component momentum is central in the momentum sector",
          [&](CheckResult& c) {
            bool ok = true;
            for (int m = 0; m < 4; ++m)
              ok = ok && ps.bracket(Series::generator("p0"),
                                    Series::generator("p" + std::to_string(m))).is_zero();
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "nonzero bracket";
          });

  // --- spatial momentum square commutes inside the momentum sector ---
  run.run("core.psq.spatial", "spatial momentum square is central in the momentum sector",
          [&](CheckResult& c) {
            bool ok = true;
            for (int m = 0; m < 4; ++m)
              ok = ok && ps.bracket(d.spatial_p_sq(),
                                    Series::generator("p" + std::to_string(m))).is_zero();
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "nonzero bracket";
          });

  // --- Casimir suite ---
  auto casimir = [&](const char* id, const char* claim, const Series& cas) {
    run.run(id, claim, [&](CheckResult& c) {
      bool ok = true;
      for (int g : d.observable_gens())
        ok = ok && ps.bracket(cas, Series::generator(g)).is_zero();
      c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
      c.residual_summary = ok ? "0" : "nonzero bracket";
    });
  };
  casimir("core.casimir.detp", "momentum determinant is central", d.det_p());
  casimir("core.casimir.detgam", "group determinant is central", det2(d.gam));
  casimir("core.casimir.detgamb", "conjugate-group determinant is central", det2(d.gamb));
  casimir("core.casimir.detw", "spin-vector determinant is central", d.det_w());

  // --- determinant layout sanity ---
  run.run("core.layout.detp", "momentum determinant equals p0^2 - |p|^2", [&](CheckResult& c) {
    Series expect = Series::generator("p0") * Series::generator("p0") - d.spatial_p_sq();
    c.status = (d.det_p() - expect).is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = c.status == CheckStatus::Pass ? "0" : "layout mismatch";
  });

  // --- w component forms ---
  run.run("core.comp.wp", "spin-vector vs momentum component brackets", [&](CheckResult& c) {
    bool ok = true;
    for (int i = 1; i <= 3 && ok; ++i) {
      for (int j = 1; j <= 3 && ok; ++j)
        ok = (ps.bracket(d.wc[static_cast<std::size_t>(i)],
                         Series::generator("p" + std::to_string(j))) -
              w_p_component_rhs(d, i, j))
                 .is_zero();
      if (ok)
        ok = (ps.bracket(d.wc[static_cast<std::size_t>(i)], Series::generator("p0")) -
              w_p0_component_rhs(d, i))
                 .is_zero();
    }
    for (int mu = 0; mu < 4 && ok; ++mu)
      ok = ps.bracket(d.wc[0], Series::generator("p" + std::to_string(mu))).is_zero();
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = ok ? "0" : "component mismatch";
  });
  run.run("core.comp.ww", "spin-vector pair component brackets", [&](CheckResult& c) {
    bool ok = true;
    for (int i = 1; i <= 3 && ok; ++i)
      for (int j = 1; j <= 3 && ok; ++j)
        ok = (ps.bracket(d.wc[static_cast<std::size_t>(i)], d.wc[static_cast<std::size_t>(j)]) -
              w_w_component_rhs(d, i, j))
                 .is_zero();
    for (int i = 1; i <= 3 && ok; ++i)
      ok = (ps.bracket(d.wc[0], d.wc[static_cast<std::size_t>(i)]) - w0_w_component_rhs(d, i))
               .is_zero();
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = ok ? "0" : "component mismatch";
  });
  run.run("core.control.ww.transposed",
          "p<->w transposed variant of the w-w space rows fails, even modulo unimodularity",
          [&](CheckResult& c) {
            bool nonzero = false;
            for (int i = 1; i <= 3 && !nonzero; ++i)
              for (int j = 1; j <= 3 && !nonzero; ++j) {
                Series res = ps.bracket(d.wc[static_cast<std::size_t>(i)],
                                        d.wc[static_cast<std::size_t>(j)]) -
                             w_w_component_transposed(d, i, j);
                // clear the deformation-parameter denominator, then reduce
                // modulo det(gam) = det(gamb) = 1; a nonzero normal form means
                // the transposed variant fails on the unimodular surface too
                nonzero = !reduce_unimodular(res.scaled(Scalar::lambda()).p).is_zero();
              }
            c.status = nonzero ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.residual_summary = nonzero ? "nonzero (as required)" : "unexpectedly zero";
          });
  run.run("core.limit.ww", "w-w component form reduces to eps_ijk (w0 p_k - p0 w_k) at lambda = 0",
          [&](CheckResult& c) {
            // Form-level statement: with free symbols in place of the w
            // components, setting lambda = 0 drops exactly the 2 l (w0+w3) w_k
            // deformation term.
            std::array<Series, 4> u;
            for (int m = 0; m < 4; ++m)
              u[static_cast<std::size_t>(m)] = Series::generator("x" + std::to_string(m));
            bool ok = true;
            for (int i = 1; i <= 3 && ok; ++i)
              for (int j = 1; j <= 3 && ok; ++j) {
                Series undeformed;
                for (int k = 1; k <= 3; ++k) {
                  int e = levi_civita3(i, j, k);
                  if (!e) continue;
                  Series pk = Series::generator("p" + std::to_string(k));
                  undeformed += (u[0] * pk -
                                 Series::generator("p0") * u[static_cast<std::size_t>(k)])
                                    .scaled(Scalar::integer(e));
                }
                ok = (w_w_component_rhs_from(u, i, j).set_lambda_zero() - undeformed).is_zero();
              }
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "order-zero remainder";
          });

  // --- commuting set ---
  run.run("core.commuting", "p0, p3, w0, w.p and both Casimirs mutually commute",
          [&](CheckResult& c) {
            std::vector<Series> set = {Series::generator("p0"), Series::generator("p3"), d.wc[0],
                                       d.w_dot_p(), d.det_p(), d.det_w()};
            int bad = 0;
            for (std::size_t a = 0; a < set.size(); ++a)
              for (std::size_t b = a + 1; b < set.size(); ++b)
                if (!ps.bracket(set[a], set[b]).is_zero()) ++bad;
            c.status = bad == 0 ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = "15 pairs, " + std::to_string(bad) + " violations";
          });

  // --- classical (undeformed) limit ---
  run.run("core.limit.table", "all deformed brackets vanish at l = 0", [&](CheckResult& c) {
    bool ok = true;
    for (const auto& [key, v] : ps.raw()) ok = ok && v.set_lambda_zero().is_zero();
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = ok ? "0" : "nonzero classical bracket";
  });

  PoissonStructure cps = canonical_poincare_structure();
  Mat jm = rotation_matrix_from_j();
  run.run("core.limit.jj", "undeformed rotation-sector matrix bracket", [&](CheckResult& c) {
    Mat lhs = cps.bracket_matrix(jm, jm);
    Mat rhs = (flip_pi() * (slot2(jm) - slot1(jm))).scaled(Scalar::integer(2));
    c.status = (lhs - rhs).is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = c.status == CheckStatus::Pass ? "0" : (lhs - rhs).str();
  });
  run.run("core.limit.jjdag", "rotation matrix commutes with its conjugate", [&](CheckResult& c) {
    Mat lhs = cps.bracket_matrix(jm, jm.dagger());
    c.status = lhs.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = lhs.is_zero() ? "0" : lhs.str();
  });
  run.run("core.limit.pj", "undeformed momentum-rotation matrix bracket", [&](CheckResult& c) {
    Mat lhs = cps.bracket_matrix(p_tilde_matrix(), jm);
    Mat rhs = slot1(p_tilde_matrix()) *
              (flip_pi().scaled(Scalar::integer(2)) - Mat::identity(4));
    c.status = (lhs - rhs).is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = c.status == CheckStatus::Pass ? "0" : (lhs - rhs).str();
  });
  run.run("core.limit.pp", "undeformed momenta commute", [&](CheckResult& c) {
    Mat lhs = cps.bracket_matrix(p_tilde_matrix(), p_tilde_matrix());
    c.status = lhs.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = lhs.is_zero() ? "0" : lhs.str();
  });

  // exponential correspondence: group element as exp(i l j) in the canonical
  // structure reproduces the deformed relations to leading orders
  const int N = 5;
  Mat gser = exp_il_series(jm, N);
  Mat gbser = exp_il_series(jm.dagger(), N);
  run.run("core.limit.series.gg", "exp series satisfies the group-group relation mod l^3",
          [&](CheckResult& c) {
            Mat res = (cps.bracket_matrix(gser, gser) - relation_rhs(rel_gg(), gser, gser))
                          .truncated(3);
            c.status = res.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "l^3";
            c.residual_summary = res.is_zero() ? "0" : res.str();
          });
  run.run("core.limit.series.ggb", "exp series satisfies the mixed group relation mod l^3",
          [&](CheckResult& c) {
            Mat res = (cps.bracket_matrix(gser, gbser) - relation_rhs(rel_ggb(), gser, gbser))
                          .truncated(3);
            c.status = res.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "l^3";
            c.residual_summary = res.is_zero() ? "0" : res.str();
          });
  run.run("core.limit.series.pg", "exp series satisfies the momentum-group relation mod l^2",
          [&](CheckResult& c) {
            Mat pm = p_tilde_matrix();
            Mat res = (cps.bracket_matrix(pm, gser) - relation_rhs(rel_pg(), pm, gser))
                          .truncated(2);
            c.status = res.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
            c.order = "l^2";
            c.residual_summary = res.is_zero() ? "0" : res.str();
          });

  // Pauli-Lubanski classical limit: w -> (i/2)(p j - j^dag p) at l = 0
  run.run("core.limit.w", "spin vector reduces to the standard Pauli-Lubanski form",
          [&](CheckResult& c) {
            Mat pm = p_tilde_matrix();
            Mat raw = adjugate2(gbser) * pm * gser - pm;
            Mat wser = raw.map([](const Series& s) { return divide_by_lambda(s, 2); });
            Mat expect = (pm * jm - jm.dagger() * pm).scaled(Scalar::i() * Scalar::frac(1, 2));
            Mat res = wser.set_lambda_zero() - expect;
            c.status = res.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = res.is_zero() ? "0" : res.str();
          });

  // --- mutation controls: the verification must be able to fail ---
  run.run("core.control.pattern", "momentum relation with swapped right-action slots fails",
          [&](CheckResult& c) {
            RelationSpec wrong{RSel::R, RSel::RDag, RSel::R, RSel::RDag};
            Mat res = relation_residual(ps, wrong, d.p, d.p);
            c.status = !res.is_zero() ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.residual_summary = !res.is_zero() ? "nonzero (as required)" : "0 (control collapsed)";
          });
  run.run("core.control.jacobi", "a perturbed bracket table violates Jacobi", [&](CheckResult& c) {
    PoissonStructure bad;
    for (const auto& [key, v] : ps.raw()) {
      int a = static_cast<int>(key / kMaxGenerators);
      int b = static_cast<int>(key % kMaxGenerators);
      if (a == gen_id("p1") && b == gen_id("p2"))
        bad.insert(a, b, v + Series::generator("p1").scaled(Scalar::lambda(2)));
      else
        bad.insert(a, b, v);
    }
    bool violated = false;
    auto gens = d.observable_gens();
    for (std::size_t x = 0; x < gens.size() && !violated; ++x)
      for (std::size_t y = x; y < gens.size() && !violated; ++y)
        for (std::size_t z = y; z < gens.size() && !violated; ++z)
          violated = !bad.jacobi(Series::generator(gens[x]), Series::generator(gens[y]),
                                 Series::generator(gens[z]))
                          .is_zero();
    c.status = violated ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
    c.residual_summary = violated ? "nonzero (as required)" : "0 (control collapsed)";
  });
}

inline VerificationReport run_core_suite(int order, uint64_t seed) {
  VerificationReport rep;
  rep.suite = "core";
  rep.order = order;
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  CheckRunner run(rep);
  add_core_checks(run, DeformedPoincare::instance());
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace poincare_deform
