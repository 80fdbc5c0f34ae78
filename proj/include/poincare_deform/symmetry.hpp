#pragma once

// The Poisson-Lie symmetry sector: the pair (g, gbar) of 2x2 group matrices
// with commutator-form brackets
//   {g1, g2}   = [r, g1 g2]        {g1, gb2} = [r, g1 gb2]
//   {gb1, g2}  = [rdag, gb1 g2]    {gb1, gb2} = [r, gb1 gb2]
// plus the multiplicativity and covariance verifiers: products of independent
// copies stay inside the structure, and the dressed observables
//   p -> gb p adj(g),  gamma -> g gamma adj(g),  gammabar -> gb gammabar adj(gb),
//   w -> gb w adj(g)
// satisfy the defining observable relations identically.

#include "poincare_deform/deformed_poincare.hpp"

namespace poincare_deform {

struct SymmetrySector {
  PoissonStructure ps;
  Mat g, gb;

  SymmetrySector() : g(group_matrix("g")), gb(group_matrix("gb")) {
    ExtractionSpec eg = extraction_group("g");
    ExtractionSpec egb = extraction_group("gb");
    install_commutator_relation(ps, eg, eg, RSel::R);
    install_commutator_relation(ps, eg, egb, RSel::R);
    install_commutator_relation(ps, egb, egb, RSel::R);
    // {gb1, g2} = [rdag, gb1 g2] must agree with the antisymmetry image of
    // {g1, gb2}; installing it is a consistency cross-check.
    install_commutator_relation(ps, egb, eg, RSel::RDag);
  }

  static const SymmetrySector& instance() {
    static const SymmetrySector s;
    return s;
  }

  std::vector<int> gens() const {
    std::vector<int> ids = entry_gen_ids("g");
    for (int id : entry_gen_ids("gb")) ids.push_back(id);
    return ids;
  }
};

// Disjoint union of two bracket tables: cross brackets are zero, which the
// table encodes by simply having no entry.
inline PoissonStructure merged_structure(const PoissonStructure& a, const PoissonStructure& b) {
  PoissonStructure m;
  for (const auto& [key, v] : a.raw()) m.insert(static_cast<int>(key / 64), static_cast<int>(key % 64), v);
  for (const auto& [key, v] : b.raw()) m.insert(static_cast<int>(key / 64), static_cast<int>(key % 64), v);
  return m;
}

// Single-family table {a1, a2} = [rho, a1 a2] on one group-matrix prefix;
// used to build independent copies for the multiplicativity tests.
inline PoissonStructure commutator_copy_structure(const std::string& prefix, RSel rho) {
  PoissonStructure ps;
  ExtractionSpec e = extraction_group(prefix);
  install_commutator_relation(ps, e, e, rho);
  return ps;
}

// Single-family table from a coefficient-pattern relation (used for the
// required-failure multiplicativity control on the gamma-type relation).
inline PoissonStructure pattern_copy_structure(const std::string& prefix, const RelationSpec& s) {
  PoissonStructure ps;
  ExtractionSpec e = extraction_group(prefix);
  install_relation(ps, e, e, s);
  return ps;
}

// Observables and symmetries together, with zero cross brackets ("the
// symmetries have zero Poisson brackets with the classical observables").
inline PoissonStructure observable_symmetry_product() {
  return merged_structure(DeformedPoincare::instance().ps, SymmetrySector::instance().ps);
}

inline void add_symmetry_checks(CheckRunner& run, const SymmetrySector& s) {
  const PoissonStructure& ps = s.ps;

  // --- the four defining commutator relations ---
  auto rel = [&](const char* id, const char* claim, RSel rho, const Mat& A, const Mat& B) {
    run.run(id, claim, [&](CheckResult& c) {
      bool ok = commutator_relation_residual(ps, rho, A, B).is_zero();
      c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
      c.residual_summary = ok ? "0" : "nonzero residual";
    });
  };
  rel("sym.rel.gg", "left-copy pair bracket is a commutator with the r-matrix", RSel::R, s.g,
      s.g);
  rel("sym.rel.ggb", "mixed pair bracket is a commutator with the r-matrix", RSel::R, s.g, s.gb);
  rel("sym.rel.gbgb", "conjugate-copy pair bracket is a commutator with the r-matrix", RSel::R,
      s.gb, s.gb);
  rel("sym.rel.gbg", "swapped mixed pair bracket uses the conjugated r-matrix", RSel::RDag, s.gb,
      s.g);

  // --- hermitean-conjugation closure of the table ---
  run.run("sym.reality", "bracket table is closed under hermitean conjugation",
          [&](CheckResult& c) {
            bool ok = true;
            auto ids = s.gens();
            for (std::size_t a = 0; a < ids.size() && ok; ++a)
              for (std::size_t b = a; b < ids.size() && ok; ++b) {
                Series lhs = ps.table(ids[a], ids[b]).star();
                Series rhs = ps.bracket(Series::generator(ids[a]).star(),
                                        Series::generator(ids[b]).star());
                ok = (lhs - rhs).is_zero();
              }
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "star mismatch";
          });

  // --- Jacobi identity over every generator multiset ---
  run.run("sym.jacobi", "Jacobi identity holds for all symmetry generator triples",
          [&](CheckResult& c) {
            auto ids = s.gens();
            int bad = 0, total = 0;
            for (std::size_t a = 0; a < ids.size(); ++a)
              for (std::size_t b = a; b < ids.size(); ++b)
                for (std::size_t e = b; e < ids.size(); ++e) {
                  ++total;
                  if (!ps.jacobi(Series::generator(ids[a]), Series::generator(ids[b]),
                                 Series::generator(ids[e]))
                           .is_zero())
                    ++bad;
                }
            c.status = bad == 0 ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary =
                std::to_string(total - bad) + "/" + std::to_string(total) + " triples zero";
          });

  // --- determinants are Casimirs ---
  run.run("sym.casimir.det", "both group determinants are central", [&](CheckResult& c) {
    bool ok = true;
    for (const Series& cas : {det2(s.g), det2(s.gb)})
      for (int id : s.gens()) ok = ok && ps.bracket(cas, Series::generator(id)).is_zero();
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.residual_summary = ok ? "0" : "nonzero bracket";
  });

  // --- r-replacement identities ---
  run.run("sym.replace.r", "r and its conjugate act identically on same-family slot products",
          [&](CheckResult& c) {
            Mat rdiff = r_matrix() - r_matrix_dagger();
            Mat proj = flip_pi().scaled(Scalar::integer(2)) - Mat::identity(4);
            bool ok = commutator(rdiff, slot1(s.g) * slot2(s.g)).is_zero() &&
                      commutator(proj, slot1(s.g) * slot2(s.g)).is_zero() &&
                      commutator(rdiff, slot1(s.gb) * slot2(s.gb)).is_zero() &&
                      commutator(proj, slot1(s.gb) * slot2(s.gb)).is_zero();
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "nonzero commutator";
          });
  run.run("sym.replace.control", "the replacement fails on mixed-family slot products",
          [&](CheckResult& c) {
            Mat rdiff = r_matrix() - r_matrix_dagger();
            bool nonzero = !commutator(rdiff, slot1(s.g) * slot2(s.gb)).is_zero();
            c.status = nonzero ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.residual_summary = nonzero ? "nonzero (as required)" : "unexpectedly zero";
          });

  // --- lambda -> 0 degeneration ---
  run.run("sym.limit.table", "all symmetry brackets vanish in the undeformed limit",
          [&](CheckResult& c) {
            bool ok = true;
            for (const auto& [key, v] : ps.raw()) {
              ok = ok && v.set_lambda_zero().is_zero();
              if (!v.is_zero()) ok = ok && v.valuation() >= 1;
            }
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "order-zero entry";
          });

  // --- multiplicativity: the product of independent copies stays in the
  //     structure (Poisson-Lie group multiplication is a Poisson map) ---
  run.run("sym.mult.product", "product of independent left copies satisfies the pair relation",
          [&](CheckResult& c) {
            PoissonStructure prod = merged_structure(commutator_copy_structure("g", RSel::R),
                                                     commutator_copy_structure("gp", RSel::R));
            Mat gg = s.g * group_matrix("gp");
            c.status = commutator_relation_residual(prod, RSel::R, gg, gg).is_zero()
                           ? CheckStatus::Pass
                           : CheckStatus::Fail;
            c.residual_summary = c.status == CheckStatus::Pass ? "0" : "nonzero residual";
          });
  run.run("sym.mult.identity", "product with the identity element reduces to the pair relation",
          [&](CheckResult& c) {
            PoissonStructure prod = commutator_copy_structure("g", RSel::R);
            Mat gg = s.g * Mat::identity(2);
            c.status = commutator_relation_residual(prod, RSel::R, gg, gg).is_zero()
                           ? CheckStatus::Pass
                           : CheckStatus::Fail;
            c.residual_summary = c.status == CheckStatus::Pass ? "0" : "nonzero residual";
          });
  run.run("sym.mult.control",
          "zero-cross product of gamma-type copies violates the gamma pair relation",
          [&](CheckResult& c) {
            // The observable gamma relation is not multiplicative: two
            // independent realizations with zero cross brackets do NOT
            // compose, unlike the symmetry relation above.
            PoissonStructure prod = merged_structure(pattern_copy_structure("gam", rel_gg()),
                                                     pattern_copy_structure("gs", rel_gg()));
            Mat prodm = group_matrix("gam") * group_matrix("gs");
            bool nonzero = !relation_residual(prod, rel_gg(), prodm, prodm).is_zero();
            c.status = nonzero ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.residual_summary = nonzero ? "nonzero (as required)" : "unexpectedly zero";
          });
}

// Covariance: dressed observables satisfy the defining relations in the
// zero-cross product of the observable and symmetry structures.
inline void add_covariance_checks(CheckRunner& run, const DeformedPoincare& d,
                                  const SymmetrySector& s) {
  const PoissonStructure prod = observable_symmetry_product();
  Mat P = s.gb * d.p * adjugate2(s.g);
  Mat G = s.g * d.gam * adjugate2(s.g);
  Mat Gb = s.gb * d.gamb * adjugate2(s.gb);
  Mat W = s.gb * d.w * adjugate2(s.g);

  auto rel = [&](const char* id, const char* claim, const RelationSpec& spec, const Mat& A,
                 const Mat& B, const std::optional<Mat>& extra = std::nullopt) {
    run.run(id, claim, [&](CheckResult& c) {
      bool ok = relation_residual(prod, spec, A, B, extra).is_zero();
      c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
      c.residual_summary = ok ? "0" : "nonzero residual";
    });
  };
  rel("cov.pp", "dressed momentum satisfies the momentum pair relation", rel_pp(), P, P);
  rel("cov.gg", "dressed group matrix satisfies the gamma pair relation", rel_gg(), G, G);
  rel("cov.gbgb", "dressed conjugate matrix satisfies its pair relation", rel_gbgb(), Gb, Gb);
  rel("cov.ggb", "dressed mixed pair satisfies its relation", rel_ggb(), G, Gb);
  rel("cov.gbg", "dressed swapped mixed pair satisfies its relation", rel_gbg(), Gb, G);
  rel("cov.pg", "dressed momentum-gamma pair satisfies its relation", rel_pg(), P, G);
  rel("cov.pgb", "dressed momentum-conjugate pair satisfies its relation", rel_pgb(), P, Gb);
  rel("cov.wg", "dressed spin-vector vs gamma relation is preserved", rel_pg(), W, G);
  rel("cov.wgb", "dressed spin-vector vs conjugate relation is preserved", rel_pgb(), W, Gb);
  rel("cov.wp", "dressed spin-vector vs momentum relation is preserved", rel_wp(), W, P);
  run.run("cov.ww", "dressed spin-vector pair relation including its extra term",
          [&](CheckResult& c) {
            Mat extra = (flip_pi() * (slot1(W) * slot2(P) - slot2(W) * slot1(P)))
                            .scaled(-Scalar::i());
            bool ok = relation_residual(prod, rel_ww(), W, W, extra).is_zero();
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "nonzero residual";
          });

  run.run("cov.identity", "dressing by the identity element leaves observables unchanged",
          [&](CheckResult& c) {
            Mat I = Mat::identity(2);
            bool ok = (I * d.p * adjugate2(I)) == d.p && (I * d.gam * adjugate2(I)) == d.gam;
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "0" : "mismatch";
          });

  // Lemma behind the adjugate-for-inverse convention: relation residuals are
  // bilinear in their two slots, so scaling by a central determinant factor
  // scales the residual by the central square; a zero adjugate-form residual
  // is therefore equivalent to a zero inverse-form residual.
  run.run("cov.lemma.scaling", "relation residuals scale quadratically by central det factors",
          [&](CheckResult& c) {
            RelationSpec mutated{RSel::R, RSel::RDag, RSel::R, RSel::RDag};
            Mat base = relation_residual(prod, mutated, d.p, d.p);
            Series cas = det2(s.g);
            Mat scaled_args = relation_residual(prod, mutated, d.p.scaled(cas), d.p.scaled(cas));
            Mat expect = base.map([&](const Series& v) { return v * cas * cas; });
            bool ok = !base.is_zero() && scaled_args == expect;
            // centrality of the factor in the product structure is what makes
            // the bilinear pull-out valid; assert it explicitly
            for (int id : d.observable_gens())
              ok = ok && prod.bracket(cas, Series::generator(id)).is_zero();
            c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            c.residual_summary = ok ? "scales as det^2" : "scaling violated";
          });
}

inline VerificationReport run_symmetry_suite(int order, unsigned seed) {
  VerificationReport rep;
  rep.suite = "symmetry";
  rep.order = order;
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  CheckRunner run(rep);
  const SymmetrySector& s = SymmetrySector::instance();
  add_symmetry_checks(run, s);
  add_covariance_checks(run, DeformedPoincare::instance(), s);
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace poincare_deform
