#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "poincare_deform/quantum.hpp"

using namespace poincare_deform;

namespace {
Scalar coeff_of(const nc::NCPoly& p, const nc::Word& w) {
  auto it = p.t.find(w);
  return it == p.t.end() ? Scalar::zero() : it->second;
}
}  // namespace

TEST_CASE("Word coefficients truncate at second order in hbar", "[quantum]") {
  Scalar h = Scalar::hbar();
  Scalar s = Scalar::one() + h + h * h;  // the h^2 layer must be dropped
  CHECK((nc::drop_hbar2(s * s) - (Scalar::one() + h * Scalar::integer(2))).is_zero());

  auto [c0, c1] = nc::split_hbar(Scalar::lambda() + h * Scalar::integer(3));
  CHECK((c0 - Scalar::lambda()).is_zero());
  CHECK((c1 - h * Scalar::integer(3)).is_zero());

  // hbar in a denominator has no meaning in this calculus
  CHECK_THROWS_AS(nc::split_hbar(Scalar::one() / h), std::logic_error);
}

TEST_CASE("Normal ordering realizes the first-order commutator rule", "[quantum]") {
  const PoissonStructure& ps = quantum_classical_table();
  int gm = gen_id("gam11"), p0 = gen_id("p0");

  // words for gam11*p0 and p0*gam11 (generator ids ascending: p0 < gam11)
  nc::NCPoly gp, pg;
  gp.add({static_cast<uint8_t>(gm), static_cast<uint8_t>(p0)}, Scalar::one());
  pg.add({static_cast<uint8_t>(p0), static_cast<uint8_t>(gm)}, Scalar::one());

  nc::NCPoly diff = nc::normal_form(gp - pg, ps);

  // the commutator of two generator symbols is i hbar times their classical
  // bracket, which for this pair is a nonzero deformation term of order l
  Series br = ps.table(gm, p0);
  nc::NCPoly expected;
  for (const auto& [m, c] : br.p.terms())
    expected.add(nc::word_of_mono(m), c * Scalar::i() * Scalar::hbar());
  CHECK((diff - expected).is_zero());
  CHECK_FALSE(diff.is_zero());
}

TEST_CASE("Normal ordering is idempotent and kills reordered products", "[quantum]") {
  const PoissonStructure& ps = quantum_classical_table();
  int p0 = gen_id("p0"), g11 = gen_id("gam11"), g12 = gen_id("gam12");

  nc::NCPoly w;
  w.add({static_cast<uint8_t>(g12), static_cast<uint8_t>(g11), static_cast<uint8_t>(p0)},
        Scalar::one());
  nc::NCPoly nf = nc::normal_form(w, ps);
  CHECK((nc::normal_form(nf, ps) - nf).is_zero());

  // the fully ordered word keeps unit coefficient at order hbar^0; the
  // emissions may feed the same word at order hbar^1 because the group
  // brackets are quadratic in the group entries themselves
  nc::Word sorted = {static_cast<uint8_t>(p0), static_cast<uint8_t>(g11),
                     static_cast<uint8_t>(g12)};
  auto [c0, c1] = nc::split_hbar(coeff_of(nf, sorted));
  CHECK((c0 - Scalar::one()).is_zero());
}

TEST_CASE("Quantum R-matrix collapses to the classical identity data", "[quantum]") {
  QuantumR q;
  // R21 is the slot flip of R12 by construction, and its O(hbar) tail is the
  // hermitean-conjugate r-matrix.
  CHECK((q.R21m - (Mat::identity(4) - q.rdag.scaled(-(Scalar::i() * Scalar::hbar())))).is_zero());
  CHECK((q.R12m.dagger() - q.R21m).is_zero());
  // classical limit: every diagonal entry is 1 + O(hbar), off-diagonals are O(hbar)
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto [c0, c1] = nc::split_hbar(q.R12m.at(i, j).p.constant_coeff());
      if (i == j)
        CHECK(c0.str() == Scalar::one().str());
      else
        CHECK(c0.is_zero());
    }
}

TEST_CASE("Each exchange relation reduces to its classical bracket", "[quantum]") {
  QuantumR q;
  const PoissonStructure& ps = quantum_classical_table();
  for (auto which :
       {QuantumRelation::RTT, QuantumRelation::RTTbar, QuantumRelation::RTbarTbar,
        QuantumRelation::RPRP, QuantumRelation::RGRG, QuantumRelation::RGRGbar,
        QuantumRelation::RPRG, QuantumRelation::RPRGbar}) {
    nc::NCMat res = nc::normal_form(quantum_relation_difference(q, which), ps);
    INFO("relation enum value " << static_cast<int>(which));
    CHECK(res.is_zero());
  }
}

TEST_CASE("Mispaired exchange shapes leave a first-order residual", "[quantum]") {
  QuantumR q;
  const PoissonStructure& ps = quantum_classical_table();
  // reflection-equation shape imposed on the group-element pair
  nc::NCMat G1 = nc::slot1(nc::from_matrix(group_matrix("gam")));
  nc::NCMat G2 = nc::slot2(nc::from_matrix(group_matrix("gam")));
  nc::NCMat diff = q.R12 * G1 * q.R12i * G2 - G2 * q.R21i * G1 * q.R21;
  CHECK_FALSE(nc::normal_form(diff, ps).is_zero());
}

TEST_CASE("Full quantum verification suite is green", "[quantum]") {
  auto rep = run_quantum_suite(4, 20260818);
  CHECK(rep.all_ok());
  CHECK(rep.checks.size() == 19);

  auto status_of = [&](const std::string& id) {
    for (const auto& c : rep.checks)
      if (c.id == id) return c.status;
    FAIL("missing check " + id);
    return CheckStatus::Fail;
  };
  CHECK(status_of("quantum.cybe.ordinary") == CheckStatus::Pass);
  CHECK(status_of("quantum.cybe.modified") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("quantum.control.mispair") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("quantum.control.swapped") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("quantum.reduce.rprp") == CheckStatus::Pass);
  CHECK(status_of("quantum.covariance.rprp") == CheckStatus::Pass);
}
