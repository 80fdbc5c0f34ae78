#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>

#include "poincare_deform/spin.hpp"

using namespace poincare_deform;

namespace {
const char* kCells[4] = {"11", "12", "21", "22"};

const SpinRealization& spin4() {
  static const SpinlessRealization base(4);
  static const SpinRealization s(base);
  return s;
}
}  // namespace

TEST_CASE("Spin block repeats the abstract group-element brackets verbatim", "[spin]") {
  const auto& s = spin4();

  // The gamma_s rows are installed from the same relation pattern as the
  // abstract gamma rows of the core algebra, so the fundamental table entries
  // must coincide under a pure renaming of the generators.
  std::map<int, Series> rename;
  for (auto c : kCells)
    rename[gen_id(std::string("gam") + c)] = Series::generator(std::string("gs") + c);

  const auto& core = DeformedPoincare::instance().ps;
  for (auto ca : kCells)
    for (auto cb : kCells) {
      Series want = substitute(core.table(gen_id(std::string("gam") + ca),
                                          gen_id(std::string("gam") + cb)),
                               rename);
      Series got = s.ps.table(gen_id(std::string("gs") + ca), gen_id(std::string("gs") + cb));
      CHECK(got == want);
    }
}

TEST_CASE("Spin decouples from everything in the canonical limit", "[spin]") {
  const auto& s = spin4();

  // Every bracket that touches the spin block carries at least one power of
  // the deformation parameter, so the l = 0 theory has commuting spin.
  for (auto cb : kCells) {
    Series b = Series::generator(std::string("gs") + cb);
    for (auto ca : kCells)
      CHECK(s.ps.bracket(Series::generator(std::string("gs") + ca), b)
                .set_lambda_zero()
                .is_zero());
    for (int m = 0; m < 4; ++m) {
      CHECK(s.ps.bracket(Series::generator("p" + std::to_string(m)), b)
                .set_lambda_zero()
                .is_zero());
      CHECK(s.ps.bracket(Series::generator("x" + std::to_string(m)), b)
                .set_lambda_zero()
                .is_zero());
    }
  }
}

TEST_CASE("Coordinate-momentum product brackets with spin in the uniform pattern", "[spin]") {
  const auto& s = spin4();

  // n = 1 instance of the monomial statement, on the generic engine: an
  // engine-independent witness for the packed-run suite check.
  Mat xp = s.base.x * s.base.p;
  CHECK(relation_residual(s.ps, rel_ggs(), xp, s.gs).is_zero());

  // determinant of the spin block is central on the generic engine as well
  Series detgs = det2(s.gs);
  CHECK(s.ps.bracket(detgs, Series::generator("p0")).is_zero());
  CHECK(s.ps.bracket(detgs, Series::generator("x2")).is_zero());
  CHECK(s.ps.bracket(detgs, Series::generator("gs12")).is_zero());
}

TEST_CASE("Packed kernel matches the generic engine on the spin sector", "[spin]") {
  const auto& s = spin4();

  Mat generic = s.ps.bracket_matrix(s.base.p, s.gs);
  FlatMat packed = flat_bracket_matrix(s.graded(), s.flat_p, s.flat_gs);
  Mat back = flat_to_matrix(packed, s.lanes);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(back.at(i, j) == generic.at(i, j));
      CHECK(back.at(i, j).ord == generic.at(i, j).ord);
    }
}

TEST_CASE("Full spin verification suite is green", "[spin][suite]") {
  VerificationReport rep = run_spin_suite(4, 12345);
  INFO(rep.to_text());
  CHECK(rep.all_ok());
  CHECK(rep.checks.size() == 20);

  auto status_of = [&](const std::string& id) {
    for (const auto& c : rep.checks)
      if (c.id == id) return c.status;
    throw std::runtime_error("missing check " + id);
  };
  CHECK(status_of("spin.control.orbit") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("spin.control.momentum") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("spin.control.position") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("spin.wspin.detw") == CheckStatus::ExpectedNonzero);
  CHECK(status_of("spin.rel.gsgs") == CheckStatus::Pass);

  // the substitution point moves with the seed; the certificate must not
  VerificationReport other = run_spin_suite(4, 777);
  INFO(other.to_text());
  CHECK(other.all_ok());
}
