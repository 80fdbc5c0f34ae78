#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>

#include "poincare_deform/deformed_poincare.hpp"
#include "poincare_deform/expr.hpp"

namespace pd = poincare_deform;

namespace {

// Symbol table matching what the command-line bracket tool exposes for the
// core algebra: the momenta, both group blocks, and the derived vector w.
const std::map<std::string, pd::Series>& core_names() {
  static const std::map<std::string, pd::Series> names = [] {
    std::map<std::string, pd::Series> m;
    for (int mu = 0; mu < 4; ++mu) {
      m["p" + std::to_string(mu)] = pd::Series::generator("p" + std::to_string(mu));
    }
    for (const char* cell : {"11", "12", "21", "22"}) {
      m[std::string("gam") + cell] = pd::Series::generator(std::string("gam") + cell);
      m[std::string("gamb") + cell] = pd::Series::generator(std::string("gamb") + cell);
    }
    const auto& d = pd::DeformedPoincare::instance();
    for (int mu = 0; mu < 4; ++mu) m["w" + std::to_string(mu)] = d.wc[mu];
    return m;
  }();
  return names;
}

pd::Series parse(const std::string& src) { return pd::parse_expression(src, core_names()); }

}  // namespace

TEST_CASE("Expression literals and operators build exact values") {
  CHECK(parse("3/4") == pd::Series::constant(pd::Scalar::frac(3, 4)));
  CHECK(parse("i*i") == pd::Series::integer(-1));
  CHECK(parse("l^3") ==
        pd::Series::constant(pd::Scalar::lambda() * pd::Scalar::lambda() * pd::Scalar::lambda()));
  CHECK(parse("1/l*l") == pd::Series::integer(1));
  CHECK(parse("-+-2") == pd::Series::integer(2));
  CHECK(parse("p0^0") == pd::Series::integer(1));
  CHECK(parse(" 2 * ( p0 + p3 ) ") ==
        (pd::Series::generator("p0") + pd::Series::generator("p3")).scaled(pd::Scalar::integer(2)));
  CHECK(parse("p0 - p0").is_zero());
  CHECK(parse("h*p1") == pd::Series::generator("p1").scaled(pd::Scalar::hbar()));
}

TEST_CASE("Parser round-trips canonical printing") {
  const auto& d = pd::DeformedPoincare::instance();
  const pd::Series samples[] = {
      d.ps.bracket(pd::Series::generator("p1"), pd::Series::generator("p2")),
      d.wc[0],
      d.wc[2],
      pd::Series::constant(pd::Scalar::frac(-3, 4)),
      pd::Series::constant((pd::Scalar::integer(1) + pd::Scalar::integer(2) * pd::Scalar::i()) *
                           (pd::Scalar::one() / pd::Scalar::integer(3))),
      pd::Series::constant(pd::Scalar::one() / pd::Scalar::lambda()),
      pd::Series::generator("gam11") * pd::Series::generator("gam11") *
          pd::Series::constant(pd::Scalar::frac(1, 2)),
      pd::Series::generator("p0") - pd::Series::generator("p3").scaled(pd::Scalar::frac(2, 3)) +
          pd::Series::generator("p1").scaled(pd::Scalar::i() * pd::Scalar::frac(1, 2)),
      pd::Series::integer(0),
  };
  for (const pd::Series& s : samples) {
    INFO("printed form: " << s.str());
    CHECK(parse(s.str()) == s);
  }
}

TEST_CASE("Bracket contract examples hold as polynomials") {
  const auto& d = pd::DeformedPoincare::instance();
  CHECK(d.ps.bracket(parse("p1"), parse("p2")) == parse("2*l*p3*(p0+p3)"));
  CHECK(d.ps.bracket(parse("p0"), parse("p0")).is_zero());
  CHECK(d.ps.bracket(parse("w0"), parse("p2")).is_zero());
  // Linearity through parsed composites.
  CHECK(d.ps.bracket(parse("p1 + 2*p2"), parse("gam11")) ==
        d.ps.bracket(parse("p1"), parse("gam11")) +
            d.ps.bracket(parse("p2"), parse("gam11")).scaled(pd::Scalar::integer(2)));
}

TEST_CASE("Malformed expressions are rejected") {
  CHECK_THROWS_AS(parse("q5"), pd::ExprError);
  CHECK_THROWS_AS(parse("p0 p1"), pd::ExprError);
  CHECK_THROWS_AS(parse("(p0"), pd::ExprError);
  CHECK_THROWS_AS(parse("p0/p1"), pd::ExprError);
  CHECK_THROWS_AS(parse("1/0"), pd::ExprError);
  CHECK_THROWS_AS(parse("1/(l-l)"), pd::ExprError);
  CHECK_THROWS_AS(parse("p0^65"), pd::ExprError);
  CHECK_THROWS_AS(parse("p0^"), pd::ExprError);
  CHECK_THROWS_AS(parse(""), pd::ExprError);
  CHECK_THROWS_AS(parse("2 $ 2"), pd::ExprError);
}
