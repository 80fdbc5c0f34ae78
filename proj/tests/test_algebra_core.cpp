#include <catch2/catch_amalgamated.hpp>

#include "poincare_deform/layouts.hpp"
#include "poincare_deform/rmatrix.hpp"

using namespace poincare_deform;

namespace {

Scalar L() { return Scalar::lambda(); }
Scalar I() { return Scalar::i(); }

}  // namespace

TEST_CASE("Gaussian rationals form a field", "[core]") {
  GaussRat a(GaussRat::frac(3, 4).re, GaussRat::frac(-2, 5).re);  // 3/4 - 2/5 i
  GaussRat b(Rat(2), Rat(7));
  CHECK((a * b) * a.inverse() == b * (a * a.inverse()));
  CHECK(a * a.inverse() == GaussRat(1));
  CHECK((a + b) - b == a);
  CHECK(a.conj().conj() == a);
  CHECK((a * b).conj() == a.conj() * b.conj());
  CHECK_THROWS_AS(GaussRat(0).inverse(), std::domain_error);
  CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
}

TEST_CASE("Parameter polynomials multiply and divide exactly", "[core]") {
  ParamPoly l = ParamPoly::lambda();
  ParamPoly h = ParamPoly::hbar();
  ParamPoly a = l + h;              // l + h
  ParamPoly b = l - h;              // l - h
  ParamPoly prod = a * b;           // l^2 - h^2
  CHECK(prod == l * l - h * h);
  CHECK(detail::divexact(prod, a) == b);
  CHECK(detail::divexact(prod, b) == a);
  CHECK_THROWS_AS(detail::divexact(l, h), std::domain_error);

  SECTION("gcd of shared factors") {
    ParamPoly g1 = detail::poly_gcd(a * a * h, a * b * h * h);
    // gcd is (l + h) * h up to normalisation; both inputs must divide exactly
    CHECK_NOTHROW(detail::divexact(a * a * h, g1));
    CHECK_NOTHROW(detail::divexact(a * b * h * h, g1));
    CHECK(detail::divexact(a * a * h, g1) * g1 == a * a * h);
    CHECK(g1.lambda_max() == 1);
    CHECK(g1.hbar_max() == 2);
  }
  SECTION("coprime polynomials reduce to a monomial gcd") {
    ParamPoly g = detail::poly_gcd(l * l + ParamPoly::one(), h + ParamPoly::one());
    CHECK(g.is_constant());
  }
  SECTION("univariate gcds") {
    ParamPoly u = (l + ParamPoly::one()) * (l - ParamPoly::one());
    ParamPoly v = (l + ParamPoly::one()) * (l + ParamPoly::one());
    ParamPoly g = detail::poly_gcd(u, v);
    CHECK(g == l + ParamPoly::one());
  }
}

TEST_CASE("Scalars reduce to normal form", "[core]") {
  ParamPoly l = ParamPoly::lambda();
  ParamPoly h = ParamPoly::hbar();
  Scalar s(l * l - h * h, l + h);
  CHECK(s == Scalar(l - h));
  CHECK(s.den_is_one());

  SECTION("denominators are monic in the leading term") {
    Scalar t(ParamPoly::one(), (l + h).scaled(GaussRat(2)));
    CHECK(t.den().leading().c == GaussRat(1));
    CHECK(t * Scalar(l + h) == Scalar::frac(1, 2));
  }
  SECTION("inverse powers of the deformation parameter are exact") {
    Scalar inv_l = Scalar::lambda().inverse();
    CHECK(inv_l * Scalar::lambda() == Scalar::one());
    CHECK(inv_l.lambda_valuation() == -1);
    CHECK_THROWS_AS(inv_l.set_lambda_zero(), std::domain_error);
    CHECK_THROWS_AS(inv_l.truncate_lambda(3), std::domain_error);
  }
  SECTION("l-truncation and the classical limit") {
    Scalar u = Scalar::one() + Scalar::lambda(2) + Scalar::lambda(5);
    CHECK(u.truncate_lambda(3) == Scalar::one() + Scalar::lambda(2));
    CHECK(u.set_lambda_zero() == Scalar::one());
    CHECK(Scalar::lambda().set_lambda_zero() == Scalar::zero());
  }
  SECTION("h-grading") {
    Scalar q = Scalar::integer(2) + Scalar::hbar() * Scalar::lambda() * Scalar::integer(3);
    CHECK(q.hbar_coefficient(0) == Scalar::integer(2));
    CHECK(q.hbar_coefficient(1) == Scalar::lambda() * Scalar::integer(3));
    CHECK(q.hbar_max() == 1);
  }
}

TEST_CASE("Polynomials in the generators", "[core]") {
  Poly p1 = Poly::generator("p1");
  Poly p2 = Poly::generator("p2");
  Poly f = p1 * p2 + p1.scaled(Scalar::i());

  SECTION("derivatives") {
    CHECK(f.derivative(gen_id("p1")) == p2 + Poly::constant(I()));
    CHECK(f.derivative(gen_id("p2")) == p1);
    CHECK((p1 * p1 * p1).derivative(gen_id("p1")) == (p1 * p1).scaled(Scalar::integer(3)));
  }
  SECTION("generator bitmask tracks content") {
    CHECK(f.gen_mask() == ((uint64_t{1} << gen_id("p1")) | (uint64_t{1} << gen_id("p2"))));
    Poly cancel = f - f;
    CHECK(cancel.gen_mask() == 0);
    CHECK(cancel.is_zero());
  }
  SECTION("complex conjugation respects the pairing with signs") {
    CHECK(Poly::generator("p1").star() == Poly::generator("p1"));
    CHECK(Poly::generator("gam11").star() == Poly::generator("gamb22"));
    CHECK(Poly::generator("gam12").star() == -Poly::generator("gamb21"));
    CHECK(Poly::generator("gamb12").star() == -Poly::generator("gam21"));
    CHECK(Poly::generator("g21").star() == -Poly::generator("gb12"));
    Poly mixed = Poly::generator("gam12").scaled(I());
    CHECK(mixed.star() == Poly::generator("gamb21").scaled(I()));
    CHECK(mixed.star().star() == mixed);
    CHECK_THROWS_AS(Poly::generator("gs11").star(), std::domain_error);
    CHECK_THROWS_AS(Poly::generator("s12").star(), std::domain_error);
  }
  SECTION("numeric evaluation") {
    std::array<double, kMaxGenerators> vals{};
    vals[static_cast<std::size_t>(gen_id("p1"))] = 2.0;
    vals[static_cast<std::size_t>(gen_id("p2"))] = -3.0;
    auto z = f.eval_double(vals, 0.0);
    CHECK(z.real() == Catch::Approx(-6.0));
    CHECK(z.imag() == Catch::Approx(2.0));
  }
}

TEST_CASE("Series arithmetic tracks trusted orders", "[core]") {
  Series x = Series::generator("x1");
  Series lam = Series::constant(L());

  SECTION("exact values stay exact") {
    Series e = x * x + lam;
    CHECK(e.exact());
  }
  SECTION("truncation windows compose through products") {
    Series a = (Series::one() + lam.scaled(Scalar::one())).truncated(4);  // ord 4
    Series b = lam * lam;                                                 // valuation 2, exact
    Series c = a * b;
    CHECK(c.ord == 6);
    Series d = a * a;
    CHECK(d.ord == 4);
  }
  SECTION("dividing by the deformation parameter") {
    Series s = lam * x + lam * lam;
    Series q = divide_by_lambda(s, 2);
    CHECK(q == (x + lam).scaled(Scalar::frac(1, 2)));
    CHECK_THROWS_AS(divide_by_lambda(Series::one() + lam), std::domain_error);
  }
  SECTION("inverse square root by Newton iteration") {
    Series s = Series::one() + lam * x + (lam * lam) * (x * x) + lam.scaled(Scalar::frac(3, 7));
    const int N = 9;
    Series t = series_sqrt_inv(s, N);
    CHECK(t.ord == N);
    Series check = t * t * s;
    CHECK(check.truncated(N) == Series::one().truncated(N));
    CHECK_THROWS_AS(series_sqrt_inv(Series::integer(2), 4), std::domain_error);
  }
  SECTION("substitution of generator values") {
    Series f = x * x + Series::generator("p1").scaled(Scalar::integer(5));
    std::map<int, Series> vals{{gen_id("x1"), lam + Series::one()}};
    Series g = substitute(f, vals);
    CHECK(g == (lam + Series::one()) * (lam + Series::one()) +
                   Series::generator("p1").scaled(Scalar::integer(5)));
  }
}

TEST_CASE("Matrix layer conventions", "[core]") {
  SECTION("kron places the first factor on the slow index") {
    Mat e21(2), e12(2);
    e21.at(1, 0) = Series::one();
    e12.at(0, 1) = Series::one();
    Mat k = kron(e21, e12);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(k.at(i, j).is_zero() == !(i == 2 && j == 1));
  }
  SECTION("flip operator swaps tensor slots") {
    Mat a = group_matrix("gam"), b = group_matrix("gs");
    Mat pi = flip_pi();
    CHECK(pi * kron(a, b) * pi == kron(b, a));
    CHECK(pi * pi == Mat::identity(4));
  }
  SECTION("adjugate identity") {
    Mat m = group_matrix("g");
    Mat prod = m * adjugate2(m);
    CHECK(prod.at(0, 0) == det2(m));
    CHECK(prod.at(1, 1) == det2(m));
    CHECK(prod.at(0, 1).is_zero());
    CHECK(prod.at(1, 0).is_zero());
  }
  SECTION("momentum and position matrices are hermitean") {
    CHECK(p_tilde_matrix().dagger() == p_tilde_matrix());
    CHECK(x_matrix().dagger() == x_matrix());
  }
  SECTION("group dagger equals the adjugate of the conjugate partner") {
    CHECK(group_matrix("gam").dagger() == adjugate2(group_matrix("gamb")));
    CHECK(group_matrix("g").dagger() == adjugate2(group_matrix("gb")));
  }
  SECTION("rotation-sector matrix is traceless") {
    CHECK(rotation_matrix_from_j().trace().is_zero());
  }
}

TEST_CASE("Component extraction inverts the layouts", "[core]") {
  SECTION("momentum components") {
    auto spec = extraction_momentum();
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(apply_weights(spec.weights[c], spec.matrix) == Series::generator(spec.gens[c]));
  }
  SECTION("position components") {
    auto spec = extraction_position();
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(apply_weights(spec.weights[c], spec.matrix) == Series::generator(spec.gens[c]));
  }
  SECTION("group entries") {
    auto spec = extraction_group("gamb");
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(apply_weights(spec.weights[c], spec.matrix) == Series::generator(spec.gens[c]));
  }
  SECTION("weights recover components of an arbitrary layout value") {
    // fill the layout with a non-trivial vector of series and pull it back out
    std::array<Series, 4> v{Series::generator("x0") * Series::generator("p1"), Series::one(),
                            Series::constant(L()), Series::generator("p2")};
    Mat m = momentum_layout(v);
    auto w = momentum_weights();
    for (std::size_t c = 0; c < 4; ++c) CHECK(apply_weights(w[c], m) == v[c]);
    Mat mx = position_layout(v);
    auto wx = position_weights();
    for (std::size_t c = 0; c < 4; ++c) CHECK(apply_weights(wx[c], mx) == v[c]);
  }
}

TEST_CASE("Classical r-matrix identities", "[core]") {
  const Mat& r = r_matrix();
  const Mat& rd = r_matrix_dagger();
  Mat pi = flip_pi();

  SECTION("dagger equals minus the flipped matrix") { CHECK(rd == -(pi * r * pi)); }
  SECTION("antisymmetric part is the split Casimir combination") {
    Mat expect =
        (pi.scaled(Scalar::integer(2)) - Mat::identity(4)).scaled(I() * L());
    CHECK(r - rd == expect);
  }
  SECTION("r is first order in the deformation parameter") {
    CHECK(r.set_lambda_zero().is_zero());
  }
}
