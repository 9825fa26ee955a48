#include "mugraph/algebraic.hpp"
#include "mugraph/polynomial.hpp"
#include "mugraph/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mugraph;

namespace {

AlgebraicNumber sqrt2() {
  return AlgebraicNumber{Polynomial{Rational(-2), Rational(0), Rational(1)},
                         Interval(Rational(1), Rational(2))};
}

}  // namespace

TEST_CASE("rational construction and printing", "[exact]") {
  CHECK(make_rational(3, -6) == make_rational(-1, 2));
  CHECK(make_rational(-4, -2) == Rational(2));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK(to_string(make_rational(-1, 2)) == "-1/2");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(parse_rational("-7/3") == make_rational(-7, 3));
  CHECK(parse_rational("42") == Rational(42));
  CHECK(parse_rational("+3/6") == make_rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("--2"), std::invalid_argument);
}

TEST_CASE("floor and ceiling honor negative values", "[exact]") {
  CHECK(floor_int(make_rational(7, 2)) == 3);
  CHECK(floor_int(make_rational(-7, 2)) == -4);
  CHECK(floor_int(Rational(-3)) == -3);
  CHECK(ceil_int(make_rational(7, 2)) == 4);
  CHECK(ceil_int(make_rational(-7, 2)) == -3);
  CHECK(ceil_int(Rational(5)) == 5);
}

TEST_CASE("sqrt_upper bounds the square root from above within tolerance", "[exact]") {
  const Rational tol = make_rational(1, 1000000);
  CHECK(sqrt_upper(Rational(0), tol) == 0);
  CHECK(sqrt_upper(Rational(1), tol) == 1);
  CHECK(sqrt_upper(Rational(4), tol) == 2);
  for (int x : {2, 3, 5, 7, 10, 1000}) {
    const Rational s = sqrt_upper(Rational(x), tol);
    CAPTURE(x);
    CHECK(s * s >= x);
    const Rational below = s - tol;
    CHECK((sgn(below) < 0 || below * below < x));
  }
}

TEST_CASE("polynomial arithmetic and evaluation", "[exact]") {
  const Polynomial p{Rational(-2), Rational(0), Rational(1)};  // x^2 - 2
  const Polynomial q = Polynomial::linear(Rational(1));        // x - 1
  CHECK(p.degree() == 2);
  CHECK((p * q).degree() == 3);
  CHECK((p - p).is_zero());
  CHECK(p.eval(Rational(3)) == 7);
  CHECK((p * q).eval(Rational(2)) == 2);
  CHECK(p.derivative() == Polynomial{Rational(0), Rational(2)});
  CHECK(Polynomial::x() * Polynomial::x() == Polynomial{Rational(0), Rational(0), Rational(1)});
  CHECK(to_string(Polynomial{Rational(0), Rational(-2), Rational(0), Rational(0), Rational(1)}) ==
        "x^4 - 2*x");
  CHECK(to_string(Polynomial::zero()) == "0");
}

TEST_CASE("exact division recovers factors", "[exact]") {
  const Polynomial a{Rational(-1), Rational(0), Rational(1)};               // x^2 - 1
  const Polynomial b{Rational(-1), Rational(1)};                            // x - 1
  CHECK(exact_div(a, b) == Polynomial{Rational(1), Rational(1)});
  CHECK_THROWS_AS(exact_div(Polynomial{Rational(1), Rational(1)}, a), std::logic_error);
}

TEST_CASE("gcd and squarefree part", "[exact]") {
  const Polynomial a{Rational(-1), Rational(0), Rational(1)};                     // x^2 - 1
  const Polynomial b{Rational(-1), Rational(0), Rational(0), Rational(1)};        // x^3 - 1
  CHECK(gcd(a, b) == Polynomial{Rational(-1), Rational(1)});
  CHECK_THROWS_AS(gcd(Polynomial::zero(), Polynomial::zero()), std::invalid_argument);

  // x^4 - 3x^2 = x^2 (x^2 - 3); the squarefree part is x^3 - 3x.
  const Polynomial m{Rational(0), Rational(0), Rational(-3), Rational(0), Rational(1)};
  CHECK(squarefree_part(m) ==
        Polynomial{Rational(0), Rational(-3), Rational(0), Rational(1)});
  CHECK(squarefree_part(b) == monic(b));
}

TEST_CASE("sturm chain counts roots in open intervals", "[exact]") {
  const Polynomial p{Rational(-2), Rational(0), Rational(1)};  // x^2 - 2
  CHECK(count_roots(p, Interval(Rational(-3), Rational(3))) == 2);
  CHECK(count_roots(p, Interval(Rational(0), Rational(3))) == 1);
  CHECK(count_roots(p, Interval(Rational(2), Rational(3))) == 0);
  const Polynomial sq{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
  CHECK_THROWS_AS(count_roots(sq, Interval(Rational(-1), Rational(0))), std::invalid_argument);
  CHECK_THROWS_AS(Interval(Rational(1), Rational(1)), std::invalid_argument);
}

TEST_CASE("multiplicity at an algebraic point", "[exact]") {
  // mu of the 3-star: x^4 - 3x^2, double root at 0.
  const Polynomial m{Rational(0), Rational(0), Rational(-3), Rational(0), Rational(1)};
  CHECK(multiplicity_at(m, AlgebraicNumber::from_rational(Rational(0))) == 2);
  CHECK(multiplicity_at(m, AlgebraicNumber::from_rational(Rational(1))) == 0);
  const AlgebraicNumber r2 = sqrt2();
  // (x^2 - 2)^3 (x - 1)
  const Polynomial c{Rational(-2), Rational(0), Rational(1)};
  const Polynomial f = c * c * c * Polynomial::linear(Rational(1));
  CHECK(multiplicity_at(f, r2) == 3);
}

TEST_CASE("sign of a polynomial at an algebraic point", "[exact]") {
  const AlgebraicNumber r2 = sqrt2();
  const Polynomial p{Rational(0), Rational(-2), Rational(0), Rational(1)};  // x^3 - 2x
  CHECK(sign_at(p, r2) == 0);
  CHECK(sign_at(Polynomial::linear(Rational(1)), r2) == 1);   // x - 1 > 0 at sqrt 2
  CHECK(sign_at(Polynomial::linear(Rational(2)), r2) == -1);  // x - 2 < 0 at sqrt 2
  CHECK(sign_at(Polynomial::one(), r2) == 1);
}

TEST_CASE("root isolation is ordered with multiplicities", "[exact]") {
  const Polynomial m{Rational(0), Rational(0), Rational(-3), Rational(0), Rational(1)};
  const auto roots = roots_with_multiplicity(m);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].second == 1);
  CHECK(roots[1].second == 2);
  CHECK(roots[2].second == 1);
  CHECK(roots[1].first.is_rational());
  CHECK(roots[1].first.rational_value() == 0);
  CHECK(compare(roots[0].first, roots[1].first) == -1);
  CHECK(compare(roots[1].first, roots[2].first) == -1);
  CHECK(compare(roots[0].first, Rational(-2)) == 1);
  CHECK(sign_at(m, roots[0].first) == 0);
  CHECK(sign_at(m, roots[2].first) == 0);
  // -sqrt(3) and sqrt(3) mirror each other.
  const Polynomial mirror{Rational(-3), Rational(0), Rational(1)};
  CHECK(sign_at(mirror, roots[0].first) == 0);
  CHECK(sign_at(mirror, roots[2].first) == 0);
}

TEST_CASE("algebraic comparison separates close roots", "[exact]") {
  // x^2 - 2 vs x^2 - 98/49... use 1.99 vs 2: roots of x^2-2 and x^2-199/100.
  const AlgebraicNumber a = sqrt2();
  const AlgebraicNumber b{Polynomial{make_rational(-199, 100), Rational(0), Rational(1)},
                          Interval(Rational(1), Rational(2))};
  CHECK(compare(a, b) == 1);
  CHECK(compare(b, a) == -1);
  const AlgebraicNumber c{Polynomial{Rational(-2), Rational(0), Rational(1)},
                          Interval(Rational(0), Rational(4))};
  CHECK(compare(a, c) == 0);
  CHECK(equal(a, c));
  CHECK(compare(a, make_rational(3, 2)) == -1);
  CHECK(compare(a, make_rational(7, 5)) == 1);
  CHECK(compare(AlgebraicNumber::from_rational(Rational(5)), Rational(5)) == 0);
}

TEST_CASE("isolation inside an explicit bracket rejects root endpoints", "[exact]") {
  const Polynomial sq{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
  CHECK_THROWS_AS(isolate_roots_in(sq, Rational(-1), Rational(2)), std::invalid_argument);
  const auto inside = isolate_roots_in(sq, Rational(0), Rational(2));
  REQUIRE(inside.size() == 1);
  CHECK(compare(inside[0], Rational(1)) == 0);
}

TEST_CASE("approximation is close enough for display", "[exact]") {
  const double v = approx(sqrt2());
  CHECK(v > 1.41421356 - 1e-6);
  CHECK(v < 1.41421356 + 1e-6);
}

TEST_CASE("refinement avoids roots of a second polynomial", "[exact]") {
  const AlgebraicNumber r2 = sqrt2();
  // Guard with roots crowding sqrt 2 on both sides.
  const Polynomial guard = Polynomial::linear(make_rational(141, 100)) *
                           Polynomial::linear(make_rational(142, 100)) *
                           Polynomial::linear(Rational(1)) * Polynomial::linear(Rational(2));
  const AlgebraicNumber fine = refine(r2, guard);
  CHECK(count_roots(fine.witness, fine.iv) == 1);
  CHECK(sgn(guard.eval(fine.iv.lo)) != 0);
  CHECK(sgn(guard.eval(fine.iv.hi)) != 0);
  // No guard root may remain in the closed refined interval except theta itself.
  CHECK(count_roots(guard, fine.iv) == 0);
}
