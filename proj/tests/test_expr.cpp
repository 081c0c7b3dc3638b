#include <doctest.h>

#include "hosts.hpp"
#include "lag/error.hpp"
#include "lag/exprparse.hpp"

using namespace lag;
using namespace lagtest;

namespace {

bool errc_is(const Error& e, Errc c) { return e.code() == c; }

}  // namespace

TEST_CASE("parse_poly basic forms") {
  auto P = make_tan2();  // coords x, y
  Poly p = parse_poly("3/2*x^2 - y", P.get());
  Poly q = Poly::variable(2, 0).pow(2).scaled(Rational(3, 2)) - Poly::variable(2, 1);
  CHECK(p == q);

  CHECK(parse_poly("0", P.get()).is_zero());
  CHECK(parse_poly("  0 + 0 ", P.get()).is_zero());
  CHECK(parse_poly("x - x", P.get()).is_zero());
  CHECK(parse_poly("2^3", P.get()) == Poly::constant(2, Rational(8)));
  CHECK(parse_poly("-x*-y", P.get()) == Poly::variable(2, 0) * Poly::variable(2, 1));
  CHECK(parse_poly("(x+y)^2 - x^2 - y^2", P.get()) ==
        (Poly::variable(2, 0) * Poly::variable(2, 1)).scaled(Rational(2)));
  CHECK(parse_poly("x/2", P.get()) == Poly::variable(2, 0).scaled(Rational(1, 2)));
  CHECK(parse_poly("1/2/3", P.get()) == Poly::constant(2, Rational(1, 6)));
}

TEST_CASE("parse_poly error positions and codes") {
  auto P = make_tan1();

  try {
    parse_poly("x^(-1)", P.get());
    FAIL("expected SYNTAX");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::syntax));
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }

  CHECK_THROWS_WITH_AS(parse_poly("y + 1", P.get()), "UNKNOWN_IDENTIFIER: y", Error);
  CHECK_THROWS_AS(parse_poly("x +", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("(x", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("x 1", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("x^x", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("1/x", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("1/0", P.get()), Error);
  CHECK_THROWS_AS(parse_poly("x/(x-x)", P.get()), Error);
  // Frame identifiers are out of scope for plain polynomials.
  CHECK_THROWS_AS(parse_poly("e1", P.get()), Error);
}

TEST_CASE("parse_multivector wedge words and signs") {
  auto P = make_sl2();
  Multivector hef = parse_multivector("h*e*f", P.get());
  CHECK(hef.degree() == 3);
  // Reordering picks up the wedge sign.
  CHECK(parse_multivector("e*h*f", P.get()) == -hef);
  CHECK(parse_multivector("h*e*f + e*h*f", P.get(), 3).is_zero());
  CHECK(parse_multivector("h*h", P.get(), 2).is_zero());

  auto T = make_tan1();
  Multivector v = parse_multivector("x*e1 - e1*x", T.get(), 1);
  CHECK(v.is_zero());
  Multivector w = parse_multivector("(1+x)*e1", T.get());
  CHECK(w == Multivector::frame(T.get(), 0).scaled(Poly::constant(1, Rational(1)) +
                                                   Poly::variable(1, 0)));
}

TEST_CASE("parse_multivector homogeneity and degree pinning") {
  auto P = make_ab2();
  CHECK_THROWS_AS(parse_multivector("e1 + e1*e2", P.get()), Error);
  CHECK_THROWS_AS(parse_multivector("e1", P.get(), 2), Error);
  // "0" parses at any requested degree.
  CHECK(parse_multivector("0", P.get(), 2).is_zero());
  CHECK(parse_multivector("0", P.get(), 2).degree() == 2);
  CHECK(parse_multivector("e1*e2 - e1*e2", P.get(), 2).degree() == 2);
}

TEST_CASE("render/parse round trip") {
  std::mt19937_64 rng(20240801);
  auto hosts = {make_sl2(), make_tan2(), make_ati(), make_bla_x()};
  for (const auto& P : hosts) {
    for (int deg = 0; deg <= 2; ++deg) {
      for (int rep = 0; rep < 8; ++rep) {
        Multivector v = random_multivector(*P, rng, deg);
        CHECK(parse_multivector(v.render(), P.get(), deg) == v);
      }
    }
    for (int rep = 0; rep < 8; ++rep) {
      Poly f = random_poly(*P, rng, 3);
      CHECK(parse_poly(f.render(P->coords()), P.get()) == f);
    }
  }
}
