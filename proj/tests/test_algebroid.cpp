#include <random>

#include "doctest.h"
#include "hosts.hpp"
#include "lag/error.hpp"

using namespace lag;
using namespace lagtest;

TEST_CASE("structure equations hold on the bundled hosts") {
  for (auto make : {make_ab2, make_aff1, make_sl2, make_heis, make_tan1, make_tan2, make_bla,
                    make_bla_x, make_ati}) {
    auto P = make();
    const auto rep = validate_presentation(*P);
    CHECK(rep.ok);
    CHECK(rep.jacobi.empty());
    CHECK(rep.anchor.empty());
  }
}

TEST_CASE("perturbed sl2 fails Jacobi with residual -2e on (h,e,f)") {
  auto P = make_sl2_broken();
  const auto rep = validate_presentation(*P);
  REQUIRE_FALSE(rep.ok);
  REQUIRE(rep.jacobi.size() == 1);
  CHECK(rep.jacobi[0].i == 0);
  CHECK(rep.jacobi[0].j == 1);
  CHECK(rep.jacobi[0].k == 2);
  CHECK(rep.jacobi[0].comps[0].is_zero());                          // h component
  CHECK(rep.jacobi[0].comps[1] == Poly::constant(0, Rational(-2)));  // e component
  CHECK(rep.jacobi[0].comps[2].is_zero());                          // f component
  CHECK(rep.anchor.empty());
}

TEST_CASE("schouten on frames matches the bracket tables") {
  auto A = make_aff1();
  const Multivector e1 = Multivector::frame(A.get(), 0);
  const Multivector e2 = Multivector::frame(A.get(), 1);
  CHECK(schouten(e1, e2) == e2);
  CHECK(schouten(e2, e1) == -e2);
  CHECK(schouten(e1, e1).is_zero());
}

TEST_CASE("schouten with coefficients and functions on the tangent line") {
  auto T = make_tan1();
  const Poly x = Poly::variable(1, 0);
  const Multivector e1 = Multivector::frame(T.get(), 0);
  const Multivector xe1 = e1.scaled(x);
  // [x e1, e1] = -(rho(e1) x) e1 = -e1, and [x e1, x] = x rho(e1) x = x.
  CHECK(schouten(xe1, e1) == -e1);
  CHECK(schouten(xe1, Multivector::scalar(T.get(), x)) == Multivector::scalar(T.get(), x));
  CHECK(schouten(Multivector::scalar(T.get(), x), xe1) == -Multivector::scalar(T.get(), x));
}

TEST_CASE("schouten kills the casimir-type pair on sl2") {
  auto S = make_sl2();
  const Multivector h = Multivector::frame(S.get(), 0);
  const Multivector ef = wedge(Multivector::frame(S.get(), 1), Multivector::frame(S.get(), 2));
  // [h, e^f] = [h,e]^f + e^[h,f] = 2e^f - 2e^f = 0.
  CHECK(schouten(h, ef).is_zero());
}

TEST_CASE("schouten graded antisymmetry on random inputs") {
  std::mt19937_64 rng(20240811);
  for (auto make : {make_tan2, make_ati, make_bla_x}) {
    auto P = make();
    for (int trial = 0; trial < 6; ++trial) {
      for (int dx = 0; dx <= 2; ++dx) {
        for (int dy = 0; dy <= 2; ++dy) {
          const Multivector X = random_multivector(*P, rng, dx);
          const Multivector Y = random_multivector(*P, rng, dy);
          const int e = (dx - 1) * (dy - 1);
          Multivector lhs = schouten(X, Y);
          Multivector rhs = schouten(Y, X).scaled(Rational(e % 2 == 0 ? -1 : 1));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("schouten graded Jacobi on random inputs") {
  std::mt19937_64 rng(77);
  for (auto make : {make_tan1, make_ati}) {
    auto P = make();
    for (int trial = 0; trial < 4; ++trial) {
      for (int dx = 1; dx <= 2; ++dx) {
        for (int dy = 1; dy <= 2; ++dy) {
          const Multivector X = random_multivector(*P, rng, dx);
          const Multivector Y = random_multivector(*P, rng, dy);
          const Multivector Z = random_multivector(*P, rng, 2);
          // [X,[Y,Z]] = [[X,Y],Z] + (-1)^{(|X|-1)(|Y|-1)} [Y,[X,Z]]
          const int e = (dx - 1) * (dy - 1);
          Multivector lhs = schouten(X, schouten(Y, Z));
          Multivector rhs = schouten(schouten(X, Y), Z) +
                            schouten(Y, schouten(X, Z)).scaled(Rational(e % 2 == 0 ? 1 : -1));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("bracket with a function contracts through the anchor") {
  std::mt19937_64 rng(5150);
  for (auto make : {make_tan2, make_ati}) {
    auto P = make();
    for (int k = 1; k <= 2; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        const Multivector L = random_multivector(*P, rng, k);
        const Poly f = random_poly(*P, rng);
        // [L, f] = (-1)^{k-1} i_{rho* df} L.
        const Multivector lhs = schouten(L, Multivector::scalar(P.get(), f));
        const Multivector rhs = contract_rho_df(L, f).scaled(Rational(k % 2 == 1 ? 1 : -1));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("anchor morphism residual flags a bad anchor") {
  AlgebroidPresentation P({"x"}, {"e1", "e2"});
  P.set_anchor(0, 0, P.one_poly());
  P.set_anchor(1, 0, Poly::variable(1, 0));
  // [e1,e2] = 0 but [rho e1, rho e2] = d/dx != 0.
  const auto rep = validate_presentation(P);
  CHECK_FALSE(rep.ok);
  CHECK(rep.jacobi.empty());
  REQUIRE(rep.anchor.size() == 1);
  // rho([e1,e2]) - [rho e1, rho e2] = 0 - d/dx.
  CHECK(rep.anchor[0].comps[0] == -P.one_poly());
}

TEST_CASE("host mismatch is rejected") {
  auto A = make_aff1();
  auto B = make_aff1();
  const Multivector u = Multivector::frame(A.get(), 0);
  const Multivector v = Multivector::frame(B.get(), 0);
  CHECK_THROWS_AS(wedge(u, v), Error);
}
