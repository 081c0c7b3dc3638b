#include <doctest.h>

#include <random>

#include "lag/differentials.hpp"
#include "lag/exprparse.hpp"
#include "lag/jet.hpp"
#include "hosts.hpp"

using namespace lag;
using namespace lagtest;

namespace {

Multivector parse_mv(const AlgebroidPresentation* p, const std::string& s, int deg) {
  return parse_multivector(s, p, deg);
}

bool errc_is(const Error& e, Errc c) { return e.code() == c; }

// rho(e1) = x d/dx with [e1,e2] = e2: the mixed jet bracket picks up both the
// anchor-derivative and the bracket-lift contribution on the same F section.
IsotropyElement random_iso(const AlgebroidPresentation& P, std::mt19937_64& rng,
                           int max_deg = 1) {
  IsotropyElement H = IsotropyElement::zero(&P);
  for (auto& row : H.entries)
    for (auto& c : row) c = random_poly(P, rng, max_deg);
  return H;
}

bool iso_eq(const IsotropyElement& a, const IsotropyElement& b) {
  return a.host == b.host && a.entries == b.entries;
}

std::vector<std::vector<Multivector>> generated_f_table(const CharPair& cp) {
  std::vector<std::vector<Multivector>> t;
  for (int a = 0; a < cp.host->base_dim(); ++a) {
    t.emplace_back();
    for (int i = 0; i < cp.host->rank(); ++i) t.back().push_back(cp.f_value(a, i));
  }
  return t;
}

}  // namespace

TEST_CASE("jet prolongation over a point reproduces the base tables") {
  for (auto maker : {make_aff1, make_sl2, make_heis}) {
    auto P = maker();
    JetPresentation J = build_jet(P.get());
    REQUIRE(J.jet->rank() == P->rank());
    CHECK(J.jet->base_dim() == 0);
    for (int i = 0; i < P->rank(); ++i) {
      CHECK(J.jet->frame_name(i) == "J" + std::to_string(i + 1));
      for (int j = i + 1; j < P->rank(); ++j)
        CHECK(J.jet->frame_bracket(i, j) == P->frame_bracket(i, j));
    }
  }
}

TEST_CASE("jet prolongation tables") {
  SUBCASE("tangent line") {
    auto P = make_tan1();
    JetPresentation J = build_jet(P.get());
    REQUIRE(J.jet->rank() == 2);
    CHECK(J.jet->coord_name(0) == "x");
    CHECK(J.jet->frame_name(0) == "J1");
    CHECK(J.jet->frame_name(1) == "F1_1");
    CHECK(J.jet->anchor(0, 0) == P->one_poly());
    CHECK(J.jet->anchor(1, 0) == P->zero_poly());
    // constant anchor, trivial bracket: [J1, F1_1] = 0
    for (const Poly& c : J.jet->frame_bracket(0, 1)) CHECK(c.is_zero());
  }
  SUBCASE("bracket coefficient x lifts with its derivative") {
    auto P = make_bla_x();
    JetPresentation J = build_jet(P.get());
    REQUIRE(J.jet->rank() == 4);
    CHECK(J.jet->frame_name(2) == "F1_1");
    CHECK(J.jet->frame_name(3) == "F1_2");
    const Poly x = Poly::variable(1, 0);
    const Poly z = P->zero_poly();
    const Poly one = P->one_poly();
    CHECK(J.jet->frame_bracket(0, 1) == std::vector<Poly>{z, x, z, one});
    CHECK(J.jet->frame_bracket(0, 3) == std::vector<Poly>{z, z, z, x});
    CHECK(J.jet->frame_bracket(1, 2) == std::vector<Poly>{z, z, z, -x});
    for (const Poly& c : J.jet->frame_bracket(2, 3)) CHECK(c.is_zero());
  }
  SUBCASE("anchor derivative and bracket lift land on the same section") {
    auto P = make_scale_line();
    JetPresentation J = build_jet(P.get());
    const Poly x = Poly::variable(1, 0);
    const Poly z = P->zero_poly();
    const Poly one = P->one_poly();
    CHECK(J.jet->anchor(0, 0) == x);
    CHECK(J.jet->anchor(2, 0) == z);
    CHECK(J.jet->frame_bracket(0, 1) == std::vector<Poly>{z, one, z, z});
    CHECK(J.jet->frame_bracket(0, 2) == std::vector<Poly>{z, z, one, z});
    // d(rho(e1)x) and dx (x) [e1,e2] both contribute dx (x) e2
    CHECK(J.jet->frame_bracket(0, 3) ==
          std::vector<Poly>{z, z, z, Poly::constant(1, Rational(2))});
    CHECK(J.jet->frame_bracket(1, 2) == std::vector<Poly>{z, z, z, -one});
    CHECK(J.jet->frame_bracket(2, 3) == std::vector<Poly>{z, z, z, x});
  }
  SUBCASE("fiberwise block sees the anchor") {
    auto P = make_ati();
    JetPresentation J = build_jet(P.get());
    REQUIRE(J.jet->rank() == 6);
    const Poly z = P->zero_poly();
    const Poly one = P->one_poly();
    CHECK(J.jet->frame_bracket(3, 4) == std::vector<Poly>{z, z, z, z, one, z});
    CHECK(J.jet->frame_bracket(3, 5) == std::vector<Poly>{z, z, z, z, z, one});
    for (const Poly& c : J.jet->frame_bracket(4, 5)) CHECK(c.is_zero());
  }
}

TEST_CASE("jet prolongation validates on every host") {
  for (auto maker : {make_ab2, make_aff1, make_sl2, make_heis, make_tan1, make_tan2,
                     make_bla, make_ab2_line, make_bla_x, make_ati}) {
    auto P = maker();
    JetPresentation J = build_jet(P.get());
    CHECK(validate_presentation(*J.jet).ok);
  }
  auto S = make_scale_line();
  CHECK(validate_presentation(*build_jet(S.get()).jet).ok);

  auto B = make_sl2_broken();
  try {
    build_jet(B.get());
    FAIL("expected BAD_INPUT");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::bad_input));
  }
  CHECK_THROWS_AS(build_jet(nullptr), Error);
}

TEST_CASE("jet index helpers") {
  auto P = make_tan2();
  JetPresentation J = build_jet(P.get());
  CHECK(J.j_index(1) == 1);
  CHECK(J.f_index(0, 0) == 2);
  CHECK(J.f_index(1, 0) == 4);
  CHECK(J.jet->frame_name(J.f_index(1, 0)) == "F2_1");
  CHECK_FALSE(J.is_f(1));
  CHECK(J.is_f(5));
  CHECK(J.f_split(4) == std::pair<int, int>{1, 0});
  CHECK(J.f_split(J.f_index(0, 1)) == std::pair<int, int>{0, 1});
  try {
    J.f_split(1);
    FAIL("expected BAD_INDEX");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::bad_index));
  }
  CHECK_THROWS_AS(J.f_split(6), Error);
}

TEST_CASE("jet adjoint represents the prolonged bracket") {
  std::mt19937_64 rng(77001);
  std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
  hosts.push_back(make_tan2());
  hosts.push_back(make_bla_x());
  hosts.push_back(make_ati());
  hosts.push_back(make_scale_line());
  for (const auto& P : hosts) {
    JetPresentation J = build_jet(P.get());
    const int N = J.jet->rank();
    for (int q = 0; q <= P->top(); ++q)
      for (int trial = 0; trial < 2; ++trial) {
        Multivector w = random_multivector(*P, rng, q);
        for (int u = 0; u < N; ++u)
          for (int v = u + 1; v < N; ++v) {
            Multivector lhs = jet_adjoint(J, u, jet_adjoint(J, v, w)) -
                              jet_adjoint(J, v, jet_adjoint(J, u, w));
            Multivector rhs(P.get(), q);
            const auto blk = J.jet->frame_bracket(u, v);
            for (int t = 0; t < N; ++t)
              if (!blk[size_t(t)].is_zero())
                rhs += jet_adjoint(J, t, w).scaled(blk[size_t(t)]);
            CHECK(lhs == rhs);
          }
      }
  }
}

TEST_CASE("jet adjoint values") {
  SUBCASE("jet part acts by the bracket") {
    auto P = make_sl2();
    JetPresentation J = build_jet(P.get());
    CHECK(jet_adjoint(J, 0, parse_mv(P.get(), "e*f", 2)).is_zero());
    CHECK(jet_adjoint(J, 0, parse_mv(P.get(), "e", 1)) == parse_mv(P.get(), "2*e", 1));
  }
  SUBCASE("fiber part contracts the anchor") {
    auto P = make_tan1();
    JetPresentation J = build_jet(P.get());
    CHECK(jet_adjoint(J, J.f_index(0, 0), parse_mv(P.get(), "e1", 1)) ==
          parse_mv(P.get(), "-e1", 1));
    CHECK(jet_adjoint(J, J.f_index(0, 0), parse_mv(P.get(), "x^2", 0)).is_zero());
  }
  SUBCASE("zero anchor kills the fiber part") {
    std::mt19937_64 rng(77002);
    auto P = make_bla();
    JetPresentation J = build_jet(P.get());
    for (int q = 0; q <= P->top(); ++q) {
      Multivector w = random_multivector(*P, rng, q);
      CHECK(jet_adjoint(J, J.f_index(0, 0), w).is_zero());
      CHECK(jet_adjoint(J, J.f_index(0, 1), w).is_zero());
    }
    try {
      jet_adjoint(J, 6, Multivector::frame(P.get(), 0));
      FAIL("expected BAD_INDEX");
    } catch (const Error& e) {
      CHECK(errc_is(e, Errc::bad_index));
    }
  }
  SUBCASE("module wiring") {
    auto P = make_ati();
    JetPresentation J = build_jet(P.get());
    CoefficientModule mod = jet_adjoint_module(J, 2);
    CHECK(mod.cochain_host() == J.jet.get());
    CHECK(mod.value_host() == P.get());
    CHECK(mod.value_degree() == 2);
    CHECK(mod.nabla(J.f_index(0, 0), parse_mv(P.get(), "x*e1*e2", 2)) ==
          parse_mv(P.get(), "-x*e1*e2", 2));
  }
}

TEST_CASE("isotropy sections bracket like the fiber block") {
  std::mt19937_64 rng(77003);
  SUBCASE("rank-one sections agree with the jet adjoint") {
    std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
    hosts.push_back(make_tan2());
    hosts.push_back(make_ati());
    for (const auto& P : hosts) {
      JetPresentation J = build_jet(P.get());
      for (int a = 0; a < P->base_dim(); ++a)
        for (int i = 0; i < P->rank(); ++i)
          for (int q = 1; q <= P->top(); ++q) {
            Multivector w = random_multivector(*P, rng, q);
            CHECK(isotropy_adjoint(IsotropyElement::rank_one(P.get(), a, i, P->one_poly()),
                                   w) == jet_adjoint(J, J.f_index(a, i), w));
          }
    }
  }
  SUBCASE("antisymmetry and the action identity") {
    std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
    hosts.push_back(make_tan2());
    hosts.push_back(make_ati());
    hosts.push_back(make_scale_line());
    for (const auto& P : hosts)
      for (int trial = 0; trial < 4; ++trial) {
        IsotropyElement lam = random_iso(*P, rng);
        IsotropyElement mu = random_iso(*P, rng);
        IsotropyElement br = isotropy_bracket(lam, mu);
        IsotropyElement neg = isotropy_bracket(mu, lam);
        for (auto& row : neg.entries)
          for (auto& c : row) c = -c;
        CHECK(iso_eq(br, neg));
        for (int q = 0; q <= P->top(); ++q) {
          Multivector w = random_multivector(*P, rng, q);
          CHECK(isotropy_adjoint(br, w) ==
                isotropy_adjoint(lam, isotropy_adjoint(mu, w)) -
                    isotropy_adjoint(mu, isotropy_adjoint(lam, w)));
        }
      }
    auto P1 = make_tan1();
    auto P2 = make_tan2();
    try {
      isotropy_bracket(IsotropyElement::zero(P1.get()), IsotropyElement::zero(P2.get()));
      FAIL("expected HOST_MISMATCH");
    } catch (const Error& e) {
      CHECK(errc_is(e, Errc::host_mismatch));
    }
  }
}

TEST_CASE("mu_pi values and identities") {
  std::mt19937_64 rng(77004);
  SUBCASE("hand value on the tangent plane") {
    auto P = make_tan2();
    RhoTensor pi = RhoTensor::zero(P.get(), 1);
    pi.comp[0] = parse_mv(P.get(), "1", 0);
    CHECK(mu_pi(pi, IsotropyElement::rank_one(P.get(), 0, 1, P->one_poly())) ==
          parse_mv(P.get(), "e2", 1));
    CHECK(mu_pi(pi, IsotropyElement::rank_one(P.get(), 1, 0, P->one_poly())).is_zero());
  }
  SUBCASE("symbol of a generator acts as minus its isotropy action") {
    std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
    hosts.push_back(make_tan1());
    hosts.push_back(make_tan2());
    hosts.push_back(make_ati());
    hosts.push_back(make_bla_x());
    hosts.push_back(make_scale_line());
    for (const auto& P : hosts)
      for (int k = 1; k <= P->top(); ++k)
        for (int trial = 0; trial < 3; ++trial) {
          Multivector tau = random_multivector(*P, rng, k);
          IsotropyElement H = random_iso(*P, rng);
          CHECK(mu_pi(d_rho_tau(tau), H) == -isotropy_adjoint(H, tau));
        }
  }
  SUBCASE("cocycle identity over the isotropy bracket") {
    std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
    hosts.push_back(make_tan2());
    hosts.push_back(make_ati());
    hosts.push_back(make_scale_line());
    for (const auto& P : hosts)
      for (int k = 1; k <= P->top(); ++k)
        for (int trial = 0; trial < 3; ++trial) {
          RhoTensor pi = d_rho_tau(random_multivector(*P, rng, k));
          REQUIRE(rho_compat_check(pi).ok);
          IsotropyElement h1 = random_iso(*P, rng);
          IsotropyElement h2 = random_iso(*P, rng);
          CHECK(mu_pi(pi, isotropy_bracket(h1, h2)) ==
                isotropy_adjoint(h1, mu_pi(pi, h2)) -
                    isotropy_adjoint(h2, mu_pi(pi, h1)));
        }
  }
  auto P = make_tan1();
  auto Q = make_tan2();
  try {
    mu_pi(RhoTensor::zero(P.get(), 1), IsotropyElement::zero(Q.get()));
    FAIL("expected HOST_MISMATCH");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::host_mismatch));
  }
}

TEST_CASE("pairs of exact differentials") {
  SUBCASE("affine line over a point") {
    auto P = make_aff1();
    CharPair cp = exact_char_pair(parse_mv(P.get(), "e2", 1));
    CHECK(cp.k == 1);
    CHECK(cp.chi_j[0] == parse_mv(P.get(), "-e2", 1));
    CHECK(cp.chi_j[1].is_zero());
    CHECK(cp.pi.comp.empty());
    CHECK(char_pair_cocycle_check(cp).ok);
    CHECK(pullback_membership(cp));
  }
  SUBCASE("tangent line") {
    auto P = make_tan1();
    CharPair cp = exact_char_pair(parse_mv(P.get(), "e1", 1));
    CHECK(cp.chi_j[0].is_zero());
    CHECK(cp.pi.comp[0] == parse_mv(P.get(), "1", 0));
    CHECK(char_pair_cocycle_check(cp).ok);
  }
  SUBCASE("agreement with the differential route") {
    std::mt19937_64 rng(77005);
    std::vector<std::unique_ptr<AlgebroidPresentation>> hosts;
    hosts.push_back(make_aff1());
    hosts.push_back(make_sl2());
    hosts.push_back(make_tan1());
    hosts.push_back(make_tan2());
    hosts.push_back(make_bla_x());
    hosts.push_back(make_ati());
    for (const auto& P : hosts)
      for (int k = 1; k <= P->top(); ++k)
        for (int trial = 0; trial < 2; ++trial) {
          Multivector tau = random_multivector(*P, rng, k, 1);
          CharPair cp = exact_char_pair(tau);
          CHECK(cp == char_pair_from_differential(exact_differential(tau)));
          CharPairReport rep = char_pair_cocycle_check(cp);
          CHECK(rep.ok);
          CHECK(rep.pi_compatible);
          CHECK(rep.pi_consistent);
          CHECK(rep.cocycle.ok);
          CHECK(pullback_membership(cp));
          CHECK(differential_from_char_pair(cp) == exact_differential(tau));
        }
  }
}

TEST_CASE("round trip through validated differentials") {
  struct Row {
    std::unique_ptr<AlgebroidPresentation> P;
    int k;
  };
  std::vector<Row> rows;
  rows.push_back({make_ati(), 1});
  rows.push_back({make_ati(), 2});
  rows.push_back({make_tan2(), 1});
  rows.push_back({make_bla(), 1});
  rows.push_back({make_aff1(), 2});
  for (const auto& row : rows) {
    const auto basis = valid_differential_basis(row.P.get(), row.k, 1);
    CHECK(!basis.empty());
    for (const auto& delta : basis) {
      CharPair cp = char_pair_from_differential(delta);
      CHECK(char_pair_cocycle_check(cp).ok);
      CHECK(pullback_membership(cp));
      CHECK(differential_from_char_pair(cp) == delta);
    }
  }
}

TEST_CASE("non-cocycles are rejected with residuals") {
  SUBCASE("pinned residual over the affine line") {
    auto P = make_aff1();
    CharPair cp;
    cp.host = P.get();
    cp.k = 1;
    cp.chi_j = {parse_mv(P.get(), "e1", 1), Multivector(P.get(), 1)};
    cp.pi = RhoTensor::zero(P.get(), 1);
    CharPairReport rep = char_pair_cocycle_check(cp);
    CHECK_FALSE(rep.ok);
    CHECK(rep.pi_compatible);
    CHECK(rep.pi_consistent);
    REQUIRE(rep.cocycle.entries.size() == 1);
    CHECK(rep.cocycle.entries[0].i == 0);
    CHECK(rep.cocycle.entries[0].j == 1);
    CHECK(rep.cocycle.entries[0].residual == parse_mv(P.get(), "e2", 1));

    KDifferential d = KDifferential::zero(P.get(), 1);
    d.delta0[0] = parse_mv(P.get(), "e1", 1);
    const auto vrep = validate_k_differential(d);
    REQUIRE(vrep.frame_cocycle.size() == 1);
    CHECK(vrep.frame_cocycle[0].residual == rep.cocycle.entries[0].residual);
    try {
      differential_from_char_pair(cp);
      FAIL("expected COCYCLE_FAIL");
    } catch (const Error& e) {
      CHECK(errc_is(e, Errc::cocycle_fail));
    }
  }
  SUBCASE("tampered tensor breaks the mixed residuals") {
    auto P = make_ati();
    CharPair cp = exact_char_pair(parse_mv(P.get(), "e1*e2", 2));
    CHECK(cp.pi.comp[0] == parse_mv(P.get(), "e2", 1));
    cp.pi.comp[0] += parse_mv(P.get(), "e3", 1);
    CharPairReport rep = char_pair_cocycle_check(cp);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.cocycle.ok);
    CHECK(rep.pi_consistent);  // stored tensor still generates the F table
    CHECK_THROWS_AS(differential_from_char_pair(cp), Error);
  }
  SUBCASE("tampered explicit table fails membership") {
    auto P = make_ati();
    CharPair cp = exact_char_pair(parse_mv(P.get(), "e2", 1));
    cp.explicit_f = generated_f_table(cp);
    CHECK(pullback_membership(cp));
    CHECK(char_pair_cocycle_check(cp).ok);
    cp.explicit_f[0][0] += parse_mv(P.get(), "e1", 1);
    CHECK_FALSE(pullback_membership(cp));
    CHECK_FALSE(char_pair_cocycle_check(cp).ok);
  }
}

TEST_CASE("shifting by an exact differential shifts the pair") {
  std::mt19937_64 rng(77006);
  auto P = make_ati();
  for (int k = 1; k <= 2; ++k) {
    const auto basis = valid_differential_basis(P.get(), k, 1);
    REQUIRE(!basis.empty());
    const KDifferential& delta = basis.front();
    Multivector tau = random_multivector(*P, rng, k, 1);
    CharPair cp = char_pair_from_differential(delta);
    CharPair shifted = char_pair_from_differential(delta + exact_differential(tau));
    CharPair step = exact_char_pair(tau);
    for (int i = 0; i < P->rank(); ++i)
      CHECK(shifted.chi_j[i] == cp.chi_j[i] + step.chi_j[i]);
    for (int a = 0; a < P->base_dim(); ++a)
      CHECK(shifted.pi.comp[a] == cp.pi.comp[a] + step.pi.comp[a]);
  }
}

TEST_CASE("pair construction guards") {
  auto P = make_tan2();
  try {
    exact_char_pair(parse_mv(P.get(), "x", 0));
    FAIL("expected DEGREE_MISMATCH");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::degree_mismatch));
  }
  CHECK_THROWS_AS(exact_char_pair(Multivector(P.get(), P->top() + 1)), Error);

  try {
    char_pair_from_differential(KDifferential::zero(P.get(), 0));
    FAIL("expected BAD_INPUT");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::bad_input));
  }
  CHECK_THROWS_AS(char_pair_from_differential(KDifferential::zero(P.get(), P->top() + 1)),
                  Error);

  KDifferential bad = KDifferential::zero(P.get(), 1);
  bad.delta0[0] = parse_mv(P.get(), "x*e1", 1);  // not a cocycle for the plane
  try {
    char_pair_from_differential(bad);
    FAIL("expected VALIDATION");
  } catch (const Error& e) {
    CHECK(errc_is(e, Errc::validation));
  }

  CharPair cp = exact_char_pair(parse_mv(P.get(), "e1", 1));
  cp.chi_j.pop_back();
  CHECK_THROWS_AS(char_pair_cocycle_check(cp), Error);
}
