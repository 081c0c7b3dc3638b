#pragma once

// Hand-built presentations mirroring the definition files in fixtures/; unit
// tests use these directly so they stay independent of the file loader.

#include <memory>
#include <random>

#include "lag/multivector.hpp"
#include "lag/presentation.hpp"

namespace lagtest {

using namespace lag;

inline std::unique_ptr<AlgebroidPresentation> make_ab2() {
  return std::make_unique<AlgebroidPresentation>(std::vector<std::string>{},
                                                 std::vector<std::string>{"e1", "e2"});
}

// [e1,e2] = e2 over a point.
inline std::unique_ptr<AlgebroidPresentation> make_aff1() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{},
                                                   std::vector<std::string>{"e1", "e2"});
  P->set_bracket(0, 1, 1, P->one_poly());
  return P;
}

// h,e,f with [h,e]=2e, [h,f]=-2f, [e,f]=h.
inline std::unique_ptr<AlgebroidPresentation> make_sl2() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{},
                                                   std::vector<std::string>{"h", "e", "f"});
  P->set_bracket(0, 1, 1, Poly::constant(0, Rational(2)));
  P->set_bracket(0, 2, 2, Poly::constant(0, Rational(-2)));
  P->set_bracket(1, 2, 0, P->one_poly());
  return P;
}

// sl2 with [e,f] = h + e; fails Jacobi on (h,e,f).
inline std::unique_ptr<AlgebroidPresentation> make_sl2_broken() {
  auto P = make_sl2();
  P->set_bracket(1, 2, 1, P->one_poly());
  return P;
}

// [e1,e2] = e3 over a point.
inline std::unique_ptr<AlgebroidPresentation> make_heis() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{},
                                                   std::vector<std::string>{"e1", "e2", "e3"});
  P->set_bracket(0, 1, 2, P->one_poly());
  return P;
}

// Tangent algebroid of the line: rho(e1) = d/dx.
inline std::unique_ptr<AlgebroidPresentation> make_tan1() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1"});
  P->set_anchor(0, 0, P->one_poly());
  return P;
}

// Tangent algebroid of the plane.
inline std::unique_ptr<AlgebroidPresentation> make_tan2() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x", "y"},
                                                   std::vector<std::string>{"e1", "e2"});
  P->set_anchor(0, 0, P->one_poly());
  P->set_anchor(1, 1, P->one_poly());
  return P;
}

// Bundle of aff(1) Lie algebras over the line, zero anchor.
inline std::unique_ptr<AlgebroidPresentation> make_bla() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1", "e2"});
  P->set_bracket(0, 1, 1, P->one_poly());
  return P;
}

// Abelian rank-2 bundle over the line, zero anchor.
inline std::unique_ptr<AlgebroidPresentation> make_ab2_line() {
  return std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                 std::vector<std::string>{"e1", "e2"});
}

// Zero anchor with [e1,e2] = x e2: fiber type jumps at x = 0.
inline std::unique_ptr<AlgebroidPresentation> make_bla_x() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1", "e2"});
  P->set_bracket(0, 1, 1, Poly::variable(1, 0));
  return P;
}

// Transitive over the line: rho(e1)=d/dx, e1 central, [e2,e3]=e3.
inline std::unique_ptr<AlgebroidPresentation> make_ati() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1", "e2", "e3"});
  P->set_anchor(0, 0, P->one_poly());
  P->set_bracket(1, 2, 2, P->one_poly());
  P->kernel_frame = {{P->zero_poly(), P->one_poly(), P->zero_poly()},
                     {P->zero_poly(), P->zero_poly(), P->one_poly()}};
  P->connection = {{P->one_poly(), P->zero_poly(), P->zero_poly()}};
  return P;
}

// Line with a scaling action: rho(e1)=x d/dx, [e1,e2]=e2.
inline std::unique_ptr<AlgebroidPresentation> make_scale_line() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1", "e2"});
  P->set_anchor(0, 0, Poly::variable(1, 0));
  P->set_bracket(0, 1, 1, P->one_poly());
  return P;
}

// TM of the plane plus a central kernel line.
inline std::unique_ptr<AlgebroidPresentation> make_tan2k() {
  auto P = std::make_unique<AlgebroidPresentation>(
      std::vector<std::string>{"x", "y"}, std::vector<std::string>{"e1", "e2", "e3"});
  P->set_anchor(0, 0, P->one_poly());
  P->set_anchor(1, 1, P->one_poly());
  P->kernel_frame = {{P->zero_poly(), P->zero_poly(), P->one_poly()}};
  P->connection = {{P->one_poly(), P->zero_poly(), P->zero_poly()},
                   {P->zero_poly(), P->one_poly(), P->zero_poly()}};
  return P;
}

// Transitive rank 2 over the line where no constant section splits the anchor:
// rho(e1)=(1+x^2) d/dx, rho(e2)=x d/dx, [e1,e2]=e1-2x e2.
inline std::unique_ptr<AlgebroidPresentation> make_tl2() {
  auto P = std::make_unique<AlgebroidPresentation>(std::vector<std::string>{"x"},
                                                   std::vector<std::string>{"e1", "e2"});
  const Poly x = Poly::variable(1, 0);
  P->set_anchor(0, 0, x * x + P->one_poly());
  P->set_anchor(1, 0, x);
  P->set_bracket(0, 1, 0, P->one_poly());
  P->set_bracket(0, 1, 1, x.scaled(Rational(-2)));
  return P;
}

// --- seeded random data for property tests ---

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  return Rational(num(rng), den(rng));
}

inline Poly random_poly(const AlgebroidPresentation& P, std::mt19937_64& rng, int max_deg = 2) {
  const int m = P.base_dim();
  Poly f(m);
  if (m == 0) return Poly::constant(0, random_rational(rng));
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> var(0, m - 1);
  std::uniform_int_distribution<int> nterms(1, 3);
  const int t = nterms(rng);
  for (int s = 0; s < t; ++s) {
    Monomial mono(m, 0);
    const int d = deg(rng);
    for (int u = 0; u < d; ++u) ++mono[var(rng)];
    f.add_term(mono, random_rational(rng));
  }
  return f;
}

inline Multivector random_multivector(const AlgebroidPresentation& P, std::mt19937_64& rng,
                                      int degree, int max_deg = 2) {
  Multivector v(&P, degree);
  if (degree > P.rank()) return v;
  std::uniform_int_distribution<int> idx(0, P.rank() - 1);
  std::uniform_int_distribution<int> nterms(1, 3);
  const int t = nterms(rng);
  for (int s = 0; s < t; ++s) {
    IndexTuple word(degree);
    for (int u = 0; u < degree; ++u) word[u] = idx(rng);
    v.add_word(word, random_poly(P, rng, max_deg));
  }
  return v;
}

}  // namespace lagtest
