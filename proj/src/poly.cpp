#include "lag/poly.hpp"

#include <algorithm>
#include <sstream>

namespace lag {

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

bool GrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da > db;
  return a > b;  // lexicographic on exponent vectors, earlier variables dominate
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) fail(Errc::bad_index, "variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  return monomial(nvars, m, Rational(1));
}

Poly Poly::monomial(int nvars, const Monomial& m, const Rational& c) {
  if (int(m.size()) != nvars) fail(Errc::size_mismatch, "monomial length");
  Poly p(nvars);
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) fail(Errc::bad_input, "constant_value of non-constant polynomial");
  return terms_.begin()->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  // Leading term has maximal degree under graded lex.
  return int(monomial_degree(terms_.begin()->first));
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (int(m.size()) != nvars_) fail(Errc::size_mismatch, "monomial length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compat(const Poly& o) const {
  if (nvars_ != o.nvars_) fail(Errc::size_mismatch, "polynomials over different bases");
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_compat(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compat(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compat(b);
  Poly r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(nvars_, Rational(1));
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

Poly Poly::derive(int var) const {
  if (var < 0 || var >= nvars_) fail(Errc::bad_index, "derivative index out of range");
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(long(m[var])));
  }
  return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  if (int(x.size()) != nvars_) fail(Errc::size_mismatch, "evaluation point dimension");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= x[i];
    acc += t;
  }
  return acc;
}

std::string Poly::render(const std::vector<std::string>& names) const {
  if (int(names.size()) != nvars_) fail(Errc::size_mismatch, "name list length");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    bool has_vars = monomial_degree(m) > 0;
    bool wrote_coeff = false;
    if (!a.is_one() || !has_vars) {
      os << a.str();
      wrote_coeff = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (wrote_coeff) os << "*";
      wrote_coeff = true;
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace lag
