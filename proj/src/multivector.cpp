#include "lag/multivector.hpp"

#include <sstream>

#include "lag/error.hpp"

namespace lag {

int sort_word(IndexTuple& word) {
  int sign = 1;
  for (size_t i = 1; i < word.size(); ++i)
    for (size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
      std::swap(word[j], word[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1]) return 0;
  return sign;
}

Multivector::Multivector(const AlgebroidPresentation* host, int degree)
    : host_(host), degree_(degree) {
  if (!host) fail(Errc::bad_input, "multivector without host presentation");
  if (degree < 0) fail(Errc::degree_mismatch, "negative multivector degree");
}

Multivector Multivector::scalar(const AlgebroidPresentation* host, const Poly& f) {
  Multivector v(host, 0);
  v.add_word({}, f);
  return v;
}

Multivector Multivector::frame(const AlgebroidPresentation* host, int i) {
  Multivector v(host, 1);
  v.add_word({i}, host->one_poly());
  return v;
}

Multivector Multivector::wedge_basis(const AlgebroidPresentation* host, const IndexTuple& idx) {
  Multivector v(host, int(idx.size()));
  v.add_word(idx, host->one_poly());
  return v;
}

Poly Multivector::coeff(const IndexTuple& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Poly(host_->base_dim()) : it->second;
}

void Multivector::add_word(IndexTuple word, const Poly& c) {
  if (int(word.size()) != degree_) fail(Errc::degree_mismatch, "word length vs degree");
  if (c.is_zero()) return;
  for (int i : word)
    if (i < 0 || i >= host_->rank()) fail(Errc::bad_index, "frame index out of range");
  int sign = sort_word(word);
  if (sign == 0) return;
  Poly add = sign < 0 ? -c : c;
  auto [it, inserted] = terms_.emplace(std::move(word), add);
  if (!inserted) {
    it->second += add;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Multivector::check_host(const AlgebroidPresentation* host) const {
  if (host_ != host) fail(Errc::host_mismatch, "multivectors over different presentations");
}

Multivector Multivector::operator-() const {
  Multivector r(host_, degree_);
  for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
  return r;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  // The zero section is degree-agnostic: recursive Leibniz expansions produce
  // vanishing branches whose nominal degree differs from the target's.
  if (o.is_zero()) return *this;
  o.check_host(host_);
  if (is_zero()) return *this = o;
  if (degree_ != o.degree_) fail(Errc::degree_mismatch, "adding different degrees");
  for (const auto& [idx, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) { return *this += -o; }

bool operator==(const Multivector& a, const Multivector& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  return a.host_ == b.host_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Multivector Multivector::scaled(const Poly& f) const {
  Multivector r(host_, degree_);
  if (f.is_zero()) return r;
  for (const auto& [idx, c] : terms_) {
    Poly v = c * f;
    if (!v.is_zero()) r.terms_.emplace(idx, std::move(v));
  }
  return r;
}

Multivector Multivector::scaled(const Rational& c) const {
  return scaled(Poly::constant(host_->base_dim(), c));
}

int Multivector::coeff_degree() const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, c.degree());
  return d;
}

std::string Multivector::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    // Pull a leading sign out when the coefficient is a single term.
    Poly coeff = c;
    bool negated = false;
    if (coeff.terms().size() == 1 && coeff.terms().begin()->second.sign() < 0) {
      coeff = -coeff;
      negated = true;
    }
    if (first) {
      if (negated) os << "-";
    } else {
      os << (negated ? " - " : " + ");
    }
    first = false;
    bool need_coeff = !(coeff.terms().size() == 1 && coeff.is_constant() &&
                        coeff.constant_value().is_one() && !idx.empty());
    bool wrote = false;
    if (need_coeff) {
      std::string cs = coeff.render(host_->coords());
      bool atomic = coeff.terms().size() <= 1;
      if (!atomic && !idx.empty()) os << "(" << cs << ")";
      else os << cs;
      wrote = true;
    }
    for (int i : idx) {
      if (wrote) os << "*";
      wrote = true;
      os << host_->frame_name(i);
    }
  }
  return os.str();
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  b.check_host(a.host());
  Multivector r(a.host(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple w = ia;
      w.insert(w.end(), ib.begin(), ib.end());
      r.add_word(std::move(w), ca * cb);
    }
  return r;
}

namespace {

// Bracket of two monomial terms f*e_I and g*e_J, recursive on the design rules.
Multivector sch_term(const AlgebroidPresentation* P, const Poly& f, const IndexTuple& I,
                     const Poly& g, const IndexTuple& J) {
  auto mono = [&](const Poly& c, const IndexTuple& idx) {
    Multivector v(P, int(idx.size()));
    v.add_word(idx, c);
    return v;
  };
  if (I.empty() && J.empty()) return Multivector(P, 0);  // [f, g] = 0
  if (I.empty()) {
    // [f, Y] = -(-1)^{|Y|-1} [Y, f]
    Multivector r = sch_term(P, g, J, f, {});
    return (int(J.size()) - 1) % 2 == 0 ? -r : r;
  }
  if (J.empty()) {
    if (I.size() == 1 && f.is_constant()) {
      // [c*e_i, g] = c * rho(e_i) g
      return Multivector::scalar(P, P->anchor_apply(I[0], g).scaled(f.constant_value()));
    }
    // Peel the first argument: X = U^V with V the last frame leg, W = g a function:
    // [U^V, g] = -[U, g]^V + U^[V, g]   (from [U^V,W] = (-1)^{(|W|-1)|V|}[U,W]^V + U^[V,W])
    IndexTuple Iu(I.begin(), I.end() - 1);
    IndexTuple V{I.back()};
    Multivector t1 = wedge(sch_term(P, f, Iu, g, {}), mono(P->one_poly(), V));
    Multivector t2 = wedge(mono(f, Iu), sch_term(P, P->one_poly(), V, g, {}));
    return -t1 + t2;
  }
  if (J.size() == 1 && g.is_constant()) {
    if (I.size() == 1 && f.is_constant()) {
      std::vector<Poly> blk = P->frame_bracket(I[0], J[0]);
      Multivector r(P, 1);
      for (int k = 0; k < P->rank(); ++k) r.add_word({k}, blk[k].scaled(f.constant_value() * g.constant_value()));
      return r;
    }
    // [U^V, e_j] = [U, e_j]^V + U^[V, e_j]  (sign exponent (|W|-1)|V| = 0)
    IndexTuple Iu(I.begin(), I.end() - 1);
    IndexTuple V{I.back()};
    Multivector t1 = wedge(sch_term(P, f, Iu, g, J), mono(P->one_poly(), V));
    Multivector t2 = wedge(mono(f, Iu), sch_term(P, P->one_poly(), V, g, J));
    return t1 + t2;
  }
  // Peel the second argument: Y^Z with Z = last frame leg of g*e_J:
  // [X, Y^Z] = [X,Y]^Z + (-1)^{(|X|-1)|Y|} Y^[X,Z]
  IndexTuple Jy(J.begin(), J.end() - 1);
  IndexTuple Z{J.back()};
  Multivector t1 = wedge(sch_term(P, f, I, g, Jy), mono(P->one_poly(), Z));
  Multivector t2 = wedge(mono(g, Jy), sch_term(P, f, I, P->one_poly(), Z));
  int expo = (int(I.size()) - 1) * int(Jy.size());
  return expo % 2 == 0 ? t1 + t2 : t1 - t2;
}

}  // namespace

Multivector schouten(const Multivector& x, const Multivector& y) {
  y.check_host(x.host());
  const AlgebroidPresentation* P = x.host();
  int deg = x.degree() + y.degree() - 1;
  Multivector acc(P, deg < 0 ? 0 : deg);
  for (const auto& [I, f] : x.terms())
    for (const auto& [J, g] : y.terms()) acc += sch_term(P, f, I, g, J);
  return acc;
}

Multivector contract_rho_df(const Multivector& x, const Poly& f) {
  const AlgebroidPresentation* P = x.host();
  if (x.degree() == 0) return Multivector(P, 0);
  Multivector r(P, x.degree() - 1);
  for (const auto& [idx, c] : x.terms()) {
    for (size_t s = 0; s < idx.size(); ++s) {
      Poly pairing = P->anchor_apply(idx[s], f);  // <rho* df, e_{idx[s]}>
      if (pairing.is_zero()) continue;
      IndexTuple rest;
      for (size_t t = 0; t < idx.size(); ++t)
        if (t != s) rest.push_back(idx[t]);
      Poly v = c * pairing;
      if (s % 2 == 1) v = -v;
      r.add_word(std::move(rest), v);
    }
  }
  return r;
}

}  // namespace lag
