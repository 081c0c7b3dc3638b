#include "lag/mixed_tensor.hpp"

#include <sstream>

#include "lag/error.hpp"

namespace lag {

MixedTensor::MixedTensor(const AlgebroidPresentation* host) : host_(host) {}

MixedTensor MixedTensor::from_multivector(const Multivector& v) {
  MixedTensor w(v.host());
  for (const auto& [word, c] : v.terms()) w.add_term(MixedKey{{}, word}, c);
  return w;
}

MixedTensor MixedTensor::tm_basis(const AlgebroidPresentation* host, int a) {
  if (a < 0 || a >= host->base_dim()) fail(Errc::bad_index, "tm basis index " + std::to_string(a));
  MixedTensor w(host);
  w.add_term(MixedKey{{a}, {}}, host->one_poly());
  return w;
}

Poly MixedTensor::coeff(const MixedKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? host_->zero_poly() : it->second;
}

void MixedTensor::add_term(MixedKey k, const Poly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MixedTensor::add_word(const std::vector<Leg>& word, const Poly& c) {
  if (c.is_zero()) return;
  // Insertion sort over all-odd legs: TM before frame, indices ascending.
  std::vector<Leg> w = word;
  int sign = 1;
  auto before = [](const Leg& p, const Leg& q) {
    if (p.is_tm != q.is_tm) return p.is_tm;
    return p.idx < q.idx;
  };
  for (size_t i = 1; i < w.size(); ++i) {
    size_t j = i;
    while (j > 0 && before(w[j], w[j - 1])) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
      --j;
    }
  }
  MixedKey k;
  for (const auto& l : w) {
    auto& side = l.is_tm ? k.tm : k.fr;
    if (!side.empty() && side.back() == l.idx) return;  // repeated leg
    side.push_back(l.idx);
  }
  add_term(std::move(k), sign > 0 ? c : -c);
}

MixedTensor MixedTensor::operator-() const {
  MixedTensor r(host_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

MixedTensor& MixedTensor::operator+=(const MixedTensor& o) {
  if (host_ == nullptr) host_ = o.host_;
  o.check_host(host_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MixedTensor& MixedTensor::operator-=(const MixedTensor& o) {
  if (host_ == nullptr) host_ = o.host_;
  o.check_host(host_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

bool operator==(const MixedTensor& a, const MixedTensor& b) {
  return a.terms_ == b.terms_;
}

MixedTensor MixedTensor::scaled(const Poly& f) const {
  MixedTensor r(host_);
  for (const auto& [k, c] : terms_) r.add_term(k, c * f);
  return r;
}

MixedTensor MixedTensor::scaled(const Rational& c) const {
  MixedTensor r(host_);
  for (const auto& [k, v] : terms_) r.add_term(k, v.scaled(c));
  return r;
}

Multivector MixedTensor::pure_a_part(int degree) const {
  Multivector out(host_, degree);
  for (const auto& [k, c] : terms_) {
    if (!k.tm.empty() || static_cast<int>(k.fr.size()) != degree)
      fail(Errc::degree_mismatch, "term of shape (" + std::to_string(k.tm.size()) + "," +
                                      std::to_string(k.fr.size()) + ") in pure frame extraction");
    out.add_word(k.fr, c);
  }
  return out;
}

bool MixedTensor::has_tm_leg() const {
  for (const auto& [k, c] : terms_)
    if (!k.tm.empty()) return true;
  return false;
}

std::string MixedTensor::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string mono;
    for (int a : k.tm) mono += (mono.empty() ? "" : "^") + ("d/d" + host_->coords()[a]);
    for (int i : k.fr) mono += (mono.empty() ? "" : "^") + host_->frame()[i];
    std::string cs = c.render(host_->coords());
    if (!first) os << " + ";
    first = false;
    if (mono.empty()) {
      os << cs;
    } else if (cs == "1") {
      os << mono;
    } else if (cs == "-1") {
      os << "-" << mono;
    } else if (c.terms().size() == 1) {
      os << cs << "*" << mono;
    } else {
      os << "(" << cs << ")*" << mono;
    }
  }
  return os.str();
}

void MixedTensor::check_host(const AlgebroidPresentation* host) const {
  if (host_ != nullptr && host_ != host) fail(Errc::host_mismatch, "mixed tensor host");
}

MixedTensor mixed_wedge(const MixedTensor& a, const MixedTensor& b) {
  a.check_host(b.host());
  MixedTensor r(a.host() ? a.host() : b.host());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<Leg> word;
      for (int t : ka.tm) word.push_back({true, t});
      for (int i : ka.fr) word.push_back({false, i});
      for (int t : kb.tm) word.push_back({true, t});
      for (int i : kb.fr) word.push_back({false, i});
      r.add_word(word, ca * cb);
    }
  }
  return r;
}

MixedTensor contract_dx(const MixedTensor& w, int a) {
  MixedTensor r(w.host());
  for (const auto& [k, c] : w.terms()) {
    for (size_t s = 0; s < k.tm.size(); ++s) {
      if (k.tm[s] != a) continue;
      MixedKey nk = k;
      nk.tm.erase(nk.tm.begin() + s);
      r.add_term(std::move(nk), (s % 2 == 0) ? c : -c);
      break;  // strictly increasing: at most one match
    }
  }
  return r;
}

MixedTensor contract_rho_dx(const MixedTensor& w, int a) {
  const auto* P = w.host();
  MixedTensor r(P);
  for (const auto& [k, c] : w.terms()) {
    for (size_t s = 0; s < k.fr.size(); ++s) {
      const Poly pairing = P->anchor(k.fr[s], a);
      if (pairing.is_zero()) continue;
      MixedKey nk = k;
      nk.fr.erase(nk.fr.begin() + s);
      const size_t pos = k.tm.size() + s;  // frame legs sit after all TM legs
      r.add_term(std::move(nk), (pos % 2 == 0) ? c * pairing : -(c * pairing));
    }
  }
  return r;
}

MixedTensor contract_df(const MixedTensor& w, const Poly& f) {
  MixedTensor r(w.host());
  for (int a = 0; a < w.host()->base_dim(); ++a) {
    const Poly da = f.derive(a);
    if (!da.is_zero()) r += contract_dx(w, a).scaled(da);
  }
  return r;
}

MixedTensor contract_rho_star_df(const MixedTensor& w, const Poly& f) {
  MixedTensor r(w.host());
  for (int a = 0; a < w.host()->base_dim(); ++a) {
    const Poly da = f.derive(a);
    if (!da.is_zero()) r += contract_rho_dx(w, a).scaled(da);
  }
  return r;
}

MixedTensor d_rho(const MixedTensor& w) {
  const auto* P = w.host();
  MixedTensor r(P);
  // Even derivation: e_j -> rho(e_j), d/dx_a -> 0, no Koszul signs.
  for (const auto& [k, c] : w.terms()) {
    for (size_t s = 0; s < k.fr.size(); ++s) {
      const int j = k.fr[s];
      for (int a = 0; a < P->base_dim(); ++a) {
        const Poly& coef = P->anchor(j, a);
        if (coef.is_zero()) continue;
        std::vector<Leg> word;
        for (int t : k.tm) word.push_back({true, t});
        for (size_t u = 0; u < k.fr.size(); ++u) {
          if (u == s)
            word.push_back({true, a});
          else
            word.push_back({false, k.fr[u]});
        }
        r.add_word(word, c * coef);
      }
    }
  }
  return r;
}

RhoTensor RhoTensor::zero(const AlgebroidPresentation* host, int k) {
  RhoTensor pi;
  pi.host = host;
  pi.k = k;
  pi.comp.assign(host->base_dim(), Multivector(host, k - 1));
  return pi;
}

MixedTensor RhoTensor::to_mixed() const {
  MixedTensor w(host);
  for (size_t a = 0; a < comp.size(); ++a) {
    for (const auto& [word, c] : comp[a].terms()) {
      MixedKey k;
      k.tm = {static_cast<int>(a)};
      k.fr = word;
      w.add_term(std::move(k), c);
    }
  }
  return w;
}

bool RhoTensor::is_zero() const {
  for (const auto& v : comp)
    if (!v.is_zero()) return false;
  return true;
}

RhoCompatReport rho_compat_check(const RhoTensor& pi) {
  RhoCompatReport rep;
  const int m = pi.host->base_dim();
  const Poly one = pi.host->one_poly();
  auto coord = [&](int a) { return Poly::variable(m, a); };
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      Multivector res =
          contract_rho_df(pi.comp[b], coord(a)) + contract_rho_df(pi.comp[a], coord(b));
      if (!res.is_zero()) {
        rep.ok = false;
        rep.residuals.push_back({a, b, res});
      }
    }
  }
  return rep;
}

RhoTensor d_rho_tau(const Multivector& tau) {
  const auto* P = tau.host();
  RhoTensor pi;
  pi.host = P;
  pi.k = tau.degree();
  const MixedTensor mixed = d_rho(MixedTensor::from_multivector(tau));
  for (int a = 0; a < P->base_dim(); ++a)
    pi.comp.push_back(contract_dx(mixed, a).pure_a_part(tau.degree() - 1));
  return pi;
}

MixedTensor b_pi(const RhoTensor& pi) {
  MixedTensor acc = pi.to_mixed();
  MixedTensor sum = acc;
  for (int j = 1; j < pi.k; ++j) {
    // acc = (-1)^j / (j+1)! D_rho^j pi, built incrementally.
    acc = d_rho(acc).scaled(Rational(-1, j + 1));
    sum += acc;
  }
  return sum;
}

MixedTensor inv_star(const MixedTensor& w) {
  // exp(-D_rho) after multiplying each component by (-1)^{#frame legs}.
  MixedTensor parity(w.host());
  for (const auto& [k, c] : w.terms())
    parity.add_term(k, (k.fr.size() % 2 == 0) ? c : -c);
  MixedTensor term = parity;
  MixedTensor sum = parity;
  int j = 1;
  while (!term.is_zero()) {
    term = d_rho(term).scaled(Rational(-1, j));
    sum += term;
    ++j;
  }
  return sum;
}

}  // namespace lag
