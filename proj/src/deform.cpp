#include "lag/deform.hpp"

#include <algorithm>
#include <sstream>

#include "lag/error.hpp"

namespace lag {

namespace {

bool strictly_increasing(const IndexTuple& t) {
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] >= t[i]) return false;
  return true;
}

bool non_decreasing(const IndexTuple& t) {
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] > t[i]) return false;
  return true;
}

}  // namespace

MultiDerivation::MultiDerivation(const AlgebroidPresentation* host, int n, int p)
    : host_(host), n_(n), p_(p) {
  if (n < -1 || p < -1) fail(Errc::bad_input, "bidegree out of range");
}

MultiDerivation MultiDerivation::element(const Multivector& v) {
  MultiDerivation d(v.host(), -1, v.degree() - 1);
  d.set_value({}, {}, v);
  return d;
}

MultiDerivation MultiDerivation::schouten_structure(const AlgebroidPresentation* host) {
  MultiDerivation m(host, 1, 0);
  for (int i = 0; i < host->rank(); ++i)
    for (int j = i + 1; j < host->rank(); ++j)
      m.set_value({i, j}, {},
                  schouten(Multivector::frame(host, i), Multivector::frame(host, j)));
  for (int i = 0; i < host->rank(); ++i)
    for (int a = 0; a < host->base_dim(); ++a)
      m.set_value({i}, {a}, Multivector::scalar(host, host->anchor(i, a)));
  return m;
}

void MultiDerivation::check_key(const IndexTuple& frames, const IndexTuple& coords) const {
  const int i = static_cast<int>(coords.size());
  if (i > max_function_slots() || static_cast<int>(frames.size()) != n_ + 1 - i)
    fail(Errc::size_mismatch, "table key shape for bidegree (" + std::to_string(n_) + "," +
                                  std::to_string(p_) + ")");
  if (!strictly_increasing(frames) || !non_decreasing(coords))
    fail(Errc::bad_index, "table key not canonical");
  for (int j : frames)
    if (j < 0 || j >= host_->rank()) fail(Errc::bad_index, "frame index " + std::to_string(j));
  for (int a : coords)
    if (a < 0 || a >= host_->base_dim()) fail(Errc::bad_index, "coord index " + std::to_string(a));
}

void MultiDerivation::set_value(const IndexTuple& frames, const IndexTuple& coords,
                                const Multivector& value) {
  check_key(frames, coords);
  value.check_host(host_);
  const int i = static_cast<int>(coords.size());
  if (!value.is_zero() && value.degree() != p_ + 1 - i)
    fail(Errc::degree_mismatch, "table value degree");
  MdKey k{frames, coords};
  if (value.is_zero())
    tables_.erase(k);
  else
    tables_[std::move(k)] = value;
}

Multivector MultiDerivation::value(const IndexTuple& frames, const IndexTuple& coords) const {
  check_key(frames, coords);
  auto it = tables_.find(MdKey{frames, coords});
  if (it != tables_.end()) return it->second;
  return Multivector(host_, p_ + 1 - static_cast<int>(coords.size()));
}

Multivector MultiDerivation::element_value() const {
  if (n_ != -1) fail(Errc::bad_input, "element value of a positive-arity multiderivation");
  return value({}, {});
}

MultiDerivation MultiDerivation::operator-() const {
  MultiDerivation r(host_, n_, p_);
  for (const auto& [k, v] : tables_) r.tables_.emplace(k, -v);
  return r;
}

MultiDerivation& MultiDerivation::operator+=(const MultiDerivation& o) {
  if (host_ == nullptr) return *this = o;
  if (o.host_ != host_) fail(Errc::host_mismatch, "multiderivation sum");
  if (o.n_ != n_ || o.p_ != p_) fail(Errc::degree_mismatch, "multiderivation sum bidegree");
  for (const auto& [k, v] : o.tables_) {
    auto it = tables_.find(k);
    if (it == tables_.end()) {
      tables_.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) tables_.erase(it);
    }
  }
  return *this;
}

MultiDerivation& MultiDerivation::operator-=(const MultiDerivation& o) { return *this += -o; }

MultiDerivation MultiDerivation::scaled(const Rational& c) const {
  MultiDerivation r(host_, n_, p_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : tables_) r.tables_.emplace(k, v.scaled(c));
  return r;
}

bool operator==(const MultiDerivation& a, const MultiDerivation& b) {
  return a.n_ == b.n_ && a.p_ == b.p_ && a.tables_ == b.tables_;
}

std::string MultiDerivation::render() const {
  std::ostringstream os;
  os << "bidegree (" << n_ << "," << p_ << ")";
  if (tables_.empty()) os << " zero";
  for (const auto& [k, v] : tables_) {
    os << "\n  D(";
    bool first = true;
    for (int j : k.frames) {
      if (!first) os << ",";
      first = false;
      os << host_->frame_name(j);
    }
    if (!k.coords.empty()) {
      os << "; ";
      first = true;
      for (int a : k.coords) {
        if (!first) os << ",";
        first = false;
        os << host_->coord_name(a);
      }
    }
    os << ") = " << v.render();
  }
  return os.str();
}

namespace {

// One argument slot during Leibniz expansion: the content c * e_{word}.
struct Slot {
  Poly c;
  IndexTuple word;
};

int shifted_deg(const Slot& s) { return static_cast<int>(s.word.size()) - 1; }

bool reduced(const Slot& s) {
  if (s.word.empty()) return true;  // function slot, expanded at the base case
  return s.word.size() == 1 && s.c.is_constant();
}

Multivector eval_slots(const MultiDerivation& D, std::vector<Slot> slots, EvalStrategy strategy) {
  const auto* P = D.host();
  int total = 0;
  for (const auto& s : slots) total += static_cast<int>(s.word.size());
  const int out_deg = total + D.p() - D.n();
  if (out_deg < 0) return Multivector(P, 0);
  Multivector acc(P, out_deg);
  for (const auto& s : slots)
    if (s.c.is_zero()) return acc;

  int pick = -1;
  if (strategy == EvalStrategy::right_fold) {
    for (int t = static_cast<int>(slots.size()) - 1; t >= 0; --t)
      if (!reduced(slots[t])) {
        pick = t;
        break;
      }
  } else {
    for (size_t t = 0; t < slots.size(); ++t)
      if (!reduced(slots[t])) {
        pick = static_cast<int>(t);
        break;
      }
  }

  if (pick >= 0) {
    // Bring the chosen slot last; each adjacent transposition of contents X,Y
    // contributes -(-1)^{sd(X) sd(Y)}.
    int sign = 1;
    for (int t = pick; t + 1 < static_cast<int>(slots.size()); ++t) {
      const int e = shifted_deg(slots[t]) * shifted_deg(slots[t + 1]);
      sign *= -((e % 2 + 2) % 2 == 0 ? 1 : -1);
      std::swap(slots[t], slots[t + 1]);
    }
    Slot last = slots.back();
    const int r = static_cast<int>(last.word.size());
    const int g = (total - r) + D.p() - D.n();
    const int fr = last.word[r - 1];
    // D(..., Z ^ e_fr) = D(..., Z) ^ e_fr + (-1)^{|Z| g} Z ^ D(..., e_fr)
    slots.back() = Slot{last.c, IndexTuple(last.word.begin(), last.word.end() - 1)};
    Multivector t1 = eval_slots(D, slots, strategy);
    if (!t1.is_zero()) acc += wedge(t1, Multivector::frame(P, fr)).scaled(Rational(sign));
    slots.back() = Slot{P->one_poly(), {fr}};
    Multivector t2 = eval_slots(D, slots, strategy);
    if (!t2.is_zero()) {
      Multivector z(P, r - 1);
      z.add_word(IndexTuple(last.word.begin(), last.word.end() - 1), last.c);
      const int e = (r - 1) * g;
      const int s2 = sign * (((e % 2 + 2) % 2 == 0) ? 1 : -1);
      acc += wedge(z, t2).scaled(Rational(s2));
    }
    return acc;
  }

  // Base case: single-frame slots with constant coefficients plus function
  // slots. Functions commute with each other and anticommute past frames.
  int sign = 1;
  Rational scalar(1);
  IndexTuple frames;
  std::vector<Poly> funcs;
  for (const auto& s : slots) {
    if (s.word.empty()) {
      funcs.push_back(s.c);
    } else {
      if (funcs.size() % 2 == 1) sign = -sign;
      scalar *= s.c.constant_value();
      frames.push_back(s.word[0]);
    }
  }
  const int fsign = sort_word(frames);
  if (fsign == 0) return acc;
  sign *= fsign;
  const int i = static_cast<int>(funcs.size());
  if (i > D.p() + 1) return acc;

  // Derivation expansion of every function slot over coordinates; over a point
  // base every function is constant and any function slot kills the value.
  const int m = P->base_dim();
  if (i > 0 && m == 0) return acc;
  std::vector<int> assign(i, 0);
  while (true) {
    Poly coeff = Poly::constant(m, scalar * Rational(sign));
    for (int t = 0; t < i && !coeff.is_zero(); ++t) coeff *= funcs[t].derive(assign[t]);
    if (!coeff.is_zero()) {
      IndexTuple coords(assign.begin(), assign.end());
      std::sort(coords.begin(), coords.end());
      Multivector val = D.value(frames, coords);
      if (!val.is_zero()) acc += val.scaled(coeff);
    }
    int t = i - 1;
    while (t >= 0 && assign[t] == m - 1) assign[t--] = 0;
    if (t < 0) break;
    ++assign[t];
  }
  return acc;
}

}  // namespace

Multivector evaluate(const MultiDerivation& D, const std::vector<Multivector>& args,
                     EvalStrategy strategy) {
  if (static_cast<int>(args.size()) != D.n() + 1)
    fail(Errc::arity, "expected " + std::to_string(D.n() + 1) + " arguments, got " +
                          std::to_string(args.size()));
  int total = 0;
  for (const auto& x : args) {
    x.check_host(D.host());
    total += x.degree();
  }
  Multivector acc(D.host(), std::max(0, total + D.p() - D.n()));
  // Multilinear expansion over the terms of every argument.
  std::vector<Slot> slots(args.size());
  std::vector<std::map<IndexTuple, Poly>::const_iterator> pos(args.size());
  for (size_t t = 0; t < args.size(); ++t) {
    if (args[t].is_zero()) return acc;
    pos[t] = args[t].terms().begin();
  }
  while (true) {
    for (size_t t = 0; t < args.size(); ++t) slots[t] = Slot{pos[t]->second, pos[t]->first};
    Multivector v = eval_slots(D, slots, strategy);
    if (!v.is_zero()) acc += v;
    int t = static_cast<int>(args.size()) - 1;
    while (t >= 0) {
      ++pos[t];
      if (pos[t] != args[t].terms().end()) break;
      pos[t] = args[t].terms().begin();
      --t;
    }
    if (t < 0) break;
  }
  return acc;
}

std::vector<Permutation> shuffles(int a, int b) {
  std::vector<Permutation> out;
  const int total = a + b;
  std::vector<int> pickmask(total, 0);
  std::fill(pickmask.begin(), pickmask.begin() + a, 1);
  // Enumerate all a-subsets via the descending mask order of std::prev_permutation.
  std::sort(pickmask.begin(), pickmask.end(), std::greater<int>());
  do {
    Permutation perm;
    for (int t = 0; t < total; ++t)
      if (pickmask[t]) perm.push_back(t);
    for (int t = 0; t < total; ++t)
      if (!pickmask[t]) perm.push_back(t);
    out.push_back(std::move(perm));
  } while (std::prev_permutation(pickmask.begin(), pickmask.end()));
  return out;
}

int permutation_sign(const Permutation& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

int koszul_sign(const Permutation& perm, const std::vector<int>& shifted_degrees) {
  if (perm.size() != shifted_degrees.size()) fail(Errc::size_mismatch, "koszul sign inputs");
  int e = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) e += shifted_degrees[perm[i]] * shifted_degrees[perm[j]];
  return (e % 2 + 2) % 2 == 0 ? 1 : -1;
}

namespace {

// (D o E)(args) with the shuffle sum; degenerate arities handled as documented.
Multivector compose_eval(const MultiDerivation& D, const MultiDerivation& E,
                         const std::vector<Multivector>& args) {
  const auto* P = D.host();
  int total = 0;
  for (const auto& x : args) total += x.degree();
  const int out_deg = std::max(0, total + D.p() + E.p() - D.n() - E.n());
  Multivector acc(P, out_deg);
  if (D.n() == -1) return acc;
  if (E.n() == -1) {
    const Multivector inner = E.element_value();
    if (inner.is_zero()) return acc;
    std::vector<Multivector> outer;
    outer.reserve(args.size() + 1);
    outer.push_back(inner);
    for (const auto& x : args) outer.push_back(x);
    Multivector v = evaluate(D, outer);
    if (!v.is_zero()) acc += v;
    return acc;
  }
  std::vector<int> sdeg(args.size());
  for (size_t t = 0; t < args.size(); ++t) sdeg[t] = args[t].degree() - 1;
  for (const auto& sigma : shuffles(E.n() + 1, D.n())) {
    const int sign = permutation_sign(sigma) * koszul_sign(sigma, sdeg);
    std::vector<Multivector> inner_args;
    for (int t = 0; t <= E.n(); ++t) inner_args.push_back(args[sigma[t]]);
    Multivector inner = evaluate(E, inner_args);
    if (inner.is_zero()) continue;
    std::vector<Multivector> outer;
    outer.push_back(inner);
    for (int t = E.n() + 1; t <= D.n() + E.n(); ++t) outer.push_back(args[sigma[t]]);
    Multivector v = evaluate(D, outer);
    if (!v.is_zero()) acc += v.scaled(Rational(sign));
  }
  return acc;
}

int parity_sign(int e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

MultiDerivation gerstenhaber(const MultiDerivation& D, const MultiDerivation& E, int max_n) {
  if (D.host() != E.host()) fail(Errc::host_mismatch, "gerstenhaber operands");
  const auto* P = D.host();
  if (D.n() == -1 && E.n() == -1) {
    // Both composites vanish identically; take the derived bracket, which lands
    // back in the n = -1 row as minus the Schouten bracket of the two values.
    return MultiDerivation::element(-schouten(D.element_value(), E.element_value()));
  }
  const int n2 = D.n() + E.n();
  const int p2 = std::max(-1, D.p() + E.p());
  if (n2 > max_n)
    fail(Errc::bad_input, "bracket arity " + std::to_string(n2) + " exceeds cap " +
                              std::to_string(max_n));
  MultiDerivation out(P, n2, p2);
  const int sDE = parity_sign(D.n() * E.n());
  const int sED = parity_sign(D.p() * E.p());
  for (int i = 0; i <= out.max_function_slots(); ++i) {
    if (p2 + 1 - i > P->rank()) continue;  // value degree beyond the rank: identically zero
    const int nf = n2 + 1 - i;
    // All strictly increasing frame tuples and non-decreasing coordinate tuples.
    IndexTuple frames(nf);
    for (int t = 0; t < nf; ++t) frames[t] = t;
    bool frames_ok = nf <= P->rank();
    while (frames_ok) {
      IndexTuple coords(i, 0);
      bool coords_ok = i == 0 || P->base_dim() > 0;
      while (coords_ok) {
        std::vector<Multivector> args;
        for (int j : frames) args.push_back(Multivector::frame(P, j));
        for (int a : coords) args.push_back(Multivector::scalar(P, Poly::variable(P->base_dim(), a)));
        Multivector val = compose_eval(D, E, args).scaled(Rational(sDE)) -
                          compose_eval(E, D, args).scaled(Rational(sED));
        out.set_value(frames, coords, val);
        if (i == 0) break;
        int t = i - 1;
        while (t >= 0 && coords[t] == P->base_dim() - 1) --t;
        if (t < 0) break;
        ++coords[t];
        for (int u = t + 1; u < i; ++u) coords[u] = coords[t];
      }
      if (nf == 0) break;
      int t = nf - 1;
      while (t >= 0 && frames[t] == P->rank() - (nf - t)) --t;
      if (t < 0) break;
      ++frames[t];
      for (int u = t + 1; u < nf; ++u) frames[u] = frames[u - 1] + 1;
    }
  }
  return out;
}

MultiDerivation deformation_coboundary(const MultiDerivation& D, int max_n) {
  return gerstenhaber(MultiDerivation::schouten_structure(D.host()), D, max_n);
}

CocycleReport is_cocycle(const MultiDerivation& D) {
  if (D.n() != 0) fail(Errc::bad_input, "cocycle test requires arity-one bidegree (0,p)");
  CocycleReport rep;
  const MultiDerivation bd = deformation_coboundary(D);
  for (const auto& [k, v] : bd.tables()) {
    rep.ok = false;
    rep.residuals.push_back({k, v});
  }
  return rep;
}

}  // namespace lag
