#include "lag/linsolve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "lag/error.hpp"

namespace lag {

std::vector<Monomial> monomials_up_to(int nvars, int d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    out.push_back(Monomial{});
    return out;
  }
  // Group by total degree so the order is graded; within a degree, recurse on
  // the exponent of the first variable (descending), which matches grlex.
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<Monomial> level;
    Monomial cur(nvars, 0);
    // Odometer over exponent vectors of total degree == deg.
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1) {
        cur[var] = unsigned(left);
        level.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[var] = unsigned(e);
        rec(var + 1, left - e);
      }
    };
    rec(0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<IndexTuple> words_of_length(int n, int k) {
  std::vector<IndexTuple> out;
  if (k < 0 || k > n) return out;
  IndexTuple w(k);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k) {
      out.push_back(w);
      return;
    }
    for (int i = start; i <= n - (k - pos); ++i) {
      w[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<Multivector> multivector_basis(const AlgebroidPresentation* host, int degree,
                                           int d) {
  std::vector<Multivector> out;
  const auto words = words_of_length(host->rank(), degree);
  const auto monos = monomials_up_to(host->base_dim(), d);
  for (const auto& w : words) {
    for (const auto& m : monos) {
      Multivector v(host, degree);
      v.add_word(w, Poly::monomial(host->base_dim(), m, Rational(1)));
      out.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

using SlotKey = std::pair<IndexTuple, Monomial>;

// One coordinate index per (tuple slot, word, monomial) actually present.
struct Indexer {
  std::vector<std::map<SlotKey, int>> slots;
  int total = 0;

  void absorb(int slot, const Multivector& v) {
    auto& m = slots[size_t(slot)];
    for (const auto& [word, poly] : v.terms())
      for (const auto& [mono, coeff] : poly.terms()) {
        (void)coeff;
        auto [it, fresh] = m.emplace(SlotKey{word, mono}, -1);
        (void)it;
        (void)fresh;
      }
  }

  void freeze() {
    total = 0;
    for (auto& m : slots)
      for (auto& [key, idx] : m) idx = total++;
  }

  void write(int slot, const Multivector& v, RationalMatrix& a, int col) const {
    const auto& m = slots[size_t(slot)];
    for (const auto& [word, poly] : v.terms())
      for (const auto& [mono, coeff] : poly.terms())
        a.at(m.at(SlotKey{word, mono}), col) = coeff;
  }

  void write_rhs(int slot, const Multivector& v, std::vector<Rational>& b) const {
    const auto& m = slots[size_t(slot)];
    for (const auto& [word, poly] : v.terms())
      for (const auto& [mono, coeff] : poly.terms())
        b[size_t(m.at(SlotKey{word, mono}))] = coeff;
  }
};

Indexer build_indexer(const std::vector<std::vector<Multivector>>& columns,
                      const std::vector<Multivector>* target) {
  size_t slots = target ? target->size() : (columns.empty() ? 0 : columns[0].size());
  for (const auto& col : columns) {
    if (col.size() != slots) fail(Errc::size_mismatch, "system tuple length");
  }
  Indexer ix;
  ix.slots.resize(slots);
  for (const auto& col : columns)
    for (size_t t = 0; t < slots; ++t) ix.absorb(int(t), col[t]);
  if (target)
    for (size_t t = 0; t < slots; ++t) ix.absorb(int(t), (*target)[t]);
  ix.freeze();
  return ix;
}

}  // namespace

MultivectorSystem::MultivectorSystem(std::vector<std::vector<Multivector>> columns)
    : columns_(std::move(columns)) {}

std::optional<std::vector<Rational>> MultivectorSystem::solve(
    const std::vector<Multivector>& target) const {
  Indexer ix = build_indexer(columns_, &target);
  RationalMatrix a(ix.total, int(columns_.size()));
  std::vector<Rational> b(size_t(ix.total), Rational(0));
  for (size_t j = 0; j < columns_.size(); ++j)
    for (size_t t = 0; t < columns_[j].size(); ++t)
      ix.write(int(t), columns_[j][t], a, int(j));
  for (size_t t = 0; t < target.size(); ++t) ix.write_rhs(int(t), target[t], b);
  return solve_linear(a, b);
}

std::vector<std::vector<Rational>> MultivectorSystem::kernel() const {
  Indexer ix = build_indexer(columns_, nullptr);
  RationalMatrix a(ix.total, int(columns_.size()));
  for (size_t j = 0; j < columns_.size(); ++j)
    for (size_t t = 0; t < columns_[j].size(); ++t)
      ix.write(int(t), columns_[j][t], a, int(j));
  return nullspace(a);
}

Multivector combine(const std::vector<Multivector>& basis, const std::vector<Rational>& c) {
  if (basis.empty()) fail(Errc::bad_input, "combine over empty basis");
  if (basis.size() != c.size()) fail(Errc::size_mismatch, "combine coefficient count");
  Multivector out = basis[0].scaled(c[0]);
  for (size_t j = 1; j < basis.size(); ++j) out += basis[j].scaled(c[j]);
  return out;
}

}  // namespace lag
