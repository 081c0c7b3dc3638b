#include "lag/exprparse.hpp"

#include <cctype>
#include <map>

#include "lag/error.hpp"

namespace lag {

namespace {

// Intermediate sum of (frame word, polynomial coefficient) with no degree
// constraint; homogeneity is checked only when converting to a Multivector.
struct Value {
  std::map<IndexTuple, Poly> terms;  // words canonical (sorted, repeat-free)

  bool scalar() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
  }
};

class Parser {
 public:
  Parser(const std::string& text, const AlgebroidPresentation* host, bool frames)
      : text_(text), host_(host), frames_(frames) {}

  Value run() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) syntax("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void syntax(const std::string& what) const {
    fail(Errc::syntax, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void add_to(Value& acc, const IndexTuple& word, const Poly& c) const {
    if (c.is_zero()) return;
    auto it = acc.terms.find(word);
    if (it == acc.terms.end()) {
      acc.terms.emplace(word, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) acc.terms.erase(it);
    }
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (eat('+')) {
        Value r = term();
        for (const auto& [w, c] : r.terms) add_to(acc, w, c);
      } else if (eat('-')) {
        Value r = term();
        for (const auto& [w, c] : r.terms) add_to(acc, w, -c);
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = signed_();
    while (true) {
      if (eat('*')) {
        acc = product(acc, signed_());
      } else if (eat('/')) {
        const size_t at = pos_;
        Value d = signed_();
        if (!d.scalar()) fail_at(at, "divisor must be a constant");
        Poly p = d.terms.empty() ? Poly(nvars()) : d.terms.begin()->second;
        if (!p.is_constant()) fail_at(at, "divisor must be a constant");
        const Rational r = p.constant_value();
        if (r.is_zero()) fail_at(at, "division by zero");
        Value out;
        const Rational inv = Rational(1) / r;
        for (const auto& [w, c] : acc.terms) out.terms.emplace(w, c.scaled(inv));
        acc = std::move(out);
      } else {
        return acc;
      }
    }
  }

  [[noreturn]] void fail_at(size_t at, const std::string& what) const {
    fail(Errc::syntax, what + " at position " + std::to_string(at));
  }

  Value signed_() {
    bool neg = false;
    while (true) {
      if (eat('-')) {
        neg = !neg;
      } else if (eat('+')) {
        // no-op
      } else {
        break;
      }
    }
    Value v = power();
    if (!neg) return v;
    Value out;
    for (const auto& [w, c] : v.terms) out.terms.emplace(w, -c);
    return out;
  }

  Value power() {
    Value base = atom();
    if (!eat('^')) return base;
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      syntax("exponent must be a natural number");
    if (!base.scalar()) syntax("exponent applies to scalars only");
    unsigned e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      e = e * 10 + unsigned(text_[pos_++] - '0');
    Poly p = base.terms.empty() ? Poly(nvars()) : base.terms.begin()->second;
    Value out;
    add_to(out, {}, p.pow(e));
    return out;
  }

  Value atom() {
    skip_ws();
    if (pos_ >= text_.size()) syntax("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits += text_[pos_++];
      Value v;
      add_to(v, {}, Poly::constant(nvars(), Rational::from_string(digits)));
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      for (int a = 0; a < host_->base_dim(); ++a) {
        if (host_->coord_name(a) == name) {
          Value v;
          add_to(v, {}, Poly::variable(nvars(), a));
          return v;
        }
      }
      if (frames_) {
        for (int i = 0; i < host_->rank(); ++i) {
          if (host_->frame_name(i) == name) {
            Value v;
            add_to(v, {i}, Poly::constant(nvars(), Rational(1)));
            return v;
          }
        }
      }
      fail(Errc::unknown_identifier, name);
    }
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!eat(')')) syntax("expected ')'");
      return v;
    }
    syntax("unexpected character");
  }

  // Wedge-aware product: scalars multiply coefficients, frame words concatenate
  // with the sign of their canonical sort (repeats annihilate).
  Value product(const Value& a, const Value& b) const {
    Value out;
    for (const auto& [wa, ca] : a.terms) {
      for (const auto& [wb, cb] : b.terms) {
        IndexTuple w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        const int sign = sort_word(w);
        if (sign == 0) continue;
        add_to(out, w, sign > 0 ? ca * cb : -(ca * cb));
      }
    }
    return out;
  }

  int nvars() const { return host_->base_dim(); }

  const std::string& text_;
  const AlgebroidPresentation* host_;
  bool frames_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const AlgebroidPresentation* host) {
  Value v = Parser(text, host, false).run();
  if (v.terms.empty()) return Poly(host->base_dim());
  return v.terms.begin()->second;
}

Multivector parse_multivector(const std::string& text, const AlgebroidPresentation* host,
                              int expected_degree) {
  Value v = Parser(text, host, true).run();
  int degree = expected_degree;
  for (const auto& [w, c] : v.terms) {
    if (degree == -1) degree = static_cast<int>(w.size());
    if (static_cast<int>(w.size()) != degree)
      fail(Errc::degree_mismatch, "inhomogeneous multivector expression");
  }
  Multivector out(host, degree == -1 ? 0 : degree);
  for (const auto& [w, c] : v.terms) out.add_word(w, c);
  return out;
}

}  // namespace lag
