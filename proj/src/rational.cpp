#include "lag/rational.hpp"

#include <cctype>
#include <ostream>

namespace lag {

Rational Rational::from_string(const std::string& s) {
  if (s.empty()) fail(Errc::bad_input, "empty rational literal");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(Errc::bad_input, "malformed rational literal '" + s + "'");
  bool seen_slash = false;
  for (size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/') {
      if (seen_slash || k == i || k + 1 == s.size())
        fail(Errc::bad_input, "malformed rational literal '" + s + "'");
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      fail(Errc::bad_input, "malformed rational literal '" + s + "'");
  }
  mpq_class v(s, 10);
  if (seen_slash && v.get_den() == 0) fail(Errc::bad_input, "zero denominator in '" + s + "'");
  v.canonicalize();
  return Rational(v);
}

Rational Rational::factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(mpq_class(f));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lag
