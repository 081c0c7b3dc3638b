#pragma once

#include <stdexcept>
#include <string>

namespace lag {

// Failure classes surfaced by the library. Parse errors carry a position,
// structural errors carry the offending names/indices in the message.
enum class Errc {
  syntax,
  unknown_identifier,
  arity,
  host_mismatch,
  degree_mismatch,
  size_mismatch,
  singular,
  b_not_subspace,
  not_point_base,
  bad_index,
  bad_input,
  validation,
  cocycle_fail,
  identity_fail,
  not_in_group,
  not_in_wedge_a,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace lag
