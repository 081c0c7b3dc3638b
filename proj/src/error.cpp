#include "lag/error.hpp"

namespace lag {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::syntax: return "SYNTAX";
    case Errc::unknown_identifier: return "UNKNOWN_IDENTIFIER";
    case Errc::arity: return "ARITY";
    case Errc::host_mismatch: return "HOST_MISMATCH";
    case Errc::degree_mismatch: return "DEGREE_MISMATCH";
    case Errc::size_mismatch: return "SIZE_MISMATCH";
    case Errc::singular: return "SINGULAR";
    case Errc::b_not_subspace: return "B_NOT_SUBSPACE";
    case Errc::not_point_base: return "NOT_POINT_BASE";
    case Errc::bad_index: return "BAD_INDEX";
    case Errc::bad_input: return "BAD_INPUT";
    case Errc::validation: return "VALIDATION";
    case Errc::cocycle_fail: return "COCYCLE_FAIL";
    case Errc::identity_fail: return "IDENTITY_FAIL";
    case Errc::not_in_group: return "NOT_IN_GROUP";
    case Errc::not_in_wedge_a: return "NOT_IN_WEDGE_A";
    case Errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace lag
