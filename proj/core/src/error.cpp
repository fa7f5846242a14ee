#include "dsp6/error.hpp"

namespace dsp6 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStructuralDefect: return "StructuralDefect";
    case ErrorCode::kDegreeCap: return "DegreeCap";
    case ErrorCode::kNonNilpotent: return "NonNilpotent";
    case ErrorCode::kSingularTimes: return "SingularTimes";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kPhiZero: return "PhiZero";
    case ErrorCode::kNonconvergence: return "Nonconvergence";
    case ErrorCode::kSingularTime: return "SingularTime";
    case ErrorCode::kConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::kSingularMap: return "SingularMap";
    case ErrorCode::kOnMirror: return "OnMirror";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace dsp6
