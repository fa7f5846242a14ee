#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsp6 {

enum class ErrorCode {
  kStructuralDefect,  // a realization identity failed; indicates a bug
  kDegreeCap,
  kNonNilpotent,
  kSingularTimes,
  kInconsistent,
  kPhiZero,
  kNonconvergence,
  kSingularTime,
  kConsistencyFailure,
  kSingularMap,
  kOnMirror,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dsp6
