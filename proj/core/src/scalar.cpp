#include "dsp6/scalar.hpp"

#include "dsp6/error.hpp"

namespace dsp6 {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  std::string s = q.get_str();
  if (q.get_den() == 1) s += "/1";
  return s;
}

}  // namespace dsp6
