#include "denum/bigint.hpp"

#include <cctype>
#include <ostream>

namespace denum {

BigCount BigCount::parse(const std::string& digits) {
  if (digits.empty())
    throw invalid_input_error("empty integer literal");
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw invalid_input_error("not a decimal integer: '" + digits + "'");
  return BigCount(SignedInt(digits, 10));
}

std::ostream& operator<<(std::ostream& os, const BigCount& c) { return os << c.value(); }

} // namespace denum
