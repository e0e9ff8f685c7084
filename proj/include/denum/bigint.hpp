#ifndef DENUM_BIGINT_HPP
#define DENUM_BIGINT_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "denum/errors.hpp"

namespace denum {

// Signed arbitrary-precision integer.  Used for intermediate accumulators
// that legitimately go negative (alternating inclusion-exclusion sums,
// recurrence coefficients before their non-negativity is established).
using SignedInt = mpz_class;

// Exact rational, used only for polynomial coefficients.
using Rational = mpq_class;

// A non-negative arbitrary-precision count.  Every public counting routine
// returns one of these; the constructor is the single choke point where
// "counts are never negative" is enforced, so an alternating sum that dips
// below zero surfaces as a consistency_error instead of a silent wrap.
class BigCount {
public:
  BigCount() : value_(0) {}

  BigCount(unsigned long v) : value_(v) {}

  explicit BigCount(SignedInt v) : value_(std::move(v)) {
    if (sgn(value_) < 0)
      throw consistency_error("count is negative: " + value_.get_str());
  }

  // Parses a decimal digit string.  Rejects signs, whitespace and empty input.
  static BigCount parse(const std::string& digits);

  const SignedInt& value() const { return value_; }

  std::string str() const { return value_.get_str(); }

  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend bool operator!=(const BigCount& a, const BigCount& b) { return a.value_ != b.value_; }
  friend bool operator<(const BigCount& a, const BigCount& b) { return a.value_ < b.value_; }
  friend bool operator<=(const BigCount& a, const BigCount& b) { return a.value_ <= b.value_; }
  friend bool operator>(const BigCount& a, const BigCount& b) { return a.value_ > b.value_; }
  friend bool operator>=(const BigCount& a, const BigCount& b) { return a.value_ >= b.value_; }

  BigCount& operator+=(const BigCount& o) {
    value_ += o.value_;
    return *this;
  }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }

  BigCount& operator*=(const BigCount& o) {
    value_ *= o.value_;
    return *this;
  }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }

private:
  SignedInt value_;
};

std::ostream& operator<<(std::ostream& os, const BigCount& c);

} // namespace denum

#endif // DENUM_BIGINT_HPP
