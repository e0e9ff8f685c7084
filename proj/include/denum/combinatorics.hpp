#ifndef DENUM_COMBINATORICS_HPP
#define DENUM_COMBINATORICS_HPP

#include <cstdint>
#include <span>

#include "denum/bigint.hpp"

namespace denum {

// gcd of a non-empty list of positive integers.
std::uint64_t gcd_all(std::span<const std::uint64_t> values);

// lcm of a non-empty list of positive integers, folded pairwise as
// (acc / gcd(acc, v)) * v -- the division happens first so the intermediate
// never exceeds the final result.  Arbitrary precision: the lcm of modest
// pairwise-coprime coefficients overflows 64 bits quickly.
SignedInt lcm_all(std::span<const std::uint64_t> values);

// C(top, m) for arbitrary-precision top >= 0 and small m.  Computed as a
// running product multiplied before each division, so every division is
// exact: C(top, m) = prod_{i=1..m} (top - m + i) / i, dividing by i right
// after multiplying the i-th factor (the first i factors form a complete
// binomial themselves, hence divisibility).  Throws invalid_input_error if
// top < 0 or m > top.
BigCount binomial(const SignedInt& top, unsigned m);

// The "barred" binomial: equal to binomial(top, m) when top >= m and 0
// otherwise (in particular for negative top).  This is the convention under
// which counting formulas stay single-expression near their boundary.
BigCount barred_binomial(const SignedInt& top, unsigned m);

} // namespace denum

#endif // DENUM_COMBINATORICS_HPP
