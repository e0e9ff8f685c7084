#ifndef DENUM_TRANSFORM_HPP
#define DENUM_TRANSFORM_HPP

#include <cstdint>
#include <vector>

#include "denum/equation.hpp"

namespace denum {

// On the residue class b = r (mod M) of the source equation, counts
// transfer to a target equation of the same arity:
//   P_source(b) = sum_{k=0}^{sbar} weights[k] * P_target(floor(b/M) - k)
// where M is the source modulus and the target has coefficients
// target_coeffs.  The transfer weights depend only on the class, so one
// plan serves every b in it.
struct TransformPlan {
  Equation source;
  std::vector<std::uint64_t> target_coeffs;
  SignedInt r;
  unsigned sbar = 0;
  std::vector<SignedInt> weights; // m_0..m_sbar, all non-negative
};

// Builds the plan for class r: depth sbar = floor(sum(c) - (A + r)/M)
// (clamped at 0 for classes the gcd empties), weight
//   m_k = sum_S (-1)^|S| P_source(r + k M - M sum_{i in S} c_i)
// by inclusion-exclusion over subsets S of the target coefficients.  Each
// weight is certified against its dual description -- the count of
// a_1 t_1 + ... + a_n t_n = r + k M with 0 <= t_i < (M / a_i) c_i -- and
// m_0 is certified to equal P_source(r).
TransformPlan build_transform(const Equation& source,
                              std::vector<std::uint64_t> target_coeffs, const Residue& r);

// Applies the plan: P_source(b) for any b in the plan's class (b not
// congruent to r mod M is invalid input).  Target counts are computed
// per-residue when the target modulus is small, by the flat recurrence
// otherwise; negative target arguments contribute nothing.
BigCount transform_count(const TransformPlan& plan, const SignedInt& b);

} // namespace denum

#endif // DENUM_TRANSFORM_HPP
