#include "denum/bounded.hpp"

#include <utility>

#include "denum/recurrences.hpp"

namespace denum {

BoundedSystem::BoundedSystem(Equation equation, std::vector<SignedInt> upper_bounds)
    : eq(std::move(equation)), bounds(std::move(upper_bounds)) {
  if (bounds.size() != eq.arity())
    throw invalid_input_error("need exactly one bound per unknown");
  for (const SignedInt& d : bounds)
    if (d < 1)
      throw invalid_input_error("bounds must be positive");
}

namespace {

std::vector<SignedInt> overflow_weights(const BoundedSystem& sys) {
  std::vector<SignedInt> w;
  w.reserve(sys.eq.arity());
  for (std::size_t i = 0; i < sys.eq.arity(); ++i)
    w.push_back(sys.bounds[i] * static_cast<unsigned long>(sys.eq.coeffs()[i]));
  return w;
}

} // namespace

BigCount bounded_count_with_table(const BoundedSystem& sys, const SignedInt& b,
                                  std::span<const SignedInt> unbounded) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  if (b >= unbounded.size())
    throw consistency_error("unbounded-count table too short for b = " + b.get_str());
  const std::vector<SignedInt> weights = overflow_weights(sys);
  SignedInt acc = 0;
  SignedInt arg;
  detail::for_each_subset(weights, [&](int sign, const SignedInt& subset_sum) {
    arg = b - subset_sum;
    if (sgn(arg) < 0)
      return; // an overflowing subset already exceeds b: P(negative) = 0
    const std::size_t idx = mpz_get_ui(arg.get_mpz_t());
    if (sign > 0)
      acc += unbounded[idx];
    else
      acc -= unbounded[idx];
  });
  return BigCount(std::move(acc));
}

BigCount bounded_count(const BoundedSystem& sys, const SignedInt& b, std::uint64_t guard) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  if (b > guard)
    throw resource_limit_error("right-hand side " + b.get_str() +
                               " exceeds the dense-table guard " + std::to_string(guard));
  const std::uint64_t bv = mpz_get_ui(b.get_mpz_t());
  // Small b: the plain oracle table is cheapest.  Larger b: the flat
  // recurrence builds the same prefix with fewer passes over it.
  static constexpr std::uint64_t kOracleCutoff = 10'000;
  const std::vector<SignedInt> table =
      bv <= kOracleCutoff ? oracle_table(sys.eq, bv) : flat_table(sys.eq, bv);
  return bounded_count_with_table(sys, b, table);
}

PstarTable::PstarTable(const Equation& eq) : eq_(eq) {
  static constexpr std::uint64_t kRowGuard = 100'000'000;
  if (eq.coeff_sum() > kRowGuard)
    throw resource_limit_error("coefficient sum " + eq.coeff_sum().get_str() +
                               " too large for a dense 0/1 row");
  const std::uint64_t A = mpz_get_ui(eq.coeff_sum().get_mpz_t());
  row_.assign(A + 1, SignedInt(0));
  row_[0] = 1;
  // Take-or-leave each coefficient; descending d so each a_j is used at most
  // once per assignment.
  for (std::uint64_t a : eq.coeffs())
    for (std::uint64_t d = A; d >= a; --d)
      row_[d] += row_[d - a];
  SignedInt total = 0;
  for (std::size_t d = 0; d <= A; ++d) {
    total += row_[d];
    if (row_[d] != row_[A - d])
      throw consistency_error("0/1 row is not symmetric at d = " + std::to_string(d));
  }
  SignedInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2, static_cast<unsigned long>(eq.arity()));
  if (total != expected)
    throw consistency_error("0/1 row sums to " + total.get_str() + ", expected 2^n = " +
                            expected.get_str());
}

BigCount PstarTable::at(const SignedInt& d) const {
  if (sgn(d) < 0 || d >= row_.size())
    return BigCount();
  return BigCount(row_[mpz_get_ui(d.get_mpz_t())]);
}

BigCount pstar(const Equation& eq, const SignedInt& d) { return PstarTable(eq).at(d); }

} // namespace denum
