#ifndef DENUM_BOUNDED_HPP
#define DENUM_BOUNDED_HPP

#include <bit>
#include <span>
#include <vector>

#include "denum/equation.hpp"

namespace denum {

// The equation of `eq` with each unknown restricted to 0 <= x_i < bounds[i].
// Bounds are exclusive upper limits (a bound of 1 pins the unknown to 0).
struct BoundedSystem {
  Equation eq;
  std::vector<SignedInt> bounds;

  BoundedSystem(Equation equation, std::vector<SignedInt> upper_bounds);
};

// Number of solutions of the bounded system with right-hand side b, by
// inclusion-exclusion over which unknowns overflow their box: each subset S
// contributes (-1)^|S| * P(b - sum_{i in S} a_i * bounds[i]) where P is the
// unbounded count and P of a negative argument is 0.  Enumerates all 2^n
// subsets (n > 30 is rejected), so this is for small arity only.
BigCount bounded_count(const BoundedSystem& sys, const SignedInt& b,
                       std::uint64_t guard = default_oracle_guard());

// Same sum, but the unbounded counts are read from a caller-supplied dense
// table (table[t] = P(t)); the table must cover b.  This lets one table
// serve many right-hand sides when building recurrence weights.
BigCount bounded_count_with_table(const BoundedSystem& sys, const SignedInt& b,
                                  std::span<const SignedInt> unbounded);

// Dense table of P*(d) for d = 0..A where P* counts 0/1 assignments:
// P*(d) = #{x in {0,1}^n : sum a_i x_i = d}.  Built by adding one
// coefficient at a time (take it or leave it); the whole row is cached
// because the halving recurrence consumes it densely.  P* is symmetric
// about A/2 and sums to 2^n, both of which are verified on construction.
class PstarTable {
public:
  explicit PstarTable(const Equation& eq);

  const Equation& equation() const { return eq_; }
  const std::vector<SignedInt>& row() const { return row_; }

  // P*(d); 0 outside [0, A].
  BigCount at(const SignedInt& d) const;

private:
  Equation eq_;
  std::vector<SignedInt> row_;
};

// One-shot P*(d).
BigCount pstar(const Equation& eq, const SignedInt& d);

namespace detail {

// Visits all 2^n subsets of `weights` in Gray-code order, calling
// visit(sign, subset_sum) with sign = (-1)^|subset|.  One add or subtract
// per step; no per-subset allocation.
template <typename F>
void for_each_subset(std::span<const SignedInt> weights, F&& visit) {
  const std::size_t n = weights.size();
  if (n > 30)
    throw resource_limit_error("inclusion-exclusion over " + std::to_string(n) +
                               " unknowns (limit 30)");
  SignedInt sum = 0;
  int sign = 1;
  visit(sign, std::as_const(sum));
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
    const std::uint64_t gray = i ^ (i >> 1);
    if (gray & (std::uint64_t{1} << bit))
      sum += weights[bit];
    else
      sum -= weights[bit];
    sign = -sign;
    visit(sign, std::as_const(sum));
  }
}

} // namespace detail

} // namespace denum

#endif // DENUM_BOUNDED_HPP
