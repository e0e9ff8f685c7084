#ifndef DENUM_RECURRENCES_HPP
#define DENUM_RECURRENCES_HPP

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "denum/bounded.hpp"
#include "denum/equation.hpp"

namespace denum {

// Weights of the constant-coefficient ("flat") recurrence
//   P(b) = C(b + n - 1, n - 1) - sum_{k=1}^{A-n} weights[k] * P(b - k).
// weights[k] counts the ways to write k as sum t_i with 0 <= t_i < a_i,
// so weights[0] == 1, all weights are non-negative, and the vector is
// palindromic (weights[k] == weights[A - n - k]).
struct FlatRecurrenceCoeffs {
  std::vector<SignedInt> weights;
};

// Builds the flat-recurrence weights by inclusion-exclusion over which t_i
// exceed their box: weights[k] = sum_S (-1)^|S| Cbar(n - 1 + k - sum_{i in S} a_i, n - 1).
FlatRecurrenceCoeffs lprime_coeffs(const Equation& eq);

// Dense table P(0..b) advanced by the flat recurrence.  The leading binomial
// C(t + n - 1, n - 1) is maintained incrementally (multiply by t + n, divide
// exactly by t + 1).  `seed` optionally supplies an already-computed prefix
// P(0..len-1), e.g. from a cache file; it is extended, not recomputed.
std::vector<SignedInt> flat_table(const Equation& eq, std::uint64_t b,
                                  std::span<const SignedInt> seed = {});

// P(b) via flat_table.  Same guard contract as count_oracle.
BigCount count_flat(const Equation& eq, const SignedInt& b,
                    std::uint64_t guard = default_oracle_guard());

// Weights of the index-compression recurrence for modulus m:
//   P(b) = sum_{k=0}^{s*} rows[r][k] * P(floor(b/m) - k),  r = b mod m,
//   s*(r) = floor(((m-1)A - r) / m).
// rows[r][k] is the bounded count of a_1 t_1 + ... + a_n t_n = r + k m with
// 0 <= t_i < m; summed over all r and k the weights total m^n.
struct DecimationCoeffs {
  unsigned m = 0;
  std::vector<std::vector<SignedInt>> rows;
};

DecimationCoeffs decimation_coeffs(const Equation& eq, unsigned m);

// Reusable evaluation context for the index-compression recurrence: one
// dense base table (arguments up to max(A^2, 1000) fall through to it), the
// per-residue weight rows built on first use, and a memo of interior nodes.
// For m == 2 the rows are read off the 0/1 table P* directly.  A solver is
// single-threaded state; distinct solvers never share anything.
class DecimationSolver {
public:
  DecimationSolver(Equation eq, unsigned m);

  const Equation& equation() const { return eq_; }
  unsigned m() const { return m_; }

  // P(b).  Descends b -> floor(b/m) until the base table answers, memoizing
  // every interior argument, so repeated queries stay cheap.
  BigCount count(const SignedInt& b);

private:
  const std::vector<SignedInt>& row_for(std::uint64_t r);
  const SignedInt& resolve(const SignedInt& x);

  Equation eq_;
  unsigned m_;
  std::uint64_t coeff_sum_ = 0;          // A, as a machine word
  std::uint64_t base_max_ = 0;           // base table covers P(0..base_max_)
  std::vector<SignedInt> base_;
  std::vector<std::optional<std::vector<SignedInt>>> rows_;
  std::optional<PstarTable> half_;       // row source when m == 2
  std::map<SignedInt, SignedInt> memo_;
};

// One-shot P(b) by index compression with modulus m (m >= 2).  Handles
// arbitrary-precision b in O(A * log_m b) table lookups after setup.
BigCount count_decimated(const Equation& eq, const SignedInt& b, unsigned m);

} // namespace denum

#endif // DENUM_RECURRENCES_HPP
