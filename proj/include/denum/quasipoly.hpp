#ifndef DENUM_QUASIPOLY_HPP
#define DENUM_QUASIPOLY_HPP

#include <vector>

#include "denum/equation.hpp"

namespace denum {

// Depth of the expansion on residue class r: the number of correction terms
// beyond the leading one is s = floor(n - (A + r)/M), clamped at 0.  Always
// at most n - 1.  For equations with gcd > 1 the depth of the class is the
// reduced equation's depth at r / gcd (see build_residue_plan).
unsigned s_of_residue(const Equation& eq, const Residue& r);

// On the residue class b = r (mod M) the count is the finite combination
//   P(b) = sum_{k=0}^{s} l[k] * Cbar(q + n - 1 - k, n - 1),   q = floor(b/M),
// with constant non-negative weights l[k].  l[0] = P(r).  A class that the
// gcd rules out entirely (gcd does not divide r) carries the explicit zero
// plan s = 0, l = {0}.
struct ResiduePlan {
  SignedInt r;
  unsigned s = 0;
  std::vector<SignedInt> l;
};

// Builds the plan for one residue class.  The weights come from the
// alternating window sums l[k] = sum_{j=0}^{k} (-1)^j C(n, j) P(r + (k-j) M)
// over the reduced (coprime) equation; construction verifies that every
// weight is non-negative, that l[0] = P(r), that the weights total
// M^(n-1) / (a_1 ... a_n), and the matching alternating identity at depth s.
ResiduePlan build_residue_plan(const Equation& eq, const Residue& r);

// The full piecewise-polynomial description: one plan per residue class of
// the modulus M.  Construction self-checks the evaluated plans against the
// flat recurrence for every b <= 3M.
class QuasiPolynomial {
public:
  const Equation& equation() const { return eq_; }
  std::size_t residue_count() const { return plans_.size(); } // == M
  const ResiduePlan& plan(std::size_t r) const { return plans_.at(r); }

private:
  friend QuasiPolynomial build_quasipoly(const Equation& eq);
  QuasiPolynomial(Equation eq, std::vector<ResiduePlan> plans)
      : eq_(std::move(eq)), plans_(std::move(plans)) {}

  Equation eq_;
  std::vector<ResiduePlan> plans_;
};

// Builds plans for every residue class at once off one shared table
// (rejected via resource_limit_error when M is too large to enumerate; use
// count_quasipoly for point queries then).
QuasiPolynomial build_quasipoly(const Equation& eq);

// P(b) from a prebuilt table of plans.  Cost after construction: s + 1
// binomials, independent of the size of b.
BigCount eval_quasipoly(const QuasiPolynomial& qp, const SignedInt& b);

// P(b) building only the plan of b's own residue class.  The right choice
// for a single huge b when M is moderate but the full table is not wanted.
BigCount count_quasipoly(const Equation& eq, const SignedInt& b);

// The same class function written as an explicit polynomial in q:
// P(qM + r) = coeffs[0] q^(n-1) + ... + coeffs[n-1], valid for q >= s.
// Coefficients are exact rationals; the constant term equals P(r) and the
// leading term equals M^(n-1) / (a_1 ... a_n (n-1)!) for coprime equations.
struct PolynomialForm {
  SignedInt r;
  std::vector<Rational> coeffs; // descending powers, size n
};

PolynomialForm polynomial_form(const QuasiPolynomial& qp, const SignedInt& r);

// Exact evaluation of a PolynomialForm at integer q; the result must come
// out an integer (consistency_error otherwise).
SignedInt eval_polynomial_form(const PolynomialForm& form, const SignedInt& q);

// Single-binomial closed form, valid exactly when the coefficients are
// coprime and the depth of b's class is 0 (guaranteed if r > (n-1)M - A):
//   P(b) = (M^(n-1) / (a_1...a_n)) * C(floor(b/M) + n - 1, n - 1).
// The scalar is certified to equal P(r) before use (directly when r is
// within the dense-table guard; by exact divisibility otherwise).
// precondition_error when the equation or class does not qualify.
BigCount closed_form_count(const Equation& eq, const SignedInt& b,
                           std::uint64_t guard = default_oracle_guard());

// Two-coefficient fast path for coprime a1, a2:
//   P(b) = floor(b / (a1 a2)) + P(r),  r = b mod a1 a2,  P(r) in {0, 1},
// where P(r) = 1 iff r is representable -- decided by divisibility
// shortcuts and otherwise by scanning the (at most a1) feasible values of
// the second unknown.  precondition_error when gcd(a1, a2) != 1.
BigCount two_var_count(std::uint64_t a1, std::uint64_t a2, const SignedInt& b);

} // namespace denum

#endif // DENUM_QUASIPOLY_HPP
