#include "denum/quasipoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "denum/combinatorics.hpp"
#include "denum/recurrences.hpp"

namespace denum {

namespace {

constexpr std::uint64_t kPlanTableGuard = 10'000'000;
constexpr std::uint64_t kEagerModulusGuard = 1'000'000;
constexpr std::uint64_t kOracleCutoff = 10'000;

// Largest residue for which the closed-form scalar is certified against a
// directly computed P(r) (beyond this only the exact-divisibility check
// runs; a dense table to r would defeat the point of the closed form).
constexpr std::uint64_t kScalarCheckCutoff = 100'000;

SignedInt power(const SignedInt& base, unsigned long exp) {
  SignedInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

SignedInt coeff_product(const Equation& eq) {
  SignedInt prod = 1;
  for (std::uint64_t a : eq.coeffs())
    prod *= static_cast<unsigned long>(a);
  return prod;
}

// Weights from an alternating window over counts of the (coprime) equation:
// l[k] = sum_{j=0}^{k} (-1)^j C(n, j) P(r + (k - j) M).  `counts` must cover
// r + s*M.  The identity checks certify the construction: weights are
// non-negative, start at P(r), total M^(n-1)/prod(a), and satisfy the same
// alternating relation at depth s with C(n-1, j) in place of C(n, j).
std::vector<SignedInt> window_weights(const Equation& eq, std::uint64_t r, unsigned s,
                                      std::span<const SignedInt> counts) {
  const std::size_t n = eq.arity();
  const std::uint64_t M = mpz_get_ui(eq.modulus().get_mpz_t());
  std::vector<SignedInt> l(s + 1);
  for (unsigned k = 0; k <= s; ++k) {
    SignedInt acc = 0;
    for (unsigned j = 0; j <= k; ++j) {
      const SignedInt& count = counts[r + (k - j) * M];
      const SignedInt weight = binomial(SignedInt(static_cast<unsigned long>(n)), j).value();
      if (j % 2 == 0)
        mpz_addmul(acc.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
      else
        mpz_submul(acc.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
    }
    if (sgn(acc) < 0)
      throw consistency_error("negative quasi-polynomial weight at residue " +
                              std::to_string(r) + ", index " + std::to_string(k));
    l[k] = std::move(acc);
  }
  if (l[0] != counts[r])
    throw consistency_error("quasi-polynomial weight l[0] must equal P(r)");
  const SignedInt scaled = power(eq.modulus(), static_cast<unsigned long>(n) - 1);
  const SignedInt prod = coeff_product(eq);
  SignedInt total = 0;
  for (const SignedInt& w : l)
    total += w;
  if (total * prod != scaled)
    throw consistency_error("quasi-polynomial weights at residue " + std::to_string(r) +
                            " total " + total.get_str() + ", expected M^(n-1)/(a_1...a_n)");
  SignedInt alt = 0;
  for (unsigned j = 0; j <= s; ++j) {
    const SignedInt weight =
        binomial(SignedInt(static_cast<unsigned long>(n) - 1), j).value();
    const SignedInt& count = counts[r + (s - j) * M];
    if (j % 2 == 0)
      mpz_addmul(alt.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
    else
      mpz_submul(alt.get_mpz_t(), weight.get_mpz_t(), count.get_mpz_t());
  }
  if (alt * prod != scaled)
    throw consistency_error("alternating depth identity fails at residue " + std::to_string(r));
  return l;
}

// Plan construction on the reduced equation; `original_r` is the residue in
// the caller's (possibly non-coprime) modulus.
ResiduePlan reduced_plan(const Equation& reduced, std::uint64_t reduced_r,
                         SignedInt original_r, std::span<const SignedInt> counts) {
  const unsigned s = s_of_residue(reduced, Residue(SignedInt(reduced_r), reduced.modulus()));
  ResiduePlan plan;
  plan.r = std::move(original_r);
  plan.s = s;
  plan.l = window_weights(reduced, reduced_r, s, counts);
  return plan;
}

BigCount eval_with_plan(std::size_t n, const SignedInt& modulus, const ResiduePlan& plan,
                        const SignedInt& b) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  SignedInt q;
  mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
  SignedInt acc = 0;
  SignedInt arg;
  for (std::size_t k = 0; k < plan.l.size(); ++k) {
    if (sgn(plan.l[k]) == 0)
      continue;
    arg = q + static_cast<unsigned long>(n - 1);
    arg -= static_cast<unsigned long>(k);
    const BigCount bin = barred_binomial(arg, static_cast<unsigned>(n) - 1);
    mpz_addmul(acc.get_mpz_t(), plan.l[k].get_mpz_t(), bin.value().get_mpz_t());
  }
  return BigCount(std::move(acc));
}

} // namespace

unsigned s_of_residue(const Equation& eq, const Residue& r) {
  // floor(n - (A + r)/M) = floor((nM - A - r) / M), clamped at 0; always
  // below n because A + r > 0.
  SignedInt num = eq.modulus() * static_cast<unsigned long>(eq.arity());
  num -= eq.coeff_sum();
  num -= r.value();
  SignedInt s;
  mpz_fdiv_q(s.get_mpz_t(), num.get_mpz_t(), eq.modulus().get_mpz_t());
  if (sgn(s) < 0)
    return 0;
  return static_cast<unsigned>(mpz_get_ui(s.get_mpz_t()));
}

ResiduePlan build_residue_plan(const Equation& eq, const Residue& r) {
  const std::uint64_t g = eq.common_gcd();
  if (g > 1 && !mpz_divisible_ui_p(r.value().get_mpz_t(), g)) {
    // The gcd rules the whole class out; record that honestly.
    return ResiduePlan{r.value(), 0, {SignedInt(0)}};
  }
  const Equation reduced = eq.reduced();
  SignedInt reduced_r_z = r.value() / static_cast<unsigned long>(g);
  const unsigned s = s_of_residue(reduced, Residue(reduced_r_z, reduced.modulus()));
  SignedInt top = reduced_r_z + reduced.modulus() * static_cast<unsigned long>(s);
  if (top >= kPlanTableGuard)
    throw resource_limit_error("residue class needs a table of length " + top.get_str() +
                               "; modulus too large for plan construction");
  const std::uint64_t top_word = mpz_get_ui(top.get_mpz_t());
  const std::vector<SignedInt> counts = top_word <= kOracleCutoff
                                            ? oracle_table(reduced, top_word)
                                            : flat_table(reduced, top_word);
  return reduced_plan(reduced, mpz_get_ui(reduced_r_z.get_mpz_t()), r.value(), counts);
}

QuasiPolynomial build_quasipoly(const Equation& eq) {
  if (eq.modulus() > kEagerModulusGuard)
    throw resource_limit_error("modulus " + eq.modulus().get_str() +
                               " too large to tabulate every residue class; "
                               "use per-residue or decimation queries");
  const std::uint64_t M = mpz_get_ui(eq.modulus().get_mpz_t());
  const std::uint64_t g = eq.common_gcd();
  const Equation reduced = eq.reduced();
  const std::uint64_t Mr = M / g;
  // One shared table covers every class: arguments reach at most
  // r' + s M' < n M'.
  const std::uint64_t top = static_cast<std::uint64_t>(eq.arity()) * Mr;
  if (top > kPlanTableGuard)
    throw resource_limit_error("plan table of length " + std::to_string(top) +
                               " exceeds the construction guard");
  const std::vector<SignedInt> counts =
      top <= kOracleCutoff ? oracle_table(reduced, top) : flat_table(reduced, top);
  std::vector<ResiduePlan> plans;
  plans.reserve(M);
  for (std::uint64_t r = 0; r < M; ++r) {
    if (g > 1 && r % g != 0)
      plans.push_back(ResiduePlan{SignedInt(r), 0, {SignedInt(0)}});
    else
      plans.push_back(reduced_plan(reduced, r / g, SignedInt(r), counts));
  }
  QuasiPolynomial qp(eq, std::move(plans));
  // Certify the whole table against the recurrence on a window that
  // exercises every class at several quotients.
  const std::uint64_t check_to = 3 * M;
  const std::vector<SignedInt> reference = check_to <= kOracleCutoff
                                               ? oracle_table(eq, check_to)
                                               : flat_table(eq, check_to);
  for (std::uint64_t b = 0; b <= check_to; ++b) {
    const BigCount via_plan =
        eval_with_plan(eq.arity(), eq.modulus(), qp.plan(b % M), SignedInt(b));
    if (via_plan.value() != reference[b])
      throw consistency_error("plan table disagrees with the recurrence at b = " +
                              std::to_string(b));
  }
  return qp;
}

BigCount eval_quasipoly(const QuasiPolynomial& qp, const SignedInt& b) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  const Equation& eq = qp.equation();
  SignedInt r;
  mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), eq.modulus().get_mpz_t());
  return eval_with_plan(eq.arity(), eq.modulus(), qp.plan(mpz_get_ui(r.get_mpz_t())), b);
}

BigCount count_quasipoly(const Equation& eq, const SignedInt& b) {
  const ResiduePlan plan = build_residue_plan(eq, Residue::of(eq, b));
  return eval_with_plan(eq.arity(), eq.modulus(), plan, b);
}

PolynomialForm polynomial_form(const QuasiPolynomial& qp, const SignedInt& r) {
  const Equation& eq = qp.equation();
  if (sgn(r) < 0 || r >= eq.modulus())
    throw invalid_input_error("residue " + r.get_str() + " out of range");
  const std::size_t n = eq.arity();
  const ResiduePlan& plan = qp.plan(mpz_get_ui(r.get_mpz_t()));
  // Expand sum_k l[k] * (q + n-1-k)(q + n-2-k)...(q + 1-k) as an integer
  // polynomial in q, then divide by (n-1)!.
  std::vector<SignedInt> acc(n, SignedInt(0));
  for (std::size_t k = 0; k < plan.l.size(); ++k) {
    std::vector<SignedInt> prod{SignedInt(1)};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const SignedInt shift = SignedInt(static_cast<long>(n) - 1 - static_cast<long>(k) -
                                        static_cast<long>(i));
      std::vector<SignedInt> next(prod.size() + 1, SignedInt(0));
      for (std::size_t d = 0; d < prod.size(); ++d) {
        next[d + 1] += prod[d];        // q * prod
        next[d] += prod[d] * shift;    // shift * prod
      }
      prod = std::move(next);
    }
    for (std::size_t d = 0; d < prod.size(); ++d)
      mpz_addmul(acc[d].get_mpz_t(), plan.l[k].get_mpz_t(), prod[d].get_mpz_t());
  }
  SignedInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n) - 1);
  PolynomialForm form;
  form.r = r;
  form.coeffs.reserve(n);
  for (std::size_t d = 0; d < n; ++d) {
    Rational c(acc[n - 1 - d], fact);
    c.canonicalize();
    form.coeffs.push_back(std::move(c));
  }
  // Structural anchors: constant term is P(r); for a class the gcd does not
  // kill, the leading term is M'^(n-1) / (a'_1...a'_n (n-1)!) in reduced
  // quantities.
  if (form.coeffs.back() != Rational(plan.l[0]))
    throw consistency_error("polynomial constant term must equal P(r)");
  const std::uint64_t g = eq.common_gcd();
  if (g == 1 || mpz_divisible_ui_p(r.get_mpz_t(), g)) {
    const Equation reduced = eq.reduced();
    Rational lead(power(reduced.modulus(), static_cast<unsigned long>(n) - 1),
                  coeff_product(reduced) * fact);
    lead.canonicalize();
    if (form.coeffs.front() != lead)
      throw consistency_error("polynomial leading term disagrees with M^(n-1)/(a_1...a_n (n-1)!)");
  }
  return form;
}

SignedInt eval_polynomial_form(const PolynomialForm& form, const SignedInt& q) {
  Rational acc(0);
  for (const Rational& c : form.coeffs) {
    acc *= q;
    acc += c;
  }
  acc.canonicalize();
  if (acc.get_den() != 1)
    throw consistency_error("polynomial evaluated to the non-integer " + acc.get_str());
  return acc.get_num();
}

BigCount closed_form_count(const Equation& eq, const SignedInt& b, std::uint64_t guard) {
  if (eq.common_gcd() != 1)
    throw precondition_error("closed form needs coprime coefficients");
  const Residue r = Residue::of(eq, b);
  if (s_of_residue(eq, r) != 0)
    throw precondition_error("closed form needs depth 0 on this residue class (r > (n-1)M - A)");
  const std::size_t n = eq.arity();
  const SignedInt scaled = power(eq.modulus(), static_cast<unsigned long>(n) - 1);
  const SignedInt prod = coeff_product(eq);
  if (!mpz_divisible_p(scaled.get_mpz_t(), prod.get_mpz_t()))
    throw consistency_error("M^(n-1) is not divisible by the coefficient product");
  SignedInt scalar;
  mpz_divexact(scalar.get_mpz_t(), scaled.get_mpz_t(), prod.get_mpz_t());
  if (r.value() <= std::min<std::uint64_t>(guard, kScalarCheckCutoff)) {
    const BigCount direct = count_flat(eq, r.value(), guard);
    if (direct.value() != scalar)
      throw consistency_error("closed-form scalar " + scalar.get_str() +
                              " disagrees with P(r) = " + direct.str());
  }
  SignedInt q;
  mpz_fdiv_q(q.get_mpz_t(), b.get_mpz_t(), eq.modulus().get_mpz_t());
  q += static_cast<unsigned long>(n) - 1;
  return BigCount(scalar * binomial(q, static_cast<unsigned>(n) - 1).value());
}

BigCount two_var_count(std::uint64_t a1, std::uint64_t a2, const SignedInt& b) {
  if (a1 == 0 || a2 == 0)
    throw invalid_input_error("coefficients must be positive");
  if (std::gcd(a1, a2) != 1)
    throw precondition_error("two-variable fast path needs coprime coefficients");
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  SignedInt modulus = SignedInt(static_cast<unsigned long>(a1));
  modulus *= static_cast<unsigned long>(a2);
  SignedInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
  bool representable;
  if (mpz_divisible_ui_p(r.get_mpz_t(), a1) || mpz_divisible_ui_p(r.get_mpz_t(), a2)) {
    representable = true; // covers r == 0 as well
  } else if (r > modulus - a1 - a2) {
    representable = true; // past the largest non-representable value
  } else if (r < SignedInt(a1) + a2) {
    // Neither coefficient divides r, so a representation would need both
    // unknowns positive, which already overshoots.
    representable = false;
  } else {
    // Scan the second unknown; only its value modulo a1 matters, so a1
    // iterations bound the search regardless of r.
    representable = false;
    SignedInt rest = r;
    for (std::uint64_t y = 0; y < a1 && sgn(rest) >= 0; ++y) {
      if (mpz_divisible_ui_p(rest.get_mpz_t(), a1)) {
        representable = true;
        break;
      }
      rest -= static_cast<unsigned long>(a2);
    }
  }
  if (representable)
    q += 1;
  return BigCount(std::move(q));
}

} // namespace denum
