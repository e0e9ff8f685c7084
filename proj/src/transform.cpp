#include "denum/transform.hpp"

#include <string>
#include <utility>

#include "denum/bounded.hpp"
#include "denum/quasipoly.hpp"
#include "denum/recurrences.hpp"

namespace denum {

namespace {

constexpr std::uint64_t kPlanTableGuard = 10'000'000;
constexpr std::uint64_t kOracleCutoff = 10'000;

// Route target-side counts through the per-residue expansion only when the
// target's own plan construction is cheap.
constexpr std::uint64_t kQuasipolyRouteLimit = 10'000;

} // namespace

TransformPlan build_transform(const Equation& source,
                              std::vector<std::uint64_t> target_coeffs, const Residue& r) {
  if (target_coeffs.size() != source.arity())
    throw invalid_input_error("target needs as many coefficients as the source");
  for (std::uint64_t c : target_coeffs)
    if (c == 0)
      throw invalid_input_error("target coefficients must be positive");
  const SignedInt& M = source.modulus();
  SignedInt csum = 0;
  for (std::uint64_t c : target_coeffs)
    csum += static_cast<unsigned long>(c);
  // sbar = floor(csum - (A + r)/M); a negative value means the gcd empties
  // the class (every weight will be zero), clamp to a single zero weight.
  SignedInt num = M * csum - source.coeff_sum() - r.value();
  SignedInt sbar_z;
  mpz_fdiv_q(sbar_z.get_mpz_t(), num.get_mpz_t(), M.get_mpz_t());
  if (sgn(sbar_z) < 0)
    sbar_z = 0;
  SignedInt top = r.value() + M * sbar_z;
  if (top >= kPlanTableGuard)
    throw resource_limit_error("transform plan needs a source table of length " +
                               top.get_str() + ", beyond the construction guard");
  const std::uint64_t top_word = mpz_get_ui(top.get_mpz_t());
  const unsigned sbar = static_cast<unsigned>(mpz_get_ui(sbar_z.get_mpz_t()));
  const std::vector<SignedInt> counts = top_word <= kOracleCutoff
                                            ? oracle_table(source, top_word)
                                            : flat_table(source, top_word);
  // Subset weights M * c_i for the inclusion-exclusion over the target
  // coefficients, and box bounds (M / a_i) c_i for the dual check.
  std::vector<SignedInt> subset_weights;
  std::vector<SignedInt> box_bounds;
  subset_weights.reserve(source.arity());
  box_bounds.reserve(source.arity());
  for (std::size_t i = 0; i < source.arity(); ++i) {
    subset_weights.push_back(M * static_cast<unsigned long>(target_coeffs[i]));
    SignedInt d;
    mpz_divexact_ui(d.get_mpz_t(), M.get_mpz_t(),
                    static_cast<unsigned long>(source.coeffs()[i]));
    d *= static_cast<unsigned long>(target_coeffs[i]);
    box_bounds.push_back(std::move(d));
  }
  const BoundedSystem boxed(source, std::move(box_bounds));
  std::vector<SignedInt> weights(sbar + 1);
  SignedInt rhs, arg;
  for (unsigned k = 0; k <= sbar; ++k) {
    rhs = r.value() + M * static_cast<unsigned long>(k);
    SignedInt acc = 0;
    detail::for_each_subset(subset_weights, [&](int sign, const SignedInt& subset_sum) {
      arg = rhs - subset_sum;
      if (sgn(arg) < 0)
        return;
      const std::size_t idx = mpz_get_ui(arg.get_mpz_t());
      if (sign > 0)
        acc += counts[idx];
      else
        acc -= counts[idx];
    });
    if (sgn(acc) < 0)
      throw consistency_error("negative transform weight at k = " + std::to_string(k));
    const BigCount dual = bounded_count_with_table(boxed, rhs, counts);
    if (dual.value() != acc)
      throw consistency_error("transform weight " + std::to_string(k) +
                              " disagrees with its box-count description");
    weights[k] = std::move(acc);
  }
  if (weights[0] != counts[mpz_get_ui(r.value().get_mpz_t())])
    throw consistency_error("transform weight m_0 must equal P(r)");
  return TransformPlan{source, std::move(target_coeffs), r.value(), sbar,
                       std::move(weights)};
}

BigCount transform_count(const TransformPlan& plan, const SignedInt& b) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  const SignedInt& M = plan.source.modulus();
  SignedInt q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), b.get_mpz_t(), M.get_mpz_t());
  if (rem != plan.r)
    throw invalid_input_error("b = " + b.get_str() + " is not in the plan's residue class " +
                              plan.r.get_str() + " (mod " + M.get_str() + ")");
  const Equation target = make_equation(plan.target_coeffs);
  const bool small_target =
      target.modulus() * static_cast<unsigned long>(target.arity()) <= kQuasipolyRouteLimit;
  SignedInt acc = 0;
  SignedInt arg;
  for (std::size_t k = 0; k < plan.weights.size(); ++k) {
    if (sgn(plan.weights[k]) == 0)
      continue;
    arg = q - static_cast<unsigned long>(k);
    if (sgn(arg) < 0)
      continue;
    const BigCount target_count =
        small_target ? count_quasipoly(target, arg) : count_flat(target, arg);
    mpz_addmul(acc.get_mpz_t(), plan.weights[k].get_mpz_t(), target_count.value().get_mpz_t());
  }
  return BigCount(std::move(acc));
}

} // namespace denum
