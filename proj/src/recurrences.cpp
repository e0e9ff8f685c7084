#include "denum/recurrences.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "denum/combinatorics.hpp"

namespace denum {

namespace {

constexpr std::uint64_t kWeightGuard = 10'000'000;

// Largest argument answered by a dense prefix table instead of recursing.
constexpr std::uint64_t kRecursionFloor = 1'000;

// Below this length a plain oracle table is cheaper than running the flat
// recurrence (which pays for weight construction up front).
constexpr std::uint64_t kOracleCutoff = 10'000;

std::uint64_t coeff_sum_word(const Equation& eq, const char* purpose) {
  if (eq.coeff_sum() > kWeightGuard)
    throw resource_limit_error(std::string("coefficient sum ") + eq.coeff_sum().get_str() +
                               " too large for " + purpose);
  return mpz_get_ui(eq.coeff_sum().get_mpz_t());
}

} // namespace

FlatRecurrenceCoeffs lprime_coeffs(const Equation& eq) {
  const std::uint64_t A = coeff_sum_word(eq, "flat-recurrence weights");
  const std::size_t n = eq.arity();
  const std::size_t order = static_cast<std::size_t>(A) - n; // A - n >= 0
  // binrow[t] = C(t, n - 1) for t = 0..n-1+order, built by one exact
  // multiply/divide per step from C(n - 1, n - 1) = 1.
  std::vector<SignedInt> binrow(n + order, SignedInt(0));
  binrow[n - 1] = 1;
  for (std::size_t t = n - 1; t + 1 < binrow.size(); ++t) {
    binrow[t + 1] = binrow[t] * static_cast<unsigned long>(t + 1);
    mpz_divexact_ui(binrow[t + 1].get_mpz_t(), binrow[t + 1].get_mpz_t(),
                    static_cast<unsigned long>(t + 2 - n));
  }
  std::vector<SignedInt> weights(order + 1, SignedInt(0));
  std::vector<SignedInt> subset_weights;
  subset_weights.reserve(n);
  for (std::uint64_t a : eq.coeffs())
    subset_weights.emplace_back(static_cast<unsigned long>(a));
  detail::for_each_subset(subset_weights, [&](int sign, const SignedInt& subset_sum) {
    // Contributions C(n - 1 + k - sum, n - 1) vanish for k < sum.
    if (subset_sum > order)
      return;
    const std::size_t from = mpz_get_ui(subset_sum.get_mpz_t());
    for (std::size_t k = from; k <= order; ++k) {
      if (sign > 0)
        weights[k] += binrow[n - 1 + k - from];
      else
        weights[k] -= binrow[n - 1 + k - from];
    }
  });
  if (weights[0] != 1)
    throw consistency_error("flat-recurrence weights must start at 1");
  for (std::size_t k = 0; k <= order; ++k) {
    if (sgn(weights[k]) < 0)
      throw consistency_error("flat-recurrence weight " + std::to_string(k) + " is negative");
    if (weights[k] != weights[order - k])
      throw consistency_error("flat-recurrence weights are not palindromic at " +
                              std::to_string(k));
  }
  return FlatRecurrenceCoeffs{std::move(weights)};
}

std::vector<SignedInt> flat_table(const Equation& eq, std::uint64_t b,
                                  std::span<const SignedInt> seed) {
  if (b + 1 == 0)
    throw resource_limit_error("dense table length overflows");
  if (!seed.empty() && seed[0] != 1)
    throw invalid_input_error("table prefix does not start with P(0) = 1");
  const FlatRecurrenceCoeffs rec = lprime_coeffs(eq);
  const std::size_t order = rec.weights.size() - 1;
  const unsigned long n = static_cast<unsigned long>(eq.arity());
  std::vector<SignedInt> table;
  table.reserve(b + 1);
  for (std::size_t t = 0; t < seed.size() && t <= b; ++t)
    table.push_back(seed[t]);
  std::size_t t = table.size();
  // binom = C(t + n - 1, n - 1), advanced alongside t.
  SignedInt binom = binomial(SignedInt(static_cast<unsigned long>(t) + n - 1), n - 1).value();
  SignedInt val;
  for (; t <= b; ++t) {
    val = binom;
    const std::size_t upto = std::min(order, t);
    for (std::size_t k = 1; k <= upto; ++k)
      mpz_submul(val.get_mpz_t(), rec.weights[k].get_mpz_t(), table[t - k].get_mpz_t());
    if (sgn(val) < 0)
      throw consistency_error("flat recurrence produced a negative count at b = " +
                              std::to_string(t));
    table.push_back(val);
    binom *= static_cast<unsigned long>(t) + n;
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(t) + 1);
  }
  return table;
}

BigCount count_flat(const Equation& eq, const SignedInt& b, std::uint64_t guard) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  if (b > guard)
    throw resource_limit_error("right-hand side " + b.get_str() +
                               " exceeds the dense-table guard " + std::to_string(guard) +
                               "; use the per-residue or decimation method");
  return BigCount(flat_table(eq, mpz_get_ui(b.get_mpz_t())).back());
}

namespace {

// P table long enough for every bounded-count argument r + k*m <= (m-1)*A.
std::vector<SignedInt> decimation_base_table(const Equation& eq, std::uint64_t upto) {
  return upto <= kOracleCutoff ? oracle_table(eq, upto) : flat_table(eq, upto);
}

std::uint64_t decimation_row_span(const Equation& eq, unsigned m, std::uint64_t A) {
  const std::uint64_t span = (static_cast<std::uint64_t>(m) - 1) * A;
  if (span > kWeightGuard || span / (m - 1) != A)
    throw resource_limit_error("decimation weights for modulus " + std::to_string(m) +
                               " need a table of length " + eq.coeff_sum().get_str() +
                               " * (m-1), beyond the dense-table guard");
  return span;
}

std::vector<SignedInt> decimation_row(const Equation& eq, unsigned m, std::uint64_t A,
                                      std::uint64_t r, std::span<const SignedInt> base) {
  const std::uint64_t depth = ((static_cast<std::uint64_t>(m) - 1) * A - r) / m;
  const BoundedSystem boxed(eq, std::vector<SignedInt>(eq.arity(), SignedInt(m)));
  std::vector<SignedInt> row;
  row.reserve(depth + 1);
  for (std::uint64_t k = 0; k <= depth; ++k)
    row.push_back(bounded_count_with_table(boxed, SignedInt(r + k * m), base).value());
  return row;
}

} // namespace

DecimationCoeffs decimation_coeffs(const Equation& eq, unsigned m) {
  if (m < 2)
    throw invalid_input_error("decimation modulus must be at least 2");
  const std::uint64_t A = coeff_sum_word(eq, "decimation weights");
  const std::uint64_t span = decimation_row_span(eq, m, A);
  const std::vector<SignedInt> base = decimation_base_table(eq, span);
  DecimationCoeffs out;
  out.m = m;
  out.rows.reserve(m);
  SignedInt total = 0;
  for (std::uint64_t r = 0; r < m; ++r) {
    out.rows.push_back(decimation_row(eq, m, A, r, base));
    for (const SignedInt& w : out.rows.back())
      total += w;
  }
  // Every box assignment t in [0, m)^n lands in exactly one (r, k) cell.
  SignedInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), m, static_cast<unsigned long>(eq.arity()));
  if (total != expected)
    throw consistency_error("decimation weights sum to " + total.get_str() +
                            ", expected m^n = " + expected.get_str());
  return out;
}

DecimationSolver::DecimationSolver(Equation eq, unsigned m) : eq_(std::move(eq)), m_(m) {
  if (m_ < 2)
    throw invalid_input_error("decimation modulus must be at least 2");
  coeff_sum_ = coeff_sum_word(eq_, "decimation weights");
  const std::uint64_t span = decimation_row_span(eq_, m_, coeff_sum_);
  // Recurse only above a dense prefix: max(A^2, 1000) when that is still
  // within the guard, and never less than the rows' own span.
  std::uint64_t floor = std::max(kRecursionFloor, span);
  const std::uint64_t square = coeff_sum_ * coeff_sum_; // A <= 1e7, no overflow
  if (square > floor && square <= kWeightGuard)
    floor = square;
  base_max_ = floor;
  base_ = decimation_base_table(eq_, base_max_);
  rows_.resize(m_);
  if (m_ == 2)
    half_.emplace(eq_);
}

const std::vector<SignedInt>& DecimationSolver::row_for(std::uint64_t r) {
  if (!rows_[r]) {
    if (m_ == 2) {
      // Halving weights are the 0/1 counts themselves: row[k] = P*(r + 2k).
      const std::uint64_t depth = (coeff_sum_ - r) / 2;
      std::vector<SignedInt> row;
      row.reserve(depth + 1);
      for (std::uint64_t k = 0; k <= depth; ++k)
        row.push_back(half_->at(SignedInt(r + 2 * k)).value());
      rows_[r] = std::move(row);
    } else {
      rows_[r] = decimation_row(eq_, m_, coeff_sum_, r, base_);
    }
  }
  return *rows_[r];
}

const SignedInt& DecimationSolver::resolve(const SignedInt& x) {
  if (x <= base_max_)
    return base_[mpz_get_ui(x.get_mpz_t())];
  const auto hit = memo_.find(x);
  if (hit != memo_.end())
    return hit->second;
  const std::uint64_t r = mpz_fdiv_ui(x.get_mpz_t(), m_);
  SignedInt q;
  mpz_fdiv_q_ui(q.get_mpz_t(), x.get_mpz_t(), m_);
  const std::vector<SignedInt>& row = row_for(r);
  SignedInt acc = 0;
  SignedInt arg;
  for (std::size_t k = 0; k < row.size(); ++k) {
    arg = q - static_cast<unsigned long>(k);
    if (sgn(arg) < 0)
      break; // deeper terms only shrink the argument further
    if (row[k] != 0)
      mpz_addmul(acc.get_mpz_t(), row[k].get_mpz_t(), resolve(arg).get_mpz_t());
  }
  if (sgn(acc) < 0)
    throw consistency_error("decimation produced a negative count");
  return memo_.emplace(x, std::move(acc)).first->second;
}

BigCount DecimationSolver::count(const SignedInt& b) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  return BigCount(resolve(b));
}

BigCount count_decimated(const Equation& eq, const SignedInt& b, unsigned m) {
  return DecimationSolver(eq, m).count(b);
}

} // namespace denum
