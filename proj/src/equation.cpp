#include "denum/equation.hpp"

#include <cstdlib>
#include <string>

#include "denum/combinatorics.hpp"

namespace denum {

Equation::Equation(std::vector<std::uint64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw invalid_input_error("equation needs at least one coefficient");
  for (std::uint64_t a : coeffs_)
    if (a == 0)
      throw invalid_input_error("coefficients must be positive");
  modulus_ = lcm_all(coeffs_);
  coeff_sum_ = 0;
  for (std::uint64_t a : coeffs_)
    coeff_sum_ += static_cast<unsigned long>(a);
  gcd_ = gcd_all(coeffs_);
}

Equation Equation::reduced() const {
  if (gcd_ == 1)
    return *this;
  std::vector<std::uint64_t> scaled(coeffs_);
  for (std::uint64_t& a : scaled)
    a /= gcd_;
  return Equation(std::move(scaled));
}

Equation make_equation(std::vector<std::uint64_t> coeffs) {
  return Equation(std::move(coeffs));
}

Residue::Residue(SignedInt value, const SignedInt& modulus) : value_(std::move(value)) {
  if (sgn(value_) < 0 || value_ >= modulus)
    throw invalid_input_error("residue " + value_.get_str() + " out of range [0, " +
                              modulus.get_str() + ")");
}

Residue Residue::of(const Equation& eq, const SignedInt& b) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  SignedInt r;
  mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), eq.modulus().get_mpz_t());
  return Residue(std::move(r), eq.modulus());
}

std::uint64_t default_oracle_guard() {
  static constexpr std::uint64_t kDefault = 10'000'000;
  const char* env = std::getenv("DENUMERANT_ORACLE_GUARD");
  if (env == nullptr || *env == '\0')
    return kDefault;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || parsed == 0)
    return kDefault;
  return parsed;
}

std::vector<SignedInt> oracle_table(const Equation& eq, std::uint64_t b) {
  if (b + 1 == 0)
    throw resource_limit_error("dense table length overflows");
  std::vector<SignedInt> table(b + 1);
  table[0] = 1;
  for (std::uint64_t a : eq.coeffs())
    for (std::uint64_t t = a; t <= b; ++t)
      table[t] += table[t - a];
  return table;
}

BigCount count_oracle(const Equation& eq, const SignedInt& b, std::uint64_t guard) {
  if (sgn(b) < 0)
    throw invalid_input_error("right-hand side must be non-negative");
  if (b > guard)
    throw resource_limit_error("right-hand side " + b.get_str() +
                               " exceeds the dense-table guard " + std::to_string(guard) +
                               "; use the per-residue or decimation method");
  const std::uint64_t bv = mpz_get_ui(b.get_mpz_t());
  return BigCount(oracle_table(eq, bv).back());
}

} // namespace denum
