#include "denum/combinatorics.hpp"

#include <numeric>

namespace denum {

std::uint64_t gcd_all(std::span<const std::uint64_t> values) {
  if (values.empty())
    throw invalid_input_error("gcd of an empty list");
  std::uint64_t g = 0;
  for (std::uint64_t v : values) {
    if (v == 0)
      throw invalid_input_error("gcd over a list containing zero");
    g = std::gcd(g, v);
  }
  return g;
}

SignedInt lcm_all(std::span<const std::uint64_t> values) {
  if (values.empty())
    throw invalid_input_error("lcm of an empty list");
  SignedInt acc = 1;
  SignedInt g;
  for (std::uint64_t v : values) {
    if (v == 0)
      throw invalid_input_error("lcm over a list containing zero");
    mpz_gcd_ui(g.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(v));
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), g.get_mpz_t());
    acc *= static_cast<unsigned long>(v);
  }
  return acc;
}

BigCount binomial(const SignedInt& top, unsigned m) {
  if (sgn(top) < 0)
    throw invalid_input_error("binomial with negative top argument " + top.get_str());
  if (top < m)
    throw invalid_input_error("binomial out of domain: top " + top.get_str() +
                              " < lower " + std::to_string(m));
  SignedInt result = 1;
  // result holds C(top - m + i, i) after step i; the division by i + 1 in the
  // next step is exact because the product of any i + 1 consecutive integers
  // is divisible by (i + 1)!.
  SignedInt factor = top - m;
  for (unsigned i = 0; i < m; ++i) {
    factor += 1;
    result *= factor;
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), i + 1);
  }
  return BigCount(std::move(result));
}

BigCount barred_binomial(const SignedInt& top, unsigned m) {
  if (sgn(top) < 0 || top < m)
    return BigCount();
  return binomial(top, m);
}

} // namespace denum
