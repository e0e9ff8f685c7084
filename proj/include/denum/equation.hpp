#ifndef DENUM_EQUATION_HPP
#define DENUM_EQUATION_HPP

#include <cstdint>
#include <vector>

#include "denum/bigint.hpp"

namespace denum {

// A linear Diophantine equation a1*x1 + ... + an*xn = b over non-negative
// integer unknowns, represented by its fixed positive coefficients.  The
// right-hand side b is supplied per query.  Derived structure is computed
// once on construction:
//   modulus()    M = lcm(a_i), the period of the counting function's
//                polynomial pieces,
//   coeff_sum()  A = a1 + ... + an,
//   common_gcd() g = gcd(a_i); solutions exist only for b divisible by g.
class Equation {
public:
  explicit Equation(std::vector<std::uint64_t> coeffs);

  std::size_t arity() const { return coeffs_.size(); }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  const SignedInt& modulus() const { return modulus_; }
  const SignedInt& coeff_sum() const { return coeff_sum_; }
  std::uint64_t common_gcd() const { return gcd_; }

  // The equation with every coefficient divided by the common gcd.  Its
  // modulus is modulus() / common_gcd() (shared prime-power bookkeeping),
  // so quotients floor(b / M) agree between an equation and its reduction.
  Equation reduced() const;

private:
  std::vector<std::uint64_t> coeffs_;
  SignedInt modulus_;
  SignedInt coeff_sum_;
  std::uint64_t gcd_;
};

// Validates and builds an Equation: the list must be non-empty and every
// coefficient positive.  Coefficient order is preserved (counts are
// order-independent, but reports echo the user's order).
Equation make_equation(std::vector<std::uint64_t> coeffs);

// A value known to lie in [0, modulus).  Constructing one re-checks the
// range so downstream table indexing cannot be handed a raw b by mistake.
class Residue {
public:
  Residue(SignedInt value, const SignedInt& modulus);

  // b reduced modulo the equation's modulus (b may be any non-negative
  // arbitrary-precision integer).
  static Residue of(const Equation& eq, const SignedInt& b);

  const SignedInt& value() const { return value_; }

private:
  SignedInt value_;
};

// Ceiling on the table length any dense method will allocate, i.e. on the
// largest b (and bound product) accepted by count_oracle / count_flat.
// Reads the DENUMERANT_ORACLE_GUARD environment variable (positive decimal
// integer) on each call; unset or unparsable means the default 10^7.
std::uint64_t default_oracle_guard();

// Dense dynamic-programming table of counts P(0..b): one pass per
// coefficient a, adding table[t - a] into table[t] for ascending t, exactly
// the expansion of prod 1/(1 - z^a) one factor at a time.  This is the
// reference oracle every other method is certified against.
std::vector<SignedInt> oracle_table(const Equation& eq, std::uint64_t b);

// P(b) via oracle_table.  Throws resource_limit_error when b exceeds the
// guard, invalid_input_error for negative b.
BigCount count_oracle(const Equation& eq, const SignedInt& b,
                      std::uint64_t guard = default_oracle_guard());

} // namespace denum

#endif // DENUM_EQUATION_HPP
