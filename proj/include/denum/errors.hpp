#ifndef DENUM_ERRORS_HPP
#define DENUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace denum {

// Caller handed us something malformed: empty coefficient list, a zero or
// negative coefficient, a negative right-hand side, a residue out of range,
// a cache file that does not belong to the active equation, and so on.
class invalid_input_error : public std::runtime_error {
public:
  explicit invalid_input_error(const std::string& what) : std::runtime_error(what) {}
};

// The request is well-formed but would exceed a hard size guard (dense table
// too long, too many terms for subset enumeration).  Distinct from
// invalid_input_error so callers can suggest a different method instead of
// rejecting the equation outright.
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A method was asked to run outside its region of validity (closed form with
// non-coprime coefficients, two-variable method on a three-term equation).
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed: a count came out negative, two independent
// routes to the same value disagreed, or a structural identity broke.  Any
// throw of this type is a bug in this library, never a user error.
class consistency_error : public std::logic_error {
public:
  explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace denum

#endif // DENUM_ERRORS_HPP
