#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace pj {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Library-wide error type. Everything that violates a precondition
// (chart mismatch, non-invertible scalar, arity errors, ...) throws this.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string to_string(const Rational& r) { return r.str(); }

} // namespace pj
