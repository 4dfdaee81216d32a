#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qloops {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Requested problem exceeds a configured size cap.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A non-finite intermediate or failed convergence.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed internal structure (e.g. a loop configuration with dangling link references).
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Spin quantum number stored doubled (2S), so half-integers stay integral.
struct Spin {
    int two_s = 1;

    constexpr double value() const { return 0.5 * two_s; }
    constexpr int theta() const { return two_s + 1; }
};

/// Parses "1/2", "3/2", "1", "2" into a doubled spin. Throws DomainError otherwise.
Spin parse_spin(const std::string& text);
std::string format_spin(Spin s);

/// Natural log of a nonnegative big integer; -inf for zero.
double log_bigint(const BigInt& x);

}  // namespace qloops
