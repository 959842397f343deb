#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace conlab {

using BigNat = boost::multiprecision::cpp_int;

// Domain failure the caller can act on (bad input, unsatisfied precondition).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// A computation exceeded the documented desk-scale resource bounds.
struct ResourceError : Error {
    using Error::Error;
};

// A provider answered Unknown where a decision was required.
struct OracleRequired : Error {
    using Error::Error;
};

} // namespace conlab
