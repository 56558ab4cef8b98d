#pragma once

#include <stdexcept>
#include <string>

namespace lpc {

// Requested a norming witness of the zero sequence.
struct ZeroSequenceError : std::domain_error {
    explicit ZeroSequenceError(const std::string& what) : std::domain_error(what) {}
};

// An operation that needs a finite exponent was called with p = inf.
struct InfiniteExponentError : std::domain_error {
    explicit InfiniteExponentError(const std::string& what) : std::domain_error(what) {}
};

struct DimensionMismatchError : std::invalid_argument {
    explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptySequenceError : std::domain_error {
    explicit EmptySequenceError(const std::string& what) : std::domain_error(what) {}
};

struct UnknownPointError : std::out_of_range {
    explicit UnknownPointError(const std::string& what) : std::out_of_range(what) {}
};

struct ZeroVectorError : std::domain_error {
    explicit ZeroVectorError(const std::string& what) : std::domain_error(what) {}
};

// No tail cutoff below the truncation horizon meets the requested tolerance.
struct NoCertificateError : std::runtime_error {
    explicit NoCertificateError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lpc
