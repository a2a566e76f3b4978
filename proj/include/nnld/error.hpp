#pragma once

#include <stdexcept>
#include <string>

namespace nnld {

enum class ErrorKind {
    invalid_parameter,
    capacity,
    precondition,
    budget_exceeded,
    unsupported_arithmetic,
    refused,
    parse,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind maps one-to-one onto the
/// status codes of the C interface.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

/// Upper limit on elementary operations for the enumerating algorithms.
struct Budget {
    static constexpr unsigned long long default_max_ops = 1'000'000'000ULL;
    unsigned long long max_ops = default_max_ops;
};

} // namespace nnld
