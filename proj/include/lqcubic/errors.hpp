#pragma once

#include <stdexcept>
#include <string>

namespace lqcubic {

// Structured domain failures (bad forms, bad arguments). The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidForm : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidArgument : public DomainError {
public:
    using DomainError::DomainError;
};

class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

class DegenerateBlock : public DomainError {
public:
    DegenerateBlock(int block, const std::string& what)
        : DomainError(what), block_(block) {}
    int block() const noexcept { return block_; }

private:
    int block_;
};

// A computation would exceed one of the enumeration guards. Exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lqcubic
