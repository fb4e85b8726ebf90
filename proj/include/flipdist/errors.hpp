#pragma once

#include <stdexcept>
#include <string>

namespace flipdist {

// Input problems map to exit code 1, resource limits to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NotADiagonal : ValidationError {
    explicit NotADiagonal(const std::string& what) : ValidationError("NotADiagonal: " + what) {}
};

struct NotASubpolygon : ValidationError {
    explicit NotASubpolygon(const std::string& what) : ValidationError("NotASubpolygon: " + what) {}
};

struct SizeMismatch : ValidationError {
    explicit SizeMismatch(const std::string& what) : ValidationError("SizeMismatch: " + what) {}
};

struct PreconditionViolated : ValidationError {
    explicit PreconditionViolated(const std::string& what)
        : ValidationError("PreconditionViolated: " + what) {}
};

struct IsRoot : ValidationError {
    explicit IsRoot(const std::string& what) : ValidationError("IsRoot: " + what) {}
};

struct NotInternal : ValidationError {
    explicit NotInternal(const std::string& what) : ValidationError("NotInternal: " + what) {}
};

struct ParseError : ValidationError {
    explicit ParseError(const std::string& what) : ValidationError("ParseError: " + what) {}
};

struct InvalidTriangulation : ValidationError {
    explicit InvalidTriangulation(const std::string& what) : ValidationError("InvalidTriangulation: " + what) {}
};

struct TooLarge : BudgetError {
    explicit TooLarge(const std::string& what) : BudgetError("TooLarge: " + what) {}
};

struct TooLargeForExact : BudgetError {
    explicit TooLargeForExact(const std::string& what) : BudgetError("TooLargeForExact: " + what) {}
};

struct BudgetExceeded : BudgetError {
    explicit BudgetExceeded(const std::string& what) : BudgetError("BudgetExceeded: " + what) {}
};

}  // namespace flipdist
