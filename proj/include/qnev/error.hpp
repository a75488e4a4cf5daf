#pragma once

#include <stdexcept>
#include <string>

namespace qnev {

enum class ErrorKind {
    DivisionByZero,
    InvalidArgument,
    EvalAtPole,
    RealPointDegenerate,
    UndefinedAtZeroPole,
    ZeroCenter,
    SymmetrizationNotReal,
    DegenerateTransform,
    ZeroFunctionReciprocal,
    ZeroPolynomial,
    RootFinderFailed,
    BoundaryDivisor,
    TooManyRejections,
    CenterIsZeroOrPole,
    InvalidConfig,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qnev
