#include "qnev/error.hpp"

namespace qnev {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::EvalAtPole: return "EvalAtPole";
        case ErrorKind::RealPointDegenerate: return "RealPointDegenerate";
        case ErrorKind::UndefinedAtZeroPole: return "UndefinedAtZeroPole";
        case ErrorKind::ZeroCenter: return "ZeroCenter";
        case ErrorKind::SymmetrizationNotReal: return "SymmetrizationNotReal";
        case ErrorKind::DegenerateTransform: return "DegenerateTransform";
        case ErrorKind::ZeroFunctionReciprocal: return "ZeroFunctionReciprocal";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::RootFinderFailed: return "RootFinderFailed";
        case ErrorKind::BoundaryDivisor: return "BoundaryDivisor";
        case ErrorKind::TooManyRejections: return "TooManyRejections";
        case ErrorKind::CenterIsZeroOrPole: return "CenterIsZeroOrPole";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

}  // namespace qnev
