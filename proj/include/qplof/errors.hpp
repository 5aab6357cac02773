#pragma once

#include <stdexcept>
#include <string>

namespace qplof {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};

struct NonSymmetric : Error {
    NonSymmetric() : Error("matrix is not symmetric") {}
};

struct ZeroNormalVector : Error {
    ZeroNormalVector() : Error("hyperplane normal vector is zero") {}
};

struct ScaleLimitExceeded : Error {
    explicit ScaleLimitExceeded(const std::string& what) : Error("scale limit exceeded: " + what) {}
};

struct NotConvex : Error {
    NotConvex() : Error("quadratic form has a negative diagonal entry") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct InfeasibleRegion : Error {
    InfeasibleRegion() : Error("polyhedron is empty") {}
};

} // namespace qplof
