#pragma once

#include <cstdint>
#include <string>

#include "qplof/quadratic.hpp"

namespace qplof {

template <class S>
struct Instance {
    Polyhedron<S> P;
    QuadraticFunction<S> f;
    std::string name;
};

enum class Shape { Generic, Convex, Lp, Infeasible, UnboundedBiased };

inline const char* to_string(Shape s) {
    switch (s) {
        case Shape::Generic: return "generic";
        case Shape::Convex: return "convex";
        case Shape::Lp: return "lp";
        case Shape::Infeasible: return "infeasible";
        case Shape::UnboundedBiased: return "unbounded-biased";
    }
    return "?";
}

inline Shape parse_shape(const std::string& s) {
    if (s == "generic") return Shape::Generic;
    if (s == "convex") return Shape::Convex;
    if (s == "lp") return Shape::Lp;
    if (s == "infeasible") return Shape::Infeasible;
    if (s == "unbounded-biased") return Shape::UnboundedBiased;
    throw ParseError("unknown instance shape '" + s + "'");
}

struct InstanceSpec {
    Index n = 2;
    Index m = 3;
    long bound = 3;
    std::uint64_t seed = 0;
    Shape shape = Shape::Generic;

    void validate() const {
        if (n < 1) throw Error("instance spec requires n >= 1");
        if (m < 0) throw Error("instance spec requires m >= 0");
        if (bound < 1) throw Error("instance spec requires bound >= 1");
    }
};

} // namespace qplof
