#pragma once

#include <algorithm>
#include <cctype>
#include <string>

#include "qplof/rational.hpp"
#include "qplof/ratfunc.hpp"

namespace qplof {

namespace detail {

inline std::string strip_whitespace(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char ch) { return std::isspace(ch); }),
            s.end());
    return s;
}

} // namespace detail

/// Compile-time dispatch between the supported field backends. Whole problem
/// instances live over exactly one backend; there is no mixed arithmetic.
template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static constexpr const char* name = "rational";
    static Rational parse(const std::string& text) {
        return parse_rational(detail::strip_whitespace(text));
    }
};

template <>
struct FieldTraits<RatFunc> {
    static constexpr const char* name = "ratfunc-eps";
    static RatFunc parse(const std::string& text) {
        return parse_ratfunc(detail::strip_whitespace(text));
    }
};

template <class S>
S scalar_from_int(long v) {
    return S(v);
}

} // namespace qplof
