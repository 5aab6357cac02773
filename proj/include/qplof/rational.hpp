#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <ostream>
#include <string>
#include <utility>

#include "qplof/errors.hpp"

namespace qplof {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, eagerly normalized: gcd(|num|, den) = 1,
/// den > 0. Equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(int v) : num_(v) {}
    Rational(long v) : num_(v) {}
    Rational(long long v) : num_(v) {}
    explicit Rational(BigInt n) : num_(std::move(n)) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw DivisionByZero();
        normalize();
    }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero();
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_.is_zero()) den_ = 1;
    }

    BigInt num_{0};
    BigInt den_{1};
};

inline int sign(const Rational& a) { return a.numerator().sign(); }

inline Rational inverse(const Rational& a) { return Rational(1) / a; }

inline std::string render(const Rational& a) {
    std::string s = a.numerator().str();
    if (a.denominator() != 1) s += "/" + a.denominator().str();
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& a) {
    return os << render(a);
}

/// Accepts "<int>" or "<int>/<posint>", whitespace already stripped.
Rational parse_rational(const std::string& text);

namespace detail {

inline bool is_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

inline BigInt parse_integer(const std::string& s) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    if (!is_digits(body)) throw ParseError("invalid integer literal '" + s + "'");
    BigInt v(body);
    return neg ? BigInt(-v) : v;
}

} // namespace detail

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(detail::parse_integer(text));
    std::string den = text.substr(slash + 1);
    if (!detail::is_digits(den) || BigInt(den).is_zero())
        throw ParseError("denominator must be a positive integer in '" + text + "'");
    return Rational(detail::parse_integer(text.substr(0, slash)), BigInt(den));
}

} // namespace qplof

namespace Eigen {

template <>
struct NumTraits<qplof::Rational> : GenericNumTraits<qplof::Rational> {
    typedef qplof::Rational Real;
    typedef qplof::Rational NonInteger;
    typedef qplof::Rational Nested;
    typedef qplof::Rational Literal;

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 10
    };

    static int digits10() { return 0; }
};

} // namespace Eigen
