#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qplof/errors.hpp"
#include "qplof/rational.hpp"

namespace qplof {

/// Polynomial over the rationals in the infinitesimal, coefficients indexed
/// by degree, trailing zeros trimmed.
struct Poly {
    std::vector<Rational> coeff;

    Poly() = default;
    Poly(std::initializer_list<Rational> cs) : coeff(cs) { trim(); }
    explicit Poly(std::vector<Rational> cs) : coeff(std::move(cs)) { trim(); }

    static Poly constant(Rational c) {
        Poly p;
        if (!c.is_zero()) p.coeff.push_back(std::move(c));
        return p;
    }

    bool is_zero() const { return coeff.empty(); }
    bool is_one() const { return coeff.size() == 1 && coeff[0] == Rational(1); }

    // Degree of the zero polynomial is not queried anywhere; callers guard.
    std::size_t degree() const { return coeff.size() - 1; }

    std::size_t lowest_index() const {
        std::size_t i = 0;
        while (i < coeff.size() && coeff[i].is_zero()) ++i;
        return i;
    }
    const Rational& lowest_coeff() const { return coeff[lowest_index()]; }
    const Rational& leading_coeff() const { return coeff.back(); }

    void trim() {
        while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeff == b.coeff; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
};

inline Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& c : r.coeff) c = -c;
    return r;
}

inline Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeff.size(); ++i) r.coeff[i] += a.coeff[i];
    for (std::size_t i = 0; i < b.coeff.size(); ++i) r.coeff[i] += b.coeff[i];
    r.trim();
    return r;
}

inline Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.coeff.assign(a.coeff.size() + b.coeff.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        for (std::size_t j = 0; j < b.coeff.size(); ++j)
            r.coeff[i + j] += a.coeff[i] * b.coeff[j];
    r.trim();
    return r;
}

inline Poly scale(const Poly& a, const Rational& s) {
    Poly r = a;
    for (auto& c : r.coeff) c *= s;
    r.trim();
    return r;
}

/// Euclidean division; returns (quotient, remainder) with a = q*b + r.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    Poly rem = a;
    Poly quot;
    if (!rem.is_zero() && rem.degree() >= b.degree())
        quot.coeff.assign(rem.degree() - b.degree() + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        std::size_t shift = rem.degree() - b.degree();
        Rational factor = rem.leading_coeff() / b.leading_coeff();
        quot.coeff[shift] += factor;
        for (std::size_t i = 0; i < b.coeff.size(); ++i)
            rem.coeff[i + shift] -= factor * b.coeff[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

/// Monic greatest common divisor.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return scale(a, inverse(a.leading_coeff()));
}

/// Element of the ordered field of rational functions in a positive
/// infinitesimal. Canonical form: numerator and denominator coprime, the
/// denominator's lowest-degree nonzero coefficient equal to one. The order
/// is the behavior as the infinitesimal tends to zero from above.
class RatFunc {
public:
    RatFunc() : den_{Rational(1)} {}
    RatFunc(int v) : num_(Poly::constant(Rational(v))), den_{Rational(1)} {}
    RatFunc(long v) : num_(Poly::constant(Rational(v))), den_{Rational(1)} {}
    RatFunc(const Rational& v) : num_(Poly::constant(v)), den_{Rational(1)} {}
    explicit RatFunc(Poly num) : num_(std::move(num)), den_{Rational(1)} {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero();
        normalize();
    }

    static RatFunc epsilon() { return RatFunc(Poly{Rational(0), Rational(1)}); }

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero();
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Sign as the infinitesimal tends to 0+.
    friend int sign(const RatFunc& a) {
        if (a.num_.is_zero()) return 0;
        return sign(a.num_.lowest_coeff());
    }

    friend bool operator<(const RatFunc& a, const RatFunc& b) { return sign(a - b) < 0; }
    friend bool operator>(const RatFunc& a, const RatFunc& b) { return b < a; }
    friend bool operator<=(const RatFunc& a, const RatFunc& b) { return !(b < a); }
    friend bool operator>=(const RatFunc& a, const RatFunc& b) { return !(a < b); }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly{Rational(1)};
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        Rational low = den_.lowest_coeff();
        if (low != Rational(1)) {
            Rational inv = inverse(low);
            num_ = scale(num_, inv);
            den_ = scale(den_, inv);
        }
    }

    Poly num_;
    Poly den_;
};

inline RatFunc inverse(const RatFunc& a) { return RatFunc(1) / a; }

// ---------------------------------------------------------------------------
// Literal grammar: "<poly>" or "(<poly>)/(<poly>)", poly = signed sum of
// terms "<rational>", "<rational>*e", "<rational>*e^<k>". The bare forms
// "e" and "e^<k>" are accepted with an implied unit coefficient.
// ---------------------------------------------------------------------------

namespace detail {

inline Poly parse_poly(const std::string& text) {
    if (text.empty()) throw ParseError("empty polynomial literal");
    std::vector<Rational> coeff;
    std::size_t pos = 0;
    while (pos < text.size()) {
        bool neg = false;
        if (text[pos] == '+' || text[pos] == '-') {
            neg = text[pos] == '-';
            ++pos;
            if (pos >= text.size()) throw ParseError("dangling sign in '" + text + "'");
        }
        std::size_t end = pos;
        while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
        std::string term = text.substr(pos, end - pos);
        pos = end;

        Rational c(1);
        std::size_t deg = 0;
        auto star = term.find('*');
        std::string var;
        if (star != std::string::npos) {
            c = parse_rational(term.substr(0, star));
            var = term.substr(star + 1);
        } else if (!term.empty() && term[0] == 'e') {
            var = term;
        } else {
            c = parse_rational(term);
        }
        if (!var.empty()) {
            if (var == "e") {
                deg = 1;
            } else if (var.size() > 2 && var[0] == 'e' && var[1] == '^' &&
                       is_digits(var.substr(2))) {
                deg = std::stoul(var.substr(2));
                if (deg > 512) throw ParseError("exponent too large in '" + term + "'");
            } else {
                throw ParseError("invalid term '" + term + "'");
            }
        }
        if (neg) c = -c;
        if (coeff.size() <= deg) coeff.resize(deg + 1, Rational(0));
        coeff[deg] += c;
    }
    return Poly(std::move(coeff));
}

inline std::string render_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t d = 0; d < p.coeff.size(); ++d) {
        const Rational& c = p.coeff[d];
        if (c.is_zero()) continue;
        std::string term = render(sign(c) < 0 && !out.empty() ? -c : c);
        if (d == 1) term += "*e";
        if (d > 1) term += "*e^" + std::to_string(d);
        if (out.empty())
            out = term;
        else
            out += (sign(c) < 0 ? "-" : "+") + term;
    }
    return out;
}

} // namespace detail

/// Expects whitespace already stripped.
inline RatFunc parse_ratfunc(const std::string& text) {
    if (text.empty()) throw ParseError("empty scalar literal");
    if (text[0] != '(') return RatFunc(detail::parse_poly(text));
    auto close = text.find(')');
    if (close == std::string::npos || close + 2 >= text.size() || text[close + 1] != '/' ||
        text[close + 2] != '(' || text.back() != ')')
        throw ParseError("expected '(<poly>)/(<poly>)' in '" + text + "'");
    Poly num = detail::parse_poly(text.substr(1, close - 1));
    Poly den = detail::parse_poly(text.substr(close + 3, text.size() - close - 4));
    if (den.is_zero()) throw ParseError("zero denominator in '" + text + "'");
    return RatFunc(std::move(num), std::move(den));
}

inline std::string render(const RatFunc& a) {
    if (a.denominator().is_one()) return detail::render_poly(a.numerator());
    return "(" + detail::render_poly(a.numerator()) + ")/(" +
           detail::render_poly(a.denominator()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RatFunc& a) {
    return os << render(a);
}

} // namespace qplof

namespace Eigen {

template <>
struct NumTraits<qplof::RatFunc> : GenericNumTraits<qplof::RatFunc> {
    typedef qplof::RatFunc Real;
    typedef qplof::RatFunc NonInteger;
    typedef qplof::RatFunc Nested;
    typedef qplof::RatFunc Literal;

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 40,
        MulCost = 40
    };

    static int digits10() { return 0; }
};

} // namespace Eigen
