#ifndef FNET_SCALAR_HPP
#define FNET_SCALAR_HPP

// Numeric policy for the two engine modes: exact rationals (default) and
// doubles with absolute tolerance 1e-9. All monetary quantities go through
// scalar_traits so the algorithms read identically in both modes.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "fnet/errors.hpp"

namespace fnet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;

    static bool eq(const Rational& a, const Rational& b) { return a == b; }
    // "definitely less": strict in exact mode
    static bool lt(const Rational& a, const Rational& b) { return a < b; }
    static bool le(const Rational& a, const Rational& b) { return a <= b; }
    static bool is_zero(const Rational& a) { return a == 0; }
    static bool is_finite(const Rational&) { return true; }

    static Rational from_int(long long v) { return Rational(v); }
    static Rational from_fraction(long long num, long long den) { return Rational(num, den); }
    static double to_double(const Rational& a) { return a.convert_to<double>(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;

    static bool eq(double a, double b) { return std::fabs(a - b) <= tolerance; }
    static bool lt(double a, double b) { return a < b - tolerance; }
    static bool le(double a, double b) { return a <= b + tolerance; }
    static bool is_zero(double a) { return std::fabs(a) <= tolerance; }
    static bool is_finite(double a) { return std::isfinite(a); }

    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_fraction(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double a) { return a; }
};

template <class S>
S frac(long long num, long long den = 1) {
    return scalar_traits<S>::from_fraction(num, den);
}

namespace detail {

inline Rational parse_rational_amount(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw input_error("empty amount");
    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = (s[pos] == '-');
        ++pos;
    }
    auto slash = s.find('/', pos);
    if (slash != std::string::npos) {
        std::string num = s.substr(pos, slash - pos);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty() ||
            num.find_first_not_of("0123456789") != std::string::npos ||
            den.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("bad fraction literal: '" + text + "'");
        BigInt n(num), d(den);
        if (d == 0) throw input_error("zero denominator in '" + text + "'");
        Rational r(n, d);
        return negative ? Rational(-r) : r;
    }
    auto dot = s.find('.', pos);
    std::string whole = (dot == std::string::npos) ? s.substr(pos) : s.substr(pos, dot - pos);
    std::string tail = (dot == std::string::npos) ? std::string() : s.substr(dot + 1);
    if (whole.empty() && tail.empty()) throw input_error("bad amount literal: '" + text + "'");
    if (whole.find_first_not_of("0123456789") != std::string::npos ||
        tail.find_first_not_of("0123456789") != std::string::npos)
        throw input_error("bad amount literal: '" + text + "'");
    // exact decimal expansion: "2.2" -> 22/10
    BigInt n = whole.empty() ? BigInt(0) : BigInt(whole);
    BigInt d = 1;
    for (char c : tail) {
        n = n * 10 + (c - '0');
        d *= 10;
    }
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

} // namespace detail

// Parses "8/9", "2.2", "-3" and the like; lossless in exact mode.
template <class S>
S parse_amount(const std::string& text);

template <>
inline Rational parse_amount<Rational>(const std::string& text) {
    return detail::parse_rational_amount(text);
}

template <>
inline double parse_amount<double>(const std::string& text) {
    return detail::parse_rational_amount(text).convert_to<double>();
}

// Canonical text form. Rationals render as "n" or "n/d", which keeps
// reports byte-stable; doubles use round-trip precision.
inline std::string format_amount(const Rational& v) {
    const BigInt& num = boost::multiprecision::numerator(v);
    const BigInt& den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string format_amount(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace fnet

#endif
