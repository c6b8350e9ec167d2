#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "polysched/error.hpp"

namespace polysched {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational frac(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw InvalidInput("zero denominator");
    return Rational(num, den);
}

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline BigInt floor_div(const Rational& r) {
    BigInt n = num(r), d = den(r);
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) --q;
    return q;
}

inline BigInt ceil_div(const Rational& r) { return -floor_div(-r); }

inline std::int64_t to_i64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw InvalidInput("integer out of 64-bit range");
    return static_cast<std::int64_t>(v);
}

// Always "num/den", also for integers.
inline std::string to_string(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

// Accepts "n", "n/d" and plain decimals such as "0.25" or "-1.5".
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { return InvalidInput("not a rational: '" + std::string(s) + "'"); };
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    bool neg = false;
    std::string_view t = s;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        neg = t[0] == '-';
        t.remove_prefix(1);
    }
    Rational out;
    if (auto slash = t.find('/'); slash != std::string_view::npos) {
        auto a = t.substr(0, slash), b = t.substr(slash + 1);
        if (!digits(a) || !digits(b)) throw bad();
        BigInt d{std::string(b)};
        if (d == 0) throw bad();
        out = Rational(BigInt(std::string(a)), d);
    } else if (auto dot = t.find('.'); dot != std::string_view::npos) {
        auto a = t.substr(0, dot), b = t.substr(dot + 1);
        if ((a.empty() && b.empty()) || (!a.empty() && !digits(a)) || (!b.empty() && !digits(b)))
            throw bad();
        BigInt whole = a.empty() ? BigInt(0) : BigInt(std::string(a));
        BigInt frac_part = b.empty() ? BigInt(0) : BigInt(std::string(b));
        BigInt scale = 1;
        for (std::size_t i = 0; i < b.size(); ++i) scale *= 10;
        out = Rational(whole * scale + frac_part, scale);
    } else {
        if (!digits(t)) throw bad();
        out = Rational(BigInt(std::string(t)));
    }
    return neg ? Rational(-out) : out;
}

inline bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

inline std::int64_t floor_pow2(std::int64_t v) {
    std::int64_t p = 1;
    while (p <= v / 2) p *= 2;
    return p;
}

}  // namespace polysched
