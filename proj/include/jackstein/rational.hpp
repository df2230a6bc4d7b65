#pragma once

// Exact scalar layer: arbitrary-precision integers and rationals plus the
// text format used across the CLI and JSON interfaces ("p/q", or plain "p"
// when the denominator is 1).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jackstein {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // always gcd-reduced, q > 0

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.template convert_to<double>(); }

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

// C(n, 2) = n(n-1)/2 as an exact integer.
inline BigInt choose2(const BigInt& n) { return n * (n - 1) / 2; }

inline Rational rational_pow(Rational base, unsigned long exp) {
    Rational out = 1;
    while (exp) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

// |r|^k for integer k >= 0 (used by exact absolute-moment computations).
inline Rational rational_abs_pow(const Rational& r, unsigned long k) {
    Rational a = r < 0 ? Rational(-r) : r;
    return rational_pow(a, k);
}

// Parses "p", "-p", or "p/q" (q > 0 after normalization).  Throws
// std::invalid_argument on anything else, including decimal notation —
// decimals belong to the float pipeline, not the exact one.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    const std::string_view num_s = text.substr(0, slash);
    auto check_int = [&](std::string_view s) {
        if (s.empty()) bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) bad();
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') bad();
    };
    check_int(num_s);
    BigInt num{std::string(num_s)};
    if (slash == std::string_view::npos) return Rational(num);
    const std::string_view den_s = text.substr(slash + 1);
    check_int(den_s);
    BigInt den{std::string(den_s)};
    if (den == 0) bad();
    return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
    const BigInt num = numerator(r), den = denominator(r);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

// Signals a failed mathematical assertion (an identity or bound that the
// artifact is contractually required to satisfy).
class verification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jackstein
