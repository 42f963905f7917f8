#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dstab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

/// Largest integer not exceeding q.
inline Integer floor(const Rational& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer quot = num / den;  // truncates toward zero
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

/// Smallest integer strictly greater than q.
inline Integer strict_ceil(const Rational& q) { return floor(q) + 1; }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

/// (-1)^k for any integer k, including negative exponents.
inline int neg_one_pow(long long k) { return (k % 2 == 0) ? 1 : -1; }

/// Generalized binomial coefficient t(t-1)...(t-d+1)/d! for rational t.
inline Rational binomial(const Rational& t, unsigned d) {
    Rational acc = 1;
    for (unsigned i = 0; i < d; ++i) {
        acc *= (t - Rational(i));
        acc /= Rational(i + 1);
    }
    return acc;
}

/// Parses "p/q", "p", or "-p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> Integer {
        if (s.empty()) throw input_error("empty integer in rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw input_error("malformed rational '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9') throw input_error("malformed rational '" + std::string(text) + "'");
        }
        Integer v(std::string(s.substr(i)));
        return s[0] == '-' ? Integer(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in '" + std::string(text) + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Integer parse_integer(std::string_view text) {
    Rational q = parse_rational(text);
    if (!is_integral(q)) throw input_error("expected an integer, got '" + std::string(text) + "'");
    return numerator(q);
}

/// Canonical text form: "n" for integers, "p/q" otherwise (q > 0, lowest terms).
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// Narrowing to a machine integer when the value fits.
inline std::optional<std::int64_t> to_int64(const Integer& z) {
    if (z > Integer(INT64_MAX) || z < Integer(INT64_MIN)) return std::nullopt;
    return z.convert_to<std::int64_t>();
}

}  // namespace dstab
