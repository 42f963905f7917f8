#pragma once

// Integer factorization: trial division up to 10^6, then Brent's variant of
// Pollard rho on what is left. Primality by Miller-Rabin with fixed bases.

#include "dstab/rational.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace dstab {

/// Prime -> exponent, ascending by prime.
using Factorization = std::map<Integer, unsigned>;

namespace detail {

inline const Integer& rho_threshold() {
    static const Integer t("1000000000000");
    return t;
}

inline bool probably_prime(const Integer& n) {
    if (n < 2) return false;
    // Seeded engine keeps the witness sequence deterministic.
    std::mt19937_64 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

inline Integer gcd(Integer a, Integer b) {
    return boost::multiprecision::gcd(a, b);
}

// Returns a nontrivial divisor of the odd composite n.
inline Integer brent_rho(const Integer& n) {
    for (Integer c = 1;; ++c) {
        auto f = [&](const Integer& x) { return Integer((x * x + c) % n); };
        Integer y = 2, x = 2, g = 1, q = 1, ys;
        std::size_t r = 1;
        const std::size_t m = 128;
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = x > y ? Integer(x - y) : Integer(y - x);
                    q = (q * diff) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer diff = x > ys ? Integer(x - ys) : Integer(ys - x);
                g = gcd(diff, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split(const Integer& n, Factorization& out) {
    if (n == 1) return;
    if (probably_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = brent_rho(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace detail

namespace detail {

// Trial division in native arithmetic; returns the cofactor left once the
// wheel passes sqrt(n) (then prime or 1) or reaches `limit`.
inline unsigned long long trial_divide(unsigned long long n, unsigned long long limit, Factorization& out,
                                       bool& complete) {
    for (unsigned long long p : {2ULL, 3ULL}) {
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    for (unsigned long long p = 5; p * p <= n; p += 6) {
        if (p > limit) {
            complete = false;
            return n;
        }
        for (unsigned long long cand : {p, p + 2}) {
            while (n % cand == 0) {
                ++out[Integer(cand)];
                n /= cand;
            }
        }
    }
    complete = true;
    return n;
}

}  // namespace detail

/// Prime factorization of n >= 1 (empty for n = 1).
inline Factorization factorize(Integer n) {
    if (n < 1) throw input_error("factorization requires a positive integer");
    Factorization out;
    constexpr unsigned long long wheel_limit = 1'000'000ULL;
    if (n <= std::numeric_limits<unsigned long long>::max()) {
        bool complete = false;
        const auto rest = detail::trial_divide(n.convert_to<unsigned long long>(), wheel_limit, out, complete);
        if (rest > 1) {
            if (complete) ++out[Integer(rest)];
            else detail::split(Integer(rest), out);
        }
        return out;
    }
    for (unsigned p : {2u, 3u}) {
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    // 6k +- 1 wheel up to 10^6; whatever survives a completed wheel is prime.
    bool complete = true;
    for (unsigned long long p = 5; Integer(p) * p <= n; p += 6) {
        if (p > wheel_limit) {
            complete = false;
            break;
        }
        for (unsigned long long cand : {p, p + 2}) {
            while (n % cand == 0) {
                ++out[Integer(cand)];
                n /= cand;
            }
        }
    }
    if (n > 1) {
        if (complete) ++out[n];
        else detail::split(n, out);
    }
    return out;
}

}  // namespace dstab
