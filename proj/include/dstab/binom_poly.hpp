#pragma once

// Numerical polynomials in the binomial basis binom(t, d), positivity
// checkers for coefficient systems, slope-polynomial deformations, and the
// Euler-characteristic count of a convolution.

#include "dstab/hn_core.hpp"
#include "dstab/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dstab {

struct Gauss {
    Rational re = 0;
    Rational im = 0;

    friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const Gauss&, const Gauss&) = default;
};

/// sum_d c_d * binom(t, d). Trailing zero coefficients are dropped, so the
/// zero polynomial has no coefficients and degree -1.
class BinomPoly {
public:
    BinomPoly() = default;
    explicit BinomPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    BinomPoly(std::initializer_list<Rational> coeffs) : BinomPoly(std::vector<Rational>(coeffs)) {}

    [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return c_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }

    /// c_d, zero beyond the degree.
    [[nodiscard]] Rational coeff(std::size_t d) const { return d < c_.size() ? c_[d] : Rational(0); }
    [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    /// Integer-valued on the integers exactly when every c_d is an integer.
    [[nodiscard]] bool is_numerical() const {
        for (const auto& x : c_)
            if (!is_integral(x)) return false;
        return true;
    }

    friend BinomPoly operator+(const BinomPoly& a, const BinomPoly& b) {
        std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return BinomPoly(std::move(out));
    }
    friend BinomPoly operator-(const BinomPoly& a) {
        std::vector<Rational> out(a.c_);
        for (auto& x : out) x = -x;
        return BinomPoly(std::move(out));
    }
    friend BinomPoly operator-(const BinomPoly& a, const BinomPoly& b) { return a + (-b); }
    friend BinomPoly operator*(const Rational& s, const BinomPoly& p) {
        std::vector<Rational> out(p.c_);
        for (auto& x : out) x *= s;
        return BinomPoly(std::move(out));
    }
    friend bool operator==(const BinomPoly&, const BinomPoly&) = default;

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Interpolates samples at t = 0..r; c_d is the d-th forward difference at 0.
inline BinomPoly from_samples(std::vector<Rational> values) {
    if (values.empty()) throw input_error("from_samples needs at least one value");
    std::vector<Rational> c;
    c.reserve(values.size());
    for (std::size_t d = 0; d < values.size(); ++d) {
        c.push_back(values[0]);
        for (std::size_t i = 0; i + 1 < values.size() - d; ++i) values[i] = values[i + 1] - values[i];
    }
    return BinomPoly(std::move(c));
}

inline Rational evaluate(const BinomPoly& p, const Rational& t) {
    Rational acc = 0, basis = 1;  // basis = binom(t, d)
    for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
        acc += p.coeffs()[d] * basis;
        basis *= (t - Rational(static_cast<long long>(d)));
        basis /= Rational(static_cast<long long>(d + 1));
    }
    return acc;
}

/// Evaluation at a Gaussian rational, by default t = sqrt(-1).
inline Gauss evaluate_gauss(const BinomPoly& p, const Gauss& t = {0, 1}) {
    Gauss acc, basis{1, 0};
    for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
        acc = acc + Gauss{p.coeffs()[d], 0} * basis;
        basis = basis * (t - Gauss{Rational(static_cast<long long>(d)), 0});
        const Rational inv = Rational(1) / Rational(static_cast<long long>(d + 1));
        basis = basis * Gauss{inv, 0};
    }
    return acc;
}

/// Coefficient vector highest degree first, padded to the given degree, as
/// used by the vector-slope ordering.
inline std::vector<Rational> top_down_coeffs(const BinomPoly& p, int degree) {
    if (p.degree() > degree) throw input_error("polynomial degree exceeds the requested length");
    std::vector<Rational> out;
    for (int d = degree; d >= 0; --d) out.push_back(p.coeff(static_cast<std::size_t>(d)));
    return out;
}

struct PositivityReport {
    bool positive = true;
    bool exhaustive = true;
    std::vector<std::size_t> violations;  // indices of tuples whose first nonzero entry is negative
    std::vector<std::size_t> zero_tuples;
};

/// Each tuple's first nonzero entry must be positive. An all-zero tuple is
/// not a violation but makes the system non-exhaustive.
inline PositivityReport is_positive_system(const std::vector<std::vector<Rational>>& samples) {
    PositivityReport rep;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k].size() != samples.front().size()) throw input_error("coefficient tuples of different lengths");
        std::size_t s = 0;
        while (s < samples[k].size() && samples[k][s] == 0) ++s;
        if (s == samples[k].size()) {
            rep.exhaustive = false;
            rep.zero_tuples.push_back(k);
        } else if (samples[k][s] < 0) {
            rep.positive = false;
            rep.violations.push_back(k);
        }
    }
    return rep;
}

struct SlopePolyReport {
    std::vector<std::size_t> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

inline SlopePolyReport is_slope_polynomial(const std::vector<BinomPoly>& polys) {
    SlopePolyReport rep;
    for (std::size_t k = 0; k < polys.size(); ++k)
        if (!polys[k].is_zero() && polys[k].leading() <= 0) rep.violations.push_back(k);
    return rep;
}

/// p + scale * q, with deg q < deg p.
inline BinomPoly deform(const BinomPoly& p, const BinomPoly& q, const Rational& scale) {
    if (q.degree() >= p.degree()) throw input_error("deformation must have lower degree than the polynomial");
    return p + scale * q;
}

/// The deformation with scale sum_{i > deg q} weights[i - deg q - 1] * c_i(p),
/// i.e. a fixed linear combination of the coefficients above deg q. Two
/// objects are ordered the same way before and after.
inline BinomPoly deform_by_top(const BinomPoly& p, const BinomPoly& q, const std::vector<Rational>& weights) {
    Rational scale = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        scale += weights[k] * p.coeff(static_cast<std::size_t>(q.degree() + 1) + k);
    }
    if (q.is_zero()) return p;
    if (q.degree() >= p.degree()) {
        // Objects of degree <= deg q have no top block and are left unchanged.
        if (scale != 0) throw input_error("deformation must have lower degree than the polynomial");
        return p;
    }
    return p + scale * q;
}

struct EulerReport {
    Integer lhs = 0;
    Integer rhs = 0;
    [[nodiscard]] bool equal() const { return lhs == rhs; }
};

/// table[i][j] = hom(L, A^i[j]) for i = 0..n, j = 0..m.
using HomTable = std::vector<std::vector<Integer>>;

/// Compares sum_j (-1)^j hom(L, T[j]) with sum_{i,j} (-1)^{n-i+j} hom(L, A^i[j]).
/// t_dims[k] is hom(L, T[offset + k]); the default offset is -n.
inline EulerReport convolution_euler(const std::vector<Integer>& t_dims, const HomTable& table, unsigned n,
                                     std::optional<long long> offset = std::nullopt) {
    if (table.size() != n + 1) {
        throw input_error("hom table must have n+1 rows (got " + std::to_string(table.size()) + ")");
    }
    const long long start = offset.value_or(-static_cast<long long>(n));
    EulerReport rep;
    for (std::size_t k = 0; k < t_dims.size(); ++k) {
        if (t_dims[k] < 0) throw input_error("hom dimensions must be non-negative");
        rep.lhs += neg_one_pow(start + static_cast<long long>(k)) * t_dims[k];
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            if (table[i][j] < 0) throw input_error("hom dimensions must be non-negative");
            rep.rhs += neg_one_pow(static_cast<long long>(n) - static_cast<long long>(i) + static_cast<long long>(j)) *
                       table[i][j];
        }
    }
    return rep;
}

}  // namespace dstab
