#pragma once

// Closed-form numerical bounds for coherent sheaves on a normal projective
// scheme X of dimension n polarized by a very ample H with d = deg_H X.
//
// A class is given by its Euler pairings against the complete intersections
// H^c, stored sign-free:
//   chi[k] = chi(O_{H^{n-k}}, E),  k = 0..n,
// so chi[0] is the top (zero-dimensional) pairing and chi[n] = chi(O_X, E).

#include "dstab/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace dstab {

struct AmbientGeometry {
    unsigned n = 2;
    Integer d = 1;
    Rational muhat_O = 0;      // muhat(O_X)
    Rational muhat_omega = 0;  // muhat(omega_X)
    std::optional<Rational> mu_omega;  // deg_H(omega_X), when supplied

    /// The projective plane: n = 2, d = 1, muhat(O) = 2, muhat(omega) = -1, mu(omega) = -3.
    static AmbientGeometry p2() { return {2, 1, 2, -1, Rational(-3)}; }
};

struct NumericalClass {
    std::vector<Integer> chi;
};

struct ChernSurface {
    Rational rank = 1;
    Rational c1_sq = 0;
    Rational c1_H = 0;
    Rational c1_K = 0;
    Rational c2 = 0;
    Rational chi_OO = 1;
};

inline void require_valid(const AmbientGeometry& amb) {
    if (amb.n < 1) throw input_error("ambient dimension must be at least 1");
    if (amb.d < 1) throw input_error("ambient degree must be at least 1");
}

inline void require_shape(const NumericalClass& cls, const AmbientGeometry& amb) {
    require_valid(amb);
    if (cls.chi.size() != amb.n + 1) {
        throw input_error("class needs n+1 = " + std::to_string(amb.n + 1) + " Euler characteristics, got " +
                          std::to_string(cls.chi.size()));
    }
}

/// chi(O_{H^n}, O_X) = (-1)^n d.
inline Rational top_chi_O(const AmbientGeometry& amb) { return Rational(neg_one_pow(amb.n) * amb.d); }

struct Slopes {
    Rational rank;
    Rational deg;
    Rational mu;
    Rational muhat;
};

inline Slopes rank_deg_slopes(const NumericalClass& cls, const AmbientGeometry& amb) {
    require_shape(cls, amb);
    if (cls.chi[0] == 0) throw input_error("top Euler characteristic is zero (class of dimension < n)");
    const Rational top_O = top_chi_O(amb);
    // chi(O_{H^{n-1}}, O_X) = -muhat(O_X) * chi(O_{H^n}, O_X)
    const Rational next_O = -amb.muhat_O * top_O;

    Slopes s;
    s.rank = Rational(cls.chi[0]) / top_O;
    s.deg = neg_one_pow(static_cast<long long>(amb.n) - 1) * (Rational(cls.chi[1]) - s.rank * next_O);
    s.mu = s.deg / s.rank;
    s.muhat = -Rational(cls.chi[1]) / Rational(cls.chi[0]);
    return s;
}

/// mu -> muhat, and back.
inline Rational muhat_from_mu(const Rational& mu, const AmbientGeometry& amb) {
    return mu / Rational(amb.d) + amb.muhat_O;
}
inline Rational mu_from_muhat(const Rational& muhat, const AmbientGeometry& amb) {
    return (muhat - amb.muhat_O) * Rational(amb.d);
}

/// binom(muhat, 2) + (n - muhat(O)) (1 + muhat(omega)) / 2.
inline Rational pbar(const Rational& muhat, const AmbientGeometry& amb) {
    return binomial(muhat, 2) + Rational(amb.n - amb.muhat_O) * (1 + amb.muhat_omega) / 2;
}

/// pbar(muhat) + (max - muhat)(muhat - min) / 2, for non-semistable sheaves.
inline Rational pbar_general(const Rational& muhat, const Rational& muhat_max, const Rational& muhat_min,
                             const AmbientGeometry& amb) {
    if (!(muhat_max >= muhat && muhat >= muhat_min)) {
        throw input_error("expected muhat_max >= muhat >= muhat_min");
    }
    return pbar(muhat, amb) + (muhat_max - muhat) * (muhat - muhat_min) / 2;
}

/// binom(muhat, 2) + d^2 / 2, which needs only the degree of X.
inline Rational pbar_crude(const Rational& muhat, const Integer& d) {
    return binomial(muhat, 2) + Rational(d * d) / 2;
}

/// Surface variant in terms of mu: the larger of the two endpoint candidates
/// binom(mu/d + 2, 2) and binom(mu/d - mu(omega)/d - 1, 2).
inline Rational pbar_sup2(const Rational& mu, const AmbientGeometry& amb) {
    if (!amb.mu_omega) throw input_error("mu_omega is required for this bound");
    const Rational x = mu / Rational(amb.d);
    return std::max(binomial(x + 2, 2), binomial(x - *amb.mu_omega / Rational(amb.d) - 1, 2));
}

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> reasons;
};

/// deg_H(omega_X) >= -d(n+1) and d >= 1.
inline ValidationReport validate_ambient(const AmbientGeometry& amb) {
    ValidationReport rep;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.reasons.push_back(std::move(why));
    };
    if (amb.n < 1) fail("n must be at least 1");
    if (amb.d < 1) fail("d must be at least 1");
    if (!amb.mu_omega) {
        fail("mu_omega missing");
    } else if (*amb.mu_omega < -Rational(amb.d * (amb.n + 1))) {
        fail("mu_omega below -d(n+1)");
    }
    return rep;
}

struct SlopeRange {
    Rational upper;
    Rational lower;
};

/// Range of HN slopes of the pushforward of a mu-semistable sheaf of slope mu
/// along a finite projection to P^n: [mu/d - mu(omega)/d - (n+1), mu/d].
inline SlopeRange pushforward_bounds(const Rational& mu, const AmbientGeometry& amb) {
    require_valid(amb);
    if (!amb.mu_omega) throw input_error("mu_omega is required for pushforward bounds");
    auto v = validate_ambient(amb);
    if (!v.pass) throw input_error("ambient violates the canonical-degree bound: " + v.reasons.front());
    const Rational d(amb.d);
    return {mu / d, mu / d - *amb.mu_omega / d - Rational(amb.n + 1)};
}

struct BoundReport {
    bool pass = true;
    Rational lhs;
    Rational rhs;
    Rational margin;  // rhs - lhs
};

/// (-1)^{n-2} chi(O_{H^{n-2}}, E) <= d rk pbar_general(muhat, max, min).
/// Without explicit extremes the class is treated as semistable.
inline BoundReport check_boundedness(const NumericalClass& cls, const AmbientGeometry& amb,
                                     std::optional<Rational> muhat_max = std::nullopt,
                                     std::optional<Rational> muhat_min = std::nullopt) {
    require_shape(cls, amb);
    if (amb.n < 2) throw input_error("boundedness check needs n >= 2");
    const Slopes s = rank_deg_slopes(cls, amb);
    if (s.rank <= 0) throw input_error("boundedness check needs positive rank");
    BoundReport rep;
    rep.lhs = neg_one_pow(static_cast<long long>(amb.n) - 2) * Rational(cls.chi[2]);
    rep.rhs = Rational(amb.d) * s.rank *
              pbar_general(s.muhat, muhat_max.value_or(s.muhat), muhat_min.value_or(s.muhat), amb);
    rep.margin = rep.rhs - rep.lhs;
    rep.pass = rep.lhs <= rep.rhs;
    return rep;
}

struct RestrictionBound {
    Rational threshold;
    Integer l;  // smallest integer strictly above the threshold
};

/// Smallest l > 2(1 - rk)((-1)^{n-2} chi(O_{H^{n-2}}, E) - d rk pbar(muhat)) + 1/(d rk (rk - 1)).
inline RestrictionBound restriction_bound(const NumericalClass& cls, const AmbientGeometry& amb) {
    require_shape(cls, amb);
    if (amb.n < 2) throw input_error("restriction bound needs n >= 2");
    const Slopes s = rank_deg_slopes(cls, amb);
    if (s.rank < 2) throw input_error("restriction bound needs rank >= 2");
    const Rational d(amb.d);
    const Rational lhs = neg_one_pow(static_cast<long long>(amb.n) - 2) * Rational(cls.chi[2]);
    RestrictionBound out;
    out.threshold = 2 * (1 - s.rank) * (lhs - d * s.rank * pbar(s.muhat, amb)) + 1 / (d * s.rank * (s.rank - 1));
    out.l = strict_ceil(out.threshold);
    return out;
}

/// min{ m : m > m2 * pbar(m1 / m2) }.
inline Integer mmin(const Integer& m1, const Integer& m2, const AmbientGeometry& amb) {
    if (m2 < 1) throw input_error("m2 must be at least 1");
    return strict_ceil(Rational(m2) * pbar(Rational(m1, m2), amb));
}

struct LanResult {
    Rational lhs;
    Rational rhs;
    bool holds = true;
};

/// sum_{i<j} r_i r_j (mu_i - mu_j)^2 <= r^2 (mu_0 - mubar)(mubar - mu_m),
/// r = sum r_i, mubar the r-weighted mean, for strictly descending mu.
inline LanResult lan_inequality(const std::vector<Rational>& r, const std::vector<Rational>& mu) {
    if (r.empty() || r.size() != mu.size()) throw input_error("weights and slopes must be nonempty and of equal length");
    for (const auto& x : r)
        if (x <= 0) throw input_error("weights must be positive");
    for (std::size_t i = 0; i + 1 < mu.size(); ++i)
        if (!(mu[i] > mu[i + 1])) throw input_error("slopes must be strictly descending");

    Rational total = 0, weighted = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        total += r[i];
        weighted += r[i] * mu[i];
    }
    const Rational mean = weighted / total;
    LanResult out;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) out.lhs += r[i] * r[j] * (mu[i] - mu[j]) * (mu[i] - mu[j]);
    out.rhs = total * total * (mu.front() - mean) * (mean - mu.back());
    out.holds = out.lhs <= out.rhs;
    return out;
}

struct BogomolovResult {
    Rational discriminant;  // (rk - 1) c1^2 - 2 rk c2
    bool certificate = false;  // true: not strongly semistable
};

inline BogomolovResult bogomolov(const ChernSurface& ch) {
    if (ch.rank < 1) throw input_error("rank must be at least 1");
    BogomolovResult out;
    out.discriminant = (ch.rank - 1) * ch.c1_sq - 2 * ch.rank * ch.c2;
    out.certificate = out.discriminant > 0;
    return out;
}

namespace detail {
inline Rational chern_muhat(const ChernSurface& ch, const std::optional<Rational>& mu, const AmbientGeometry& amb) {
    require_valid(amb);
    if (ch.rank < 1) throw input_error("rank must be at least 1");
    return muhat_from_mu(mu.value_or(ch.c1_H / ch.rank), amb);
}
}  // namespace detail

/// 2 d rk^2 pbar - c1^2 - rk (c1.K) - 2 rk^2 chi(O, O), with pbar at the muhat of mu
/// (mu defaults to c1.H / rk).
inline Rational delta_upper_bound(const ChernSurface& ch, const std::optional<Rational>& mu,
                                  const AmbientGeometry& amb) {
    const Rational p = pbar(detail::chern_muhat(ch, mu, amb), amb);
    const Rational d(amb.d);
    return 2 * d * ch.rank * ch.rank * p - ch.c1_sq - ch.rank * ch.c1_K - 2 * ch.rank * ch.rank * ch.chi_OO;
}

/// d rk pbar - (c1.K)/2 - rk chi(O, O).
inline Rational ch2_upper_bound(const ChernSurface& ch, const std::optional<Rational>& mu,
                                const AmbientGeometry& amb) {
    const Rational p = pbar(detail::chern_muhat(ch, mu, amb), amb);
    return Rational(amb.d) * ch.rank * p - ch.c1_K / 2 - ch.rank * ch.chi_OO;
}

/// Hodge index: c1(L)^2 [C]^2 <= (c1(L).C)^2.
inline bool hodge_check(const Integer& c1L_sq, const Integer& int_c1L_C, const Integer& C_sq) {
    if (C_sq < 1) throw input_error("[C]^2 must be at least 1");
    return c1L_sq * C_sq <= int_c1L_C * int_c1L_C;
}

/// chi(O, L^m) = m^2/2 c1^2 + m/2 (c1.K) + chi(O, O).
inline Rational rr_chi(const Integer& m, const Rational& c1L_sq, const Rational& c1L_K, const Rational& chi_OO) {
    const Rational mm(m);
    return mm * mm / 2 * c1L_sq + mm / 2 * c1L_K + chi_OO;
}

/// Least m >= 1 with chi(O, L^m) > bound; none when c1^2 <= 0.
inline std::optional<Integer> rr_growth_witness(const Rational& c1L_sq, const Rational& c1L_K, const Rational& chi_OO,
                                                const Rational& bound) {
    if (c1L_sq <= 0) return std::nullopt;
    auto above = [&](const Integer& m) { return rr_chi(m, c1L_sq, c1L_K, chi_OO) > bound; };
    if (above(1)) return Integer(1);
    // chi is a convex quadratic in m and is <= bound at m = 1, so the set of
    // m >= 1 above the bound is an upward-closed ray: gallop, then bisect.
    Integer lo = 1, hi = 2;
    while (!above(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        (above(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace dstab
