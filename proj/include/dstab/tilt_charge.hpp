#pragma once

// Tilted hearts A_q = <F_q[1], F_q^perp> on surfaces at the numerical level:
// the degree-1 slope polynomial c1_check * t + c0_check attached to
// (m0, m1, m2), its central charge at t = sqrt(-1), and exact phases.

#include "dstab/binom_poly.hpp"
#include "dstab/hn_core.hpp"
#include "dstab/surface_bounds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dstab {

struct TiltParams {
    Integer m0 = 0;
    Integer m1 = 0;
    Integer m2 = 1;

    [[nodiscard]] Rational q() const { return Rational(m1, m2); }
};

inline void require_valid(const TiltParams& tp) {
    if (tp.m2 < 1) throw input_error("m2 must be at least 1");
}

/// P_t(E) = sum_c (-1)^c chi(O_{H^c}, E) binom(t, c).
inline BinomPoly hilbert_polynomial(const NumericalClass& cls, const AmbientGeometry& amb) {
    require_shape(cls, amb);
    std::vector<Rational> a;
    for (unsigned c = 0; c <= amb.n; ++c) a.push_back(neg_one_pow(c) * Rational(cls.chi[amb.n - c]));
    return BinomPoly(std::move(a));
}

struct TiltedCoeffs {
    Integer c1;  // c1_check
    Integer c0;  // c0_check

    friend bool operator==(const TiltedCoeffs&, const TiltedCoeffs&) = default;
};

inline void require_surface(const NumericalClass& cls, const AmbientGeometry& amb) {
    require_shape(cls, amb);
    if (amb.n != 2) throw input_error("tilted charges are defined for surfaces (n = 2) only");
}

/// With a_c = (-1)^c chi(O_{H^c}, E):
///   c1_check = m2 a_1 - m1 a_2,  c0_check = m2 a_0 - m0 a_2.
inline TiltedCoeffs tilted_coeffs(const NumericalClass& cls, const TiltParams& tp, const AmbientGeometry& amb) {
    require_surface(cls, amb);
    require_valid(tp);
    const Integer& a0 = cls.chi[2];
    const Integer a1 = -cls.chi[1];
    const Integer& a2 = cls.chi[0];
    return {tp.m2 * a1 - tp.m1 * a2, tp.m2 * a0 - tp.m0 * a2};
}

inline BinomPoly slope_poly_q(const NumericalClass& cls, const TiltParams& tp, const AmbientGeometry& amb) {
    auto c = tilted_coeffs(cls, tp, amb);
    return BinomPoly({Rational(c.c0), Rational(c.c1)});
}

/// chi(L^s_{-t}, E) read off the cone: -m2 P_t(E) + (m2 binom(t,2) + m1 t + m0) chi(O_{H^2}, E).
/// Equals -slope_poly_q.
inline BinomPoly cone_polynomial(const NumericalClass& cls, const TiltParams& tp, const AmbientGeometry& amb) {
    require_surface(cls, amb);
    require_valid(tp);
    const BinomPoly ample({Rational(tp.m0), Rational(tp.m1), Rational(tp.m2)});
    return Rational(cls.chi[0]) * ample - Rational(tp.m2) * hilbert_polynomial(cls, amb);
}

struct CentralCharge {
    Rational re;
    Rational im;

    friend CentralCharge operator+(const CentralCharge& a, const CentralCharge& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend bool operator==(const CentralCharge&, const CentralCharge&) = default;
};

/// Z = -c0_check + i c1_check.
inline CentralCharge central_charge(const NumericalClass& cls, const TiltParams& tp, const AmbientGeometry& amb) {
    auto c = tilted_coeffs(cls, tp, amb);
    if (c.c0 == 0 && c.c1 == 0) throw input_error("zero slope polynomial has no central charge");
    return {Rational(-c.c0), Rational(c.c1)};
}

/// Exact description of arg(Z)/pi in (0, 1]. Inside (0, 1) the phase is
/// arccot(cot)/pi, which decreases as cot grows.
struct Phase {
    enum class Kind { Below_Half, Half, Above_Half, One };
    Kind kind = Kind::One;
    std::optional<Rational> cot;  // re/im when im > 0
    Rational lo;                  // closed/open bounds of the phase interval
    Rational hi;
};

inline const char* to_string(Phase::Kind k) {
    switch (k) {
        case Phase::Kind::Below_Half: return "(0,1/2)";
        case Phase::Kind::Half: return "1/2";
        case Phase::Kind::Above_Half: return "(1/2,1)";
        case Phase::Kind::One: return "1";
    }
    return "?";
}

inline void require_upper_half(const CentralCharge& z) {
    if (z.im < 0 || (z.im == 0 && z.re >= 0)) {
        throw input_error("central charge outside the semi-closed upper half-plane");
    }
}

inline Phase phase(const CentralCharge& z) {
    require_upper_half(z);
    Phase p;
    if (z.im == 0) {
        p.kind = Phase::Kind::One;
        p.lo = p.hi = 1;
        return p;
    }
    p.cot = z.re / z.im;
    if (z.re > 0) {
        p.kind = Phase::Kind::Below_Half;
        p.lo = 0;
        p.hi = Rational(1, 2);
    } else if (z.re == 0) {
        p.kind = Phase::Kind::Half;
        p.lo = p.hi = Rational(1, 2);
    } else {
        p.kind = Phase::Kind::Above_Half;
        p.lo = Rational(1, 2);
        p.hi = 1;
    }
    return p;
}

/// Orders charges by argument via the cross product re_a im_b - im_a re_b.
inline Ordering compare_phase(const CentralCharge& a, const CentralCharge& b) {
    require_upper_half(a);
    require_upper_half(b);
    const Rational cross = a.re * b.im - a.im * b.re;
    if (cross > 0) return Ordering::Less;
    if (cross < 0) return Ordering::Greater;
    return Ordering::Equal;
}

enum class HeartPart { TorsionPart, FreePart_Fq, FreePart_Fperp };

inline const char* to_string(HeartPart h) {
    switch (h) {
        case HeartPart::TorsionPart: return "TorsionPart";
        case HeartPart::FreePart_Fq: return "FreePart_Fq";
        case HeartPart::FreePart_Fperp: return "FreePart_Fperp";
    }
    return "?";
}

/// Torsion and torsion-free sheaves with muhat > q lie in F_q^perp; torsion-free
/// sheaves with muhat <= q lie in F_q and enter the heart shifted by one.
inline HeartPart heart_membership(const Rational& muhat, bool is_torsion, const TiltParams& tp) {
    require_valid(tp);
    if (is_torsion) return HeartPart::TorsionPart;
    return muhat <= tp.q() ? HeartPart::FreePart_Fq : HeartPart::FreePart_Fperp;
}

struct SequenceReport {
    bool pass = true;
    Integer mmin;              // smallest admissible m0
    Rational strict_threshold; // m2 * pbar(q); m0 must exceed it
    bool gate_pass = true;     // m0 >= mmin, equivalently m0 > strict_threshold
    std::optional<std::size_t> first_violation;
    std::string reason;
};

/// Checks the m0 gate and that every sample's (c1_check, c0_check) is a
/// nonzero tuple whose first nonzero entry is positive.
inline SequenceReport check_slope_sequence(const TiltParams& tp, const AmbientGeometry& amb,
                                           const std::vector<NumericalClass>& samples) {
    require_valid(tp);
    require_valid(amb);
    if (amb.n != 2) throw input_error("slope sequences are checked on surfaces (n = 2) only");
    SequenceReport rep;
    rep.mmin = mmin(tp.m1, tp.m2, amb);
    rep.strict_threshold = Rational(tp.m2) * pbar(tp.q(), amb);
    rep.gate_pass = tp.m0 >= rep.mmin;
    if (!rep.gate_pass) {
        rep.pass = false;
        rep.reason = "m0 below mmin";
        return rep;
    }
    std::vector<std::vector<Rational>> tuples;
    for (const auto& cls : samples) {
        auto c = tilted_coeffs(cls, tp, amb);
        tuples.push_back({Rational(c.c1), Rational(c.c0)});
    }
    auto pos = is_positive_system(tuples);
    std::optional<std::size_t> bad;
    if (!pos.violations.empty()) bad = pos.violations.front();
    if (!pos.zero_tuples.empty() && (!bad || pos.zero_tuples.front() < *bad)) bad = pos.zero_tuples.front();
    if (bad) {
        rep.pass = false;
        rep.first_violation = bad;
        rep.reason = tuples[*bad][0] == 0 && tuples[*bad][1] == 0 ? "sample has zero slope polynomial"
                                                                 : "sample has negative leading coefficient";
    }
    return rep;
}

}  // namespace dstab
