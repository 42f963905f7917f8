#pragma once

// Coherent sheaves on P^1 via the Grothendieck splitting
//   E = O(a_1) + ... + O(a_r) + torsion,
// their Hilbert polynomials and HN filtrations, and the tilted heart
// <O(-t)[1], torsion, O(t-1)>_{t>0} with its Kronecker description.

#include "dstab/binom_poly.hpp"
#include "dstab/hn_core.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

namespace dstab {

struct TorsionPoint {
    std::string pt;
    long long len = 1;

    friend auto operator<=>(const TorsionPoint&, const TorsionPoint&) = default;
};

/// Bundle degrees are kept in descending order and torsion sorted, so equal
/// sheaves compare equal.
struct SheafP1 {
    std::vector<long long> bundles;
    std::vector<TorsionPoint> torsion;

    SheafP1() = default;
    SheafP1(std::vector<long long> b, std::vector<TorsionPoint> t = {}) : bundles(std::move(b)), torsion(std::move(t)) {
        for (const auto& x : torsion)
            if (x.len < 1) throw input_error("torsion length must be at least 1");
        std::sort(bundles.begin(), bundles.end(), std::greater<>());
        std::sort(torsion.begin(), torsion.end());
    }

    [[nodiscard]] long long rank() const { return static_cast<long long>(bundles.size()); }
    [[nodiscard]] Integer torsion_length() const {
        Integer l = 0;
        for (const auto& t : torsion) l += t.len;
        return l;
    }
    /// chi(O, E) = sum (a_i + 1) + total torsion length.
    [[nodiscard]] Integer euler() const {
        Integer chi = torsion_length();
        for (auto a : bundles) chi += Integer(a) + 1;
        return chi;
    }
    [[nodiscard]] bool is_zero() const { return bundles.empty() && torsion.empty(); }

    friend bool operator==(const SheafP1&, const SheafP1&) = default;
};

inline SheafP1 direct_sum(const SheafP1& a, const SheafP1& b) {
    auto bundles = a.bundles;
    bundles.insert(bundles.end(), b.bundles.begin(), b.bundles.end());
    auto torsion = a.torsion;
    torsion.insert(torsion.end(), b.torsion.begin(), b.torsion.end());
    return SheafP1(std::move(bundles), std::move(torsion));
}

/// rank * t + chi(O, E).
inline BinomPoly hilbert_p1(const SheafP1& e) { return BinomPoly({Rational(e.euler()), Rational(e.rank())}); }

struct P1Class {
    Integer rank = 0;
    Integer chi = 0;

    friend P1Class operator+(const P1Class& a, const P1Class& b) { return {a.rank + b.rank, a.chi + b.chi}; }
    friend bool operator==(const P1Class&, const P1Class&) = default;
};

/// Short exact sequences of split sheaves on P^1 ordered by (rank, chi);
/// torsion (rank 0) dominates every bundle.
class P1Instance {
public:
    using object_type = SheafP1;

    [[nodiscard]] SlopeVector slope(const SheafP1& e) const {
        return SlopeVector({Rational(e.rank()), Rational(e.euler())});
    }

    [[nodiscard]] std::optional<DeltaStep<SheafP1>> destabilize(const SheafP1& e) const {
        if (!e.torsion.empty() && !e.bundles.empty()) {
            return DeltaStep<SheafP1>{SheafP1({}, e.torsion), e, SheafP1(e.bundles)};
        }
        if (e.bundles.empty() || e.bundles.front() == e.bundles.back()) return std::nullopt;
        const long long top = e.bundles.front();
        std::vector<long long> hi, lo;
        for (auto a : e.bundles) (a == top ? hi : lo).push_back(a);
        return DeltaStep<SheafP1>{SheafP1(hi), e, SheafP1(lo)};
    }

    [[nodiscard]] P1Class kclass(const SheafP1& e) const { return {e.rank(), e.euler()}; }
    [[nodiscard]] bool is_zero(const SheafP1& e) const { return e.is_zero(); }
    [[nodiscard]] bool equal(const SheafP1& a, const SheafP1& b) const { return a == b; }

    [[nodiscard]] DeltaStep<SheafP1> compose_quotients(const DeltaStep<SheafP1>& first,
                                                       const DeltaStep<SheafP1>& second) const {
        return {difference(first.whole, second.quotient), first.whole, second.quotient};
    }
    [[nodiscard]] DeltaStep<SheafP1> compose_subs(const DeltaStep<SheafP1>& inner,
                                                  const DeltaStep<SheafP1>& outer) const {
        return {inner.sub, outer.whole, difference(outer.whole, inner.sub)};
    }

    /// Complementary summand of a direct summand.
    static SheafP1 difference(const SheafP1& whole, const SheafP1& part) {
        auto bundles = whole.bundles;
        for (auto a : part.bundles) {
            auto it = std::find(bundles.begin(), bundles.end(), a);
            if (it == bundles.end()) throw input_error("not a direct summand");
            bundles.erase(it);
        }
        auto torsion = whole.torsion;
        for (const auto& t : part.torsion) {
            auto it = std::find(torsion.begin(), torsion.end(), t);
            if (it == torsion.end()) throw input_error("not a direct summand");
            torsion.erase(it);
        }
        return SheafP1(std::move(bundles), std::move(torsion));
    }
};

static_assert(CategoryInstance<P1Instance>);

/// Torsion first, then bundles grouped by degree, descending.
inline HNSequence<SheafP1> hn_p1(const SheafP1& e) {
    if (e.is_zero()) throw input_error("zero sheaf has no HN filtration");
    return hn_decompose(P1Instance{}, e);
}

/// An object of the tilted heart: shifted[1] + plain, where every shifted
/// degree is <= -1 and every plain degree is >= 0.
struct TiltedObjP1 {
    SheafP1 shifted;
    SheafP1 plain;

    TiltedObjP1() = default;
    TiltedObjP1(SheafP1 s, SheafP1 p) : shifted(std::move(s)), plain(std::move(p)) {
        if (!shifted.torsion.empty()) throw input_error("shifted part of a heart object must be torsion free");
        for (auto a : shifted.bundles)
            if (a > -1) throw input_error("shifted bundles must have degree <= -1");
        for (auto a : plain.bundles)
            if (a < 0) throw input_error("plain bundles must have degree >= 0");
    }

    [[nodiscard]] bool is_zero() const { return shifted.is_zero() && plain.is_zero(); }
    friend bool operator==(const TiltedObjP1&, const TiltedObjP1&) = default;
};

inline TiltedObjP1 direct_sum(const TiltedObjP1& a, const TiltedObjP1& b) {
    return {direct_sum(a.shifted, b.shifted), direct_sum(a.plain, b.plain)};
}

inline TiltedObjP1 tilt_p1(const SheafP1& e) {
    std::vector<long long> neg, pos;
    for (auto a : e.bundles) (a <= -1 ? neg : pos).push_back(a);
    return {SheafP1(neg), SheafP1(pos, e.torsion)};
}

/// chi(O + O(1), obj) with chi(O(a), O(b)) = b - a + 1 and chi(O(a), torsion) = length.
inline Integer kronecker_slope(const TiltedObjP1& obj) {
    Integer s = 2 * obj.plain.torsion_length();
    for (auto b : obj.plain.bundles) s += 2 * Integer(b) + 1;
    for (auto b : obj.shifted.bundles) s -= 2 * Integer(b) + 1;
    return s;
}

struct KroneckerDim {
    Integer a = 0;  // multiplicity of [O]
    Integer b = 0;  // multiplicity of [O(-1)[1]]

    friend KroneckerDim operator+(const KroneckerDim& x, const KroneckerDim& y) { return {x.a + y.a, x.b + y.b}; }
    friend bool operator==(const KroneckerDim&, const KroneckerDim&) = default;
};

/// [obj] = a [O] + b [O(-1)[1]] in the (rank, chi) lattice.
inline KroneckerDim kronecker_dim(const TiltedObjP1& obj) {
    Integer a = obj.plain.euler() - obj.shifted.euler();
    Integer rank = obj.plain.rank() - obj.shifted.rank();
    return {a, a - rank};
}

}  // namespace dstab
