#pragma once

// Random fixture generators shared by the unit and acceptance suites.
// Everything is driven by an explicitly seeded engine.

#include "dstab/dstab.hpp"

#include <random>
#include <vector>

namespace dstab::fixtures {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, long long num = 1000, long long den = 60) {
    return Rational(uniform(rng, -num, num), uniform(rng, 1, den));
}

inline std::vector<Rational> random_integers(Rng& rng, std::size_t count, long long bound) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(uniform(rng, -bound, bound));
    return out;
}

// --- arithmetic instances -------------------------------------------------

inline DeltaStep<Integer> random_division_step(Rng& rng, long long max_factor = 10000) {
    Integer a = uniform(rng, 2, max_factor), b = uniform(rng, 2, max_factor);
    return {a, a * b, b};
}

inline DeltaStep<Integer> random_subtraction_step(Rng& rng, long long max = 1000000) {
    Integer a = uniform(rng, 1, max), b = uniform(rng, 1, max);
    return {a, a + b, b};
}

inline DeltaStep<VecSpaceObj> random_vecspace_step(Rng& rng) {
    VecSpaceObj a, c;
    const long long n = uniform(rng, 2, 12);
    for (long long k = 0; k < n; ++k) {
        auto idx = static_cast<unsigned long long>(uniform(rng, 0, 60));
        if (a.count(idx) || c.count(idx)) continue;
        (uniform(rng, 0, 1) ? a : c).insert(idx);
    }
    if (a.empty()) a.insert(100);
    if (c.empty()) c.insert(101);
    VecSpaceObj whole = a;
    whole.insert(c.begin(), c.end());
    return {a, whole, c};
}

// --- P^1 ------------------------------------------------------------------

inline SheafP1 random_sheaf(Rng& rng) {
    std::vector<long long> bundles;
    std::vector<TorsionPoint> torsion;
    const long long r = uniform(rng, 0, 5), k = uniform(rng, 0, 3);
    for (long long i = 0; i < r; ++i) bundles.push_back(uniform(rng, -8, 8));
    for (long long i = 0; i < k; ++i) torsion.push_back({std::string(1, static_cast<char>('p' + uniform(rng, 0, 3))), uniform(rng, 1, 5)});
    if (bundles.empty() && torsion.empty()) bundles.push_back(uniform(rng, -8, 8));
    return SheafP1(std::move(bundles), std::move(torsion));
}

/// A nonzero object of the heart <O(-t)[1], torsion, O(t-1)>.
inline TiltedObjP1 random_heart_object(Rng& rng) {
    std::vector<long long> neg, pos;
    std::vector<TorsionPoint> torsion;
    for (long long i = uniform(rng, 0, 4); i > 0; --i) neg.push_back(uniform(rng, -9, -1));
    for (long long i = uniform(rng, 0, 4); i > 0; --i) pos.push_back(uniform(rng, 0, 9));
    for (long long i = uniform(rng, 0, 3); i > 0; --i) torsion.push_back({"x", uniform(rng, 1, 6)});
    if (neg.empty() && pos.empty() && torsion.empty()) pos.push_back(0);
    return {SheafP1(neg), SheafP1(pos, torsion)};
}

// --- convolutions ---------------------------------------------------------

struct ConvolutionFixture {
    unsigned n = 0;
    HomTable table;              // hom(L, A^i[j]), i = 0..n, j = 0..m
    std::vector<Integer> t_dims; // hom(L, T[j]) for j = -n..m
};

/// Dimensions of a convolution with zero differentials, so
/// hom(L, T[j]) = sum_i hom(L, A^i[n - i + j]), then perturbed by adding the
/// same amount to two adjacent shifts (which leaves the Euler count fixed).
inline ConvolutionFixture random_convolution(Rng& rng) {
    ConvolutionFixture f;
    f.n = static_cast<unsigned>(uniform(rng, 0, 4));
    const long long m = uniform(rng, 0, 5);
    f.table.assign(f.n + 1, std::vector<Integer>(static_cast<std::size_t>(m + 1)));
    for (auto& row : f.table)
        for (auto& x : row) x = uniform(rng, 0, 6);
    const long long n = f.n;
    for (long long j = -n; j <= m; ++j) {
        Integer dim = 0;
        for (long long i = 0; i <= n; ++i) {
            const long long k = n - i + j;
            if (k >= 0 && k <= m) dim += f.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        f.t_dims.push_back(dim);
    }
    if (f.t_dims.size() >= 2) {
        const auto at = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(f.t_dims.size()) - 2));
        const long long extra = uniform(rng, 0, 4);
        f.t_dims[at] += extra;
        f.t_dims[at + 1] += extra;
    }
    return f;
}

// --- tilted hearts on surfaces -------------------------------------------

inline AmbientGeometry random_surface(Rng& rng) {
    AmbientGeometry amb;
    amb.n = 2;
    amb.d = uniform(rng, 1, 4);
    amb.muhat_O = Rational(uniform(rng, -6, 6), uniform(rng, 1, 4));
    amb.muhat_omega = Rational(uniform(rng, -6, 6), uniform(rng, 1, 4));
    amb.mu_omega = mu_from_muhat(amb.muhat_omega, amb);
    return amb;
}

inline NumericalClass add(const NumericalClass& a, const NumericalClass& b) {
    NumericalClass out{a.chi};
    for (std::size_t i = 0; i < out.chi.size(); ++i) out.chi[i] += b.chi[i];
    return out;
}

/// A class in the tilted heart A_q: a sum of skyscrapers, curve-supported
/// torsion, torsion-free pieces of muhat > q, and shifted torsion-free pieces
/// F[1] with muhat(F) <= q whose Euler characteristic obeys the boundedness
/// estimate chi(O, F) <= d rk pbar(muhat).
inline NumericalClass random_heart_class(Rng& rng, const AmbientGeometry& amb, const TiltParams& tp) {
    const Integer d = amb.d;
    const Rational q = tp.q();
    NumericalClass total{{0, 0, 0}};
    const long long pieces = uniform(rng, 1, 4);
    for (long long k = 0; k < pieces; ++k) {
        NumericalClass piece{{0, 0, 0}};
        switch (uniform(rng, 0, 3)) {
            case 0:  // skyscrapers
                piece.chi = {0, 0, uniform(rng, 1, 5)};
                break;
            case 1:  // torsion on a curve of H-degree e
                piece.chi = {0, -uniform(rng, 1, 6), uniform(rng, -10, 10)};
                break;
            case 2: {  // torsion free, muhat > q
                const Integer r = uniform(rng, 1, 4);
                const Integer top = d * r;
                // smallest integer -chi_1 with -chi_1 / top > q, plus slack
                const Integer minus_chi1 = floor(q * Rational(top)) + 1 + uniform(rng, 0, 8);
                piece.chi = {top, -minus_chi1, uniform(rng, -15, 15)};
                break;
            }
            default: {  // F[1], muhat(F) <= q; sometimes exactly q
                Integer r = uniform(rng, 1, 4);
                if (uniform(rng, 0, 1)) r *= tp.m2;
                const Integer top = d * r;
                Integer minus_chi1 = floor(q * Rational(top));
                if (!(Rational(minus_chi1) == q * Rational(top)) || uniform(rng, 0, 2) == 0) {
                    minus_chi1 -= uniform(rng, 0, 6);
                }
                const Rational muhat(minus_chi1, top);
                const Integer chi_max = floor(Rational(top) * pbar(muhat, amb));
                const Integer chi0 = chi_max - uniform(rng, 0, 12);
                piece.chi = {-top, minus_chi1, -chi0};
                break;
            }
        }
        total = add(total, piece);
    }
    return total;
}

inline TiltParams random_tilt(Rng& rng, const AmbientGeometry& amb) {
    TiltParams tp;
    tp.m2 = uniform(rng, 1, 5);
    tp.m1 = uniform(rng, -12, 12);
    tp.m0 = mmin(tp.m1, tp.m2, amb) + uniform(rng, 0, 5);
    return tp;
}

}  // namespace dstab::fixtures
