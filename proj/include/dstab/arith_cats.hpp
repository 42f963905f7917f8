#pragma once

// Concrete category instances:
//  - positive integers under division (steps a -> a*b -> b),
//  - naturals under subtraction (steps a -> a+b -> b),
//  - finite direct sums of indexed lines Rv_i (steps A -> A u B -> B).

#include "dstab/factor.hpp"
#include "dstab/hn_core.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace dstab {

/// Finitely supported multiplicity function; the additive class used by the
/// division and vector-space instances.
template <class Key>
struct Multiplicity {
    std::map<Key, long long> counts;

    friend Multiplicity operator+(Multiplicity a, const Multiplicity& b) {
        for (const auto& [k, v] : b.counts) {
            if ((a.counts[k] += v) == 0) a.counts.erase(k);
        }
        return a;
    }
    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

// ---------------------------------------------------------------------------
// Positive integers under division. The unit 1 is the zero object.

class PosIntDivision {
public:
    using object_type = Integer;

    // (number of prime factors, sum of primes with multiplicity): the slope is
    // the mean prime, so larger primes dominate and prime powers are semistable.
    [[nodiscard]] SlopeVector slope(const Integer& n) const {
        Rational count = 0, weight = 0;
        for (const auto& [p, e] : factorize(n)) {
            count += e;
            weight += Rational(p) * e;
        }
        return SlopeVector({count, weight});
    }

    [[nodiscard]] std::optional<DeltaStep<Integer>> destabilize(const Integer& n) const {
        auto f = factorize(n);
        if (f.size() < 2) return std::nullopt;
        const auto& [p, e] = *f.rbegin();
        Integer sub = boost::multiprecision::pow(p, e);
        return DeltaStep<Integer>{sub, n, Integer(n / sub)};
    }

    [[nodiscard]] Multiplicity<Integer> kclass(const Integer& n) const {
        Multiplicity<Integer> m;
        for (const auto& [p, e] : factorize(n)) m.counts[p] = e;
        return m;
    }

    [[nodiscard]] bool is_zero(const Integer& n) const { return n == 1; }
    [[nodiscard]] bool equal(const Integer& a, const Integer& b) const { return a == b; }

    [[nodiscard]] DeltaStep<Integer> compose_quotients(const DeltaStep<Integer>& first,
                                                       const DeltaStep<Integer>& second) const {
        return {Integer(first.whole / second.quotient), first.whole, second.quotient};
    }

    [[nodiscard]] DeltaStep<Integer> compose_subs(const DeltaStep<Integer>& inner,
                                                  const DeltaStep<Integer>& outer) const {
        return {inner.sub, outer.whole, Integer(outer.whole / inner.sub)};
    }
};

struct PosIntHN {
    std::vector<Integer> factors;  // prime powers, primes strictly descending
    bool unit = false;             // n = 1: empty decomposition
};

/// Direct decomposition by factorization.
inline PosIntHN hn_posint(const Integer& n) {
    if (n < 1) throw input_error("expected a positive integer");
    PosIntHN out;
    if (n == 1) {
        out.unit = true;
        return out;
    }
    auto f = factorize(n);
    for (auto it = f.rbegin(); it != f.rend(); ++it) out.factors.push_back(boost::multiprecision::pow(it->first, it->second));
    return out;
}

/// Composition series of a prime power p^k by p: the k simple quotients.
inline std::vector<Integer> jh_prime_power(const Integer& q) {
    auto f = factorize(q);
    if (f.size() != 1) throw input_error("expected a prime power");
    const auto& [p, e] = *f.begin();
    return std::vector<Integer>(e, p);
}

// ---------------------------------------------------------------------------
// Naturals under subtraction. Every nonzero object is semistable of the same slope.

class NatSubtraction {
public:
    using object_type = Integer;

    [[nodiscard]] SlopeVector slope(const Integer& n) const { return SlopeVector({Rational(n)}); }
    [[nodiscard]] std::optional<DeltaStep<Integer>> destabilize(const Integer&) const { return std::nullopt; }
    [[nodiscard]] Integer kclass(const Integer& n) const { return n; }
    [[nodiscard]] bool is_zero(const Integer& n) const { return n == 0; }
    [[nodiscard]] bool equal(const Integer& a, const Integer& b) const { return a == b; }

    [[nodiscard]] DeltaStep<Integer> compose_quotients(const DeltaStep<Integer>& first,
                                                       const DeltaStep<Integer>& second) const {
        return {Integer(first.whole - second.quotient), first.whole, second.quotient};
    }
    [[nodiscard]] DeltaStep<Integer> compose_subs(const DeltaStep<Integer>& inner,
                                                  const DeltaStep<Integer>& outer) const {
        return {inner.sub, outer.whole, Integer(outer.whole - inner.sub)};
    }
};

/// Length of the Jordan-Hoelder chain 1 -> 2 -> ... -> n, i.e. n - 1.
inline Integer jh_subtraction(const Integer& n) {
    if (n < 1) throw input_error("Jordan-Hoelder chain needs n >= 1");
    return n - 1;
}

/// The chain itself as steps (k, k+1, 1). Only for modest n.
inline std::vector<DeltaStep<Integer>> jh_subtraction_steps(const Integer& n, const Integer& limit = 100000) {
    if (n < 1) throw input_error("Jordan-Hoelder chain needs n >= 1");
    if (n > limit) throw input_error("chain too long to enumerate");
    std::vector<DeltaStep<Integer>> steps;
    for (Integer k = 1; k < n; ++k) steps.push_back({k, Integer(k + 1), Integer(1)});
    return steps;
}

// ---------------------------------------------------------------------------
// Direct sums of lines Rv_i indexed by distinct naturals; larger index dominates.

using VecSpaceObj = std::set<unsigned long long>;

class VecSpaceInstance {
public:
    using object_type = VecSpaceObj;

    // (dimension, sum of indices): the slope is the mean index.
    [[nodiscard]] SlopeVector slope(const VecSpaceObj& v) const {
        Rational sum = 0;
        for (auto i : v) sum += Rational(Integer(i));
        return SlopeVector({Rational(static_cast<long long>(v.size())), sum});
    }

    [[nodiscard]] std::optional<DeltaStep<VecSpaceObj>> destabilize(const VecSpaceObj& v) const {
        if (v.size() < 2) return std::nullopt;
        VecSpaceObj top{*v.rbegin()};
        VecSpaceObj rest(v.begin(), std::prev(v.end()));
        return DeltaStep<VecSpaceObj>{top, v, rest};
    }

    [[nodiscard]] Multiplicity<unsigned long long> kclass(const VecSpaceObj& v) const {
        Multiplicity<unsigned long long> m;
        for (auto i : v) m.counts[i] = 1;
        return m;
    }

    [[nodiscard]] bool is_zero(const VecSpaceObj& v) const { return v.empty(); }
    [[nodiscard]] bool equal(const VecSpaceObj& a, const VecSpaceObj& b) const { return a == b; }

    [[nodiscard]] DeltaStep<VecSpaceObj> compose_quotients(const DeltaStep<VecSpaceObj>& first,
                                                           const DeltaStep<VecSpaceObj>& second) const {
        return {difference(first.whole, second.quotient), first.whole, second.quotient};
    }
    [[nodiscard]] DeltaStep<VecSpaceObj> compose_subs(const DeltaStep<VecSpaceObj>& inner,
                                                      const DeltaStep<VecSpaceObj>& outer) const {
        return {inner.sub, outer.whole, difference(outer.whole, inner.sub)};
    }

private:
    static VecSpaceObj difference(const VecSpaceObj& a, const VecSpaceObj& b) {
        VecSpaceObj out;
        for (auto i : a)
            if (!b.count(i)) out.insert(i);
        return out;
    }
};

/// HN factors of a direct sum of lines: the lines in descending index.
inline std::vector<VecSpaceObj> hn_vecspace(const VecSpaceObj& v) {
    if (v.empty()) throw input_error("zero vector space has no HN sequence");
    return hn_decompose(VecSpaceInstance{}, v).factors;
}

static_assert(CategoryInstance<PosIntDivision>);
static_assert(CategoryInstance<NatSubtraction>);
static_assert(CategoryInstance<VecSpaceInstance>);

}  // namespace dstab
