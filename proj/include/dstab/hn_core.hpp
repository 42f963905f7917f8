#pragma once

// Generic Delta-stability engine: vector slopes, Delta-steps, Harder-Narasimhan
// decomposition by maximally destabilising quotients, and verification.
//
// A category instance supplies the ordering (through slope vectors), a
// destabilizing oracle, an additive class map, and the two composition rules of
// an exact class (quotients of quotients, subobjects of subobjects). The engine
// never looks at morphisms.

#include "dstab/rational.hpp"

#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dstab {

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

/// Coefficient tuple (x_0, ..., x_r) of a positive system evaluated on one object.
/// The first nonzero entry, if any, is strictly positive.
class SlopeVector {
public:
    SlopeVector() = default;

    explicit SlopeVector(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        for (const auto& x : coeffs_) {
            if (x == 0) continue;
            if (x < 0) throw input_error("slope vector has a negative leading entry");
            break;
        }
    }

    SlopeVector(std::initializer_list<Rational> coeffs) : SlopeVector(std::vector<Rational>(coeffs)) {}

    [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

    /// Index of the first nonzero entry, or size() for the zero vector.
    [[nodiscard]] std::size_t leading_index() const noexcept {
        std::size_t s = 0;
        while (s < coeffs_.size() && coeffs_[s] == 0) ++s;
        return s;
    }

    [[nodiscard]] bool is_zero() const noexcept { return leading_index() == coeffs_.size(); }

    friend bool operator==(const SlopeVector&, const SlopeVector&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// Vector-slope preorder. A zero leading entry dominates any nonzero one;
/// otherwise the ratio vectors (x_{s+1}/x_s, ..., x_r/x_s) are compared
/// lexicographically. Comparison is by cross-multiplication, so it is exact
/// and invariant under positive scaling of either argument.
inline Ordering compare_slopes(const SlopeVector& a, const SlopeVector& b) {
    if (a.size() != b.size()) {
        throw input_error("slope vectors of different lengths (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
    if (a.is_zero() || b.is_zero()) throw input_error("slope of the zero vector is undefined");

    const std::size_t sa = a.leading_index();
    const std::size_t sb = b.leading_index();
    if (sa != sb) return sa > sb ? Ordering::Greater : Ordering::Less;

    const Rational& pa = a[sa];
    const Rational& pb = b[sb];
    for (std::size_t i = sa + 1; i < a.size(); ++i) {
        Rational lhs = a[i] * pb;
        Rational rhs = b[i] * pa;
        if (lhs < rhs) return Ordering::Less;
        if (lhs > rhs) return Ordering::Greater;
    }
    return Ordering::Equal;
}

/// A distinguished sequence sub -> whole -> quotient.
template <class Obj>
struct DeltaStep {
    Obj sub;
    Obj whole;
    Obj quotient;

    friend bool operator==(const DeltaStep&, const DeltaStep&) = default;
};

/// Harder-Narasimhan sequence E_0 -> E_1 -> ... -> E_n = E with semistable
/// factors F_0 > F_1 > ... > F_n. steps[j] is E_j -> E_{j+1} -> F_{j+1} and
/// E_0 = F_0.
template <class Obj>
struct HNSequence {
    std::vector<DeltaStep<Obj>> steps;
    std::vector<Obj> factors;

    friend bool operator==(const HNSequence&, const HNSequence&) = default;
};

// clang-format off
template <class I>
concept CategoryInstance = requires(const I& inst,
                                    const typename I::object_type& x,
                                    const DeltaStep<typename I::object_type>& s) {
    typename I::object_type;
    { inst.slope(x) } -> std::convertible_to<SlopeVector>;
    { inst.destabilize(x) } -> std::same_as<std::optional<DeltaStep<typename I::object_type>>>;
    { inst.kclass(x) + inst.kclass(x) } -> std::convertible_to<decltype(inst.kclass(x))>;
    { inst.kclass(x) == inst.kclass(x) } -> std::convertible_to<bool>;
    { inst.is_zero(x) } -> std::convertible_to<bool>;
    { inst.equal(x, x) } -> std::convertible_to<bool>;
    // Exactness: F1 -> E -> E' and F2 -> E' -> B give F1' -> E -> B.
    { inst.compose_quotients(s, s) } -> std::same_as<DeltaStep<typename I::object_type>>;
    // Exactness: A' -> A -> C1 and A -> E -> C2 give A' -> E -> C'.
    { inst.compose_subs(s, s) } -> std::same_as<DeltaStep<typename I::object_type>>;
};
// clang-format on

class hn_error : public std::runtime_error {
public:
    enum class kind { max_steps_exceeded, invalid_step };

    hn_error(kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    [[nodiscard]] kind code() const noexcept { return kind_; }

private:
    kind kind_;
};

inline constexpr std::size_t default_max_steps = 1'000'000;

template <CategoryInstance I>
Ordering compare_objects(const I& inst, const typename I::object_type& a, const typename I::object_type& b) {
    return compare_slopes(SlopeVector(inst.slope(a)), SlopeVector(inst.slope(b)));
}

template <CategoryInstance I>
bool is_semistable(const I& inst, const typename I::object_type& obj) {
    return !inst.destabilize(obj).has_value();
}

template <CategoryInstance I>
bool class_additive(const I& inst, const DeltaStep<typename I::object_type>& step) {
    return inst.kclass(step.whole) == inst.kclass(step.sub) + inst.kclass(step.quotient);
}

namespace detail {

template <CategoryInstance I>
class Decomposer {
public:
    using Obj = typename I::object_type;
    using Step = DeltaStep<Obj>;

    Decomposer(const I& inst, std::size_t max_steps) : inst_(inst), budget_(max_steps) {}

    HNSequence<Obj> run(const Obj& obj) {
        if (inst_.is_zero(obj)) throw input_error("cannot decompose the zero object");

        // Peel maximally destabilising quotients off the top:
        // E^{j+1} -> E^j -> B_j with B_j semistable and minimal in slope.
        std::vector<Step> peeled;
        Obj current = obj;
        while (auto first = destabilize(current)) {
            Step mdo = maximal_destabilizing_quotient(current, *first);
            if (!peeled.empty() && compare_objects(inst_, mdo.quotient, peeled.back().quotient) != Ordering::Greater) {
                throw hn_error(hn_error::kind::invalid_step,
                               "successive destabilising quotients are not strictly increasing in slope");
            }
            peeled.push_back(mdo);
            current = mdo.sub;
        }
        if (!peeled.empty() && compare_objects(inst_, current, peeled.back().quotient) != Ordering::Greater) {
            throw hn_error(hn_error::kind::invalid_step, "first factor does not dominate the next one");
        }

        HNSequence<Obj> seq;
        seq.factors.push_back(current);
        for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
            seq.factors.push_back(it->quotient);
            seq.steps.push_back(*it);
        }
        return seq;
    }

private:
    void charge() {
        if (budget_ == 0) {
            throw hn_error(hn_error::kind::max_steps_exceeded,
                           "step budget exhausted; the instance may not be weakly Artinian/Noetherian");
        }
        --budget_;
    }

    std::optional<Step> destabilize(const Obj& obj) {
        charge();
        auto step = inst_.destabilize(obj);
        if (step) check_step(*step, obj);
        return step;
    }

    void check_step(const Step& s, const Obj& expected_whole) const {
        if (!inst_.equal(s.whole, expected_whole)) {
            throw hn_error(hn_error::kind::invalid_step, "oracle step does not end at the object it was asked about");
        }
        if (inst_.is_zero(s.sub) || inst_.is_zero(s.quotient)) {
            throw hn_error(hn_error::kind::invalid_step, "oracle step has a zero sub or quotient");
        }
        if (!class_additive(inst_, s)) {
            throw hn_error(hn_error::kind::invalid_step, "oracle step violates class additivity");
        }
        if (compare_objects(inst_, s.sub, s.whole) != Ordering::Greater) {
            throw hn_error(hn_error::kind::invalid_step, "oracle sub does not strictly dominate the object");
        }
    }

    void check_composite(const Step& s) const {
        if (inst_.is_zero(s.sub) || inst_.is_zero(s.quotient) || !class_additive(inst_, s)) {
            throw hn_error(hn_error::kind::invalid_step, "composed step violates the Delta-step invariants");
        }
    }

    // Shrinks a destabilizing sub until it is semistable (weakly Artinian).
    Step semistable_sub(Step step) {
        while (true) {
            charge();
            auto inner = inst_.destabilize(step.sub);
            if (!inner) return step;
            check_step(*inner, step.sub);
            charge();
            step = inst_.compose_subs(*inner, step);
            check_composite(step);
        }
    }

    // Quotients out semistable destabilizing subs until the remaining quotient
    // is semistable (weakly Noetherian); that quotient is the mdo of obj.
    Step maximal_destabilizing_quotient(const Obj& obj, Step first) {
        Step total = semistable_sub(std::move(first));
        if (!inst_.equal(total.whole, obj)) {
            throw hn_error(hn_error::kind::invalid_step, "composed sub step lost its target object");
        }
        while (auto next = destabilize(total.quotient)) {
            Step refined = semistable_sub(std::move(*next));
            charge();
            total = inst_.compose_quotients(total, refined);
            check_composite(total);
        }
        return total;
    }

    const I& inst_;
    std::size_t budget_;
};

}  // namespace detail

/// Harder-Narasimhan decomposition. A semistable object yields the single
/// factor sequence [obj]. Throws hn_error when the step budget runs out or
/// the instance's oracle produces an inconsistent step.
template <CategoryInstance I>
HNSequence<typename I::object_type> hn_decompose(const I& inst, const typename I::object_type& obj,
                                                 std::size_t max_steps = default_max_steps) {
    return detail::Decomposer<I>(inst, max_steps).run(obj);
}

struct Violation {
    std::string clause;  // "descent", "semistable", "chaining", "additivity", "nonzero", "shape", "target"
    std::size_t index = 0;
    std::string detail;
};

struct HNReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has(const std::string& clause) const {
        for (const auto& v : violations)
            if (v.clause == clause) return true;
        return false;
    }
};

/// Checks strict descent, per-factor semistability, chaining, factor/step
/// agreement and class additivity. Violations are returned, never thrown.
template <CategoryInstance I>
HNReport verify_hn(const I& inst, const HNSequence<typename I::object_type>& seq) {
    HNReport report;
    auto add = [&](std::string clause, std::size_t i, std::string detail) {
        report.violations.push_back({std::move(clause), i, std::move(detail)});
    };

    const auto& f = seq.factors;
    const auto& s = seq.steps;
    if (f.empty()) {
        add("shape", 0, "no factors");
        return report;
    }
    if (f.size() != s.size() + 1) add("shape", 0, "expected one more factor than steps");

    for (std::size_t i = 0; i < f.size(); ++i) {
        if (inst.is_zero(f[i])) {
            add("nonzero", i, "zero factor");
            continue;
        }
        if (!is_semistable(inst, f[i])) add("semistable", i, "factor admits a destabilizing step");
    }
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (inst.is_zero(f[i]) || inst.is_zero(f[i + 1])) continue;
        if (compare_objects(inst, f[i], f[i + 1]) != Ordering::Greater) {
            add("descent", i, "factor does not strictly dominate its successor");
        }
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (inst.is_zero(s[j].sub) || inst.is_zero(s[j].quotient)) add("nonzero", j, "step with zero sub or quotient");
        if (!class_additive(inst, s[j])) add("additivity", j, "class(whole) != class(sub) + class(quotient)");
        if (j + 1 < s.size() && !inst.equal(s[j].whole, s[j + 1].sub)) {
            add("chaining", j, "step whole differs from the next step's sub");
        }
        if (j + 1 < f.size() && !inst.equal(s[j].quotient, f[j + 1])) {
            add("chaining", j, "step quotient differs from the matching factor");
        }
    }
    if (!s.empty() && !inst.equal(s.front().sub, f.front())) add("chaining", 0, "first step does not start at F_0");
    return report;
}

/// Same as verify_hn, and additionally checks that the sequence ends at obj.
template <CategoryInstance I>
HNReport verify_hn(const I& inst, const HNSequence<typename I::object_type>& seq, const typename I::object_type& obj) {
    HNReport report = verify_hn(inst, seq);
    const bool ends_at_obj = seq.steps.empty() ? (!seq.factors.empty() && inst.equal(seq.factors.front(), obj))
                                               : inst.equal(seq.steps.back().whole, obj);
    if (!ends_at_obj) report.violations.push_back({"target", 0, "sequence does not end at the decomposed object"});
    return report;
}

enum class SeesawCase { Up, Down, Flat, Violation };

inline const char* to_string(SeesawCase c) {
    switch (c) {
        case SeesawCase::Up: return "Up";
        case SeesawCase::Down: return "Down";
        case SeesawCase::Flat: return "Flat";
        case SeesawCase::Violation: return "Violation";
    }
    return "?";
}

/// Classifies (A, B, C) = (sub, whole, quotient): Up when A < B, A < C, B < C;
/// Down for the reverse; Flat when all three are equal; Violation otherwise.
template <class SlopeFn, class Obj>
SeesawCase seesaw_check(SlopeFn&& slope, const DeltaStep<Obj>& step) {
    const SlopeVector a(slope(step.sub));
    const SlopeVector b(slope(step.whole));
    const SlopeVector c(slope(step.quotient));
    const Ordering ab = compare_slopes(a, b);
    const Ordering ac = compare_slopes(a, c);
    const Ordering bc = compare_slopes(b, c);
    if (ab == ac && ac == bc) {
        switch (ab) {
            case Ordering::Less: return SeesawCase::Up;
            case Ordering::Greater: return SeesawCase::Down;
            case Ordering::Equal: return SeesawCase::Flat;
        }
    }
    return SeesawCase::Violation;
}

}  // namespace dstab
