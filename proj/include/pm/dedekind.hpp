#pragma once

#include "pm/arith.hpp"
#include "pm/farey.hpp"
#include "pm/measure.hpp"

#include <json.hpp>

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace pm {

// R(p, q) on coprime p, q >= 1.
template <ValueGroup G>
struct ReciprocityFunction {
    G group;
    std::function<typename G::value_type(const Integer& p, const Integer& q)> rule;

    typename G::value_type operator()(const Integer& p, const Integer& q) const { return rule(p, q); }
};

// D(p, q) on p >= 1, gcd(p, q) = 1, periodic in q with period p.
template <ValueGroup G>
struct DedekindSymbol {
    G group;
    std::function<typename G::value_type(const Integer& p, const Integer& q)> rule;

    typename G::value_type operator()(const Integer& p, const Integer& q) const { return rule(p, q); }
};

// The primitive segment [a/p, b/q] in [0, 1] attached to (p, q): bp - aq = 1.
inline Segment unit_segment(const Integer& p, const Integer& q) {
    if (p < 1 || q < 1) throw std::invalid_argument("reciprocity arguments must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::invalid_argument("reciprocity arguments must be coprime");
    Integer b = q == 1 ? Integer(1) : mod_inverse(p, q);
    Integer a = (b * p - 1) / q;
    return Segment(Point(a, p), Point(b, q));
}

// Inverse of unit_segment, for an increasing primitive segment inside [0, 1].
inline std::pair<Integer, Integer> unit_segment_key(const Point& lo, const Point& hi) {
    return {lo.den(), hi.den()};
}

// R_{mu,n}(p, q) = mu(n + a/p, n + b/q).
template <ValueGroup G>
ReciprocityFunction<G> reciprocity_from_measure(const PseudoMeasure<G>& mu, const Integer& n) {
    return {mu.group(), [mu, n](const Integer& p, const Integer& q) {
                Segment s = unit_segment(p, q);
                Rational shift(n);
                return mu(Point(s.from().value() + shift), Point(s.to().value() + shift));
            }};
}

template <ValueGroup G>
using ReciprocityFamily = std::function<ReciprocityFunction<G>(const Integer& n)>;

// R(p+q, q) + R(p, p+q) = R(p, q) for coprime p, q >= 1 with p + q <= max_sum.
template <ValueGroup G>
CheckReport check_reciprocity_equation(const ReciprocityFunction<G>& r, long max_sum) {
    CheckReport report;
    for (long p = 1; p < max_sum; ++p) {
        for (long q = 1; p + q <= max_sum; ++q) {
            if (std::gcd(p, q) != 1) continue;
            ++report.checked;
            const Integer P(p), Q(q);
            auto lhs = r.group.add(r(P + Q, Q), r(P, P + Q));
            if (!r.group.equal(lhs, r(P, Q))) {
                report.fail("functional equation fails at (" + std::to_string(p) + ", " + std::to_string(q) + ")");
                return report;
            }
        }
    }
    return report;
}

// Pre-measure of the family {R_n} with mu(inf, 0) = omega; infinity plays the role of -inf.
template <ValueGroup G>
PreMeasure<G> premeasure_from_reciprocity(G group, ReciprocityFamily<G> family, typename G::value_type omega) {
    // mu(inf, n)
    auto potential = [group, family, omega](const Integer& n) {
        auto total = omega;
        const Integer one(1);
        if (n >= 0) {
            for (Integer j = 0; j < n; ++j) total = group.add(total, family(j)(one, one));
        } else {
            for (Integer j = -1; j >= n; --j) total = subtract(group, total, family(j)(one, one));
        }
        return total;
    };
    return {group, [group, family, potential](const Segment& s) -> typename G::value_type {
                if (s.from().is_infinite()) return potential(s.to().num());
                if (s.to().is_infinite()) return group.negate(potential(s.from().num()));
                const bool increasing = s.from() < s.to();
                const Point& lo = increasing ? s.from() : s.to();
                const Point& hi = increasing ? s.to() : s.from();
                Integer n = floor(lo.value());
                Rational shift(n);
                auto [p, q] = unit_segment_key(Point(lo.value() - shift), Point(hi.value() - shift));
                auto v = family(n)(p, q);
                return increasing ? v : group.negate(v);
            }};
}

template <ValueGroup G>
PseudoMeasure<G> measure_from_reciprocity(G group, ReciprocityFamily<G> family, typename G::value_type omega, int depth = 4,
                                          int max_den = 30) {
    return PseudoMeasure<G>::extend(premeasure_from_reciprocity(std::move(group), std::move(family), std::move(omega)), depth,
                                    max_den);
}

// R(p, q) = D(p, q) - D(q, -p).
template <ValueGroup G>
ReciprocityFunction<G> symbol_to_reciprocity(const DedekindSymbol<G>& d) {
    return {d.group, [d](const Integer& p, const Integer& q) { return subtract(d.group, d(p, q), d(q, -p)); }};
}

// D(p, q) = D(p, -q): the condition under which R(1, 1) vanishes.
template <ValueGroup G>
bool symbol_is_even(const DedekindSymbol<G>& d, long max_arg) {
    for (long p = 1; p <= max_arg; ++p)
        for (long q = 1; q <= max_arg; ++q)
            if (std::gcd(p, q) == 1 && !d.group.equal(d(Integer(p), Integer(q)), d(Integer(p), Integer(-q)))) return false;
    return true;
}

// R_{mu,n} = R_{mu,0} for |n| <= max_shift on p + q <= max_sum, and R_{mu,0}(1, 1) = 0.
template <ValueGroup G>
bool shift_invariant_measure_check(const PseudoMeasure<G>& mu, long max_shift = 3, long max_sum = 12) {
    const auto& group = mu.group();
    const auto base = reciprocity_from_measure(mu, Integer(0));
    if (!is_zero(group, base(Integer(1), Integer(1)))) return false;
    for (long n = -max_shift; n <= max_shift; ++n) {
        if (n == 0) continue;
        const auto shifted = reciprocity_from_measure(mu, Integer(n));
        for (long p = 1; p < max_sum; ++p)
            for (long q = 1; p + q <= max_sum; ++q)
                if (std::gcd(p, q) == 1 && !group.equal(shifted(Integer(p), Integer(q)), base(Integer(p), Integer(q)))) return false;
    }
    return true;
}

// [{p, q, value}] for coprime p + q <= max_sum.
template <ValueGroup G>
nlohmann::json reciprocity_table(const ReciprocityFunction<G>& r, long max_sum) {
    nlohmann::json out = nlohmann::json::array();
    for (long p = 1; p < max_sum; ++p)
        for (long q = 1; p + q <= max_sum; ++q)
            if (std::gcd(p, q) == 1) out.push_back({{"p", p}, {"q", q}, {"value", r.group.to_json(r(Integer(p), Integer(q)))}});
    return out;
}

}  // namespace pm
