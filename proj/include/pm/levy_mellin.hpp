#pragma once

#include "pm/arith.hpp"
#include "pm/continued_fraction.hpp"
#include "pm/farey.hpp"
#include "pm/hecke.hpp"
#include "pm/matrix.hpp"
#include "pm/measure.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pm {

// The two reduced matrices with lower row (c, d), determinants -1 and +1. g_minus is the one
// mapping [0, 1] into [0, 1/2]; for the marginal row (1, 1) only g_minus exists.
struct ReducedPair {
    UnimodularMatrix g_minus;
    std::optional<UnimodularMatrix> g_plus;
};

bool is_reduced(const UnimodularMatrix& g);
// 1 <= c < d coprime, or (1, 1).
ReducedPair reduced_pair(long c, long d);

// Closed interval minus some of its ends. The end of denominator c + d is always excluded; the
// end b/d only when 2c > d, since a rational is counted through its shorter expansion.
struct FareyInterval {
    Rational lo;
    Rational hi;
    std::vector<Rational> excluded;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const;
    Segment segment() const { return Segment(Point(lo), Point(hi)); }
};

// (I^-, I^+); (1, 1) gives ([0, 1/2], [1/2, 1]).
std::pair<FareyInterval, FareyInterval> farey_interval_pair(long c, long d);
// Inverse of the L -> S map: (c, d) from I^-.
std::pair<long, long> pair_from_interval(const FareyInterval& minus);

// Coefficients on primitive segments of [0, 1]; f(I_{1,1}) is the value on [0, 1].
template <ValueGroup G>
struct LevyFunction {
    G group;
    std::function<typename G::value_type(const Segment&)> rule;
};

// f(I_{1,1}) + sum of f(I^{-+}_{c,d}) over intervals containing alpha, d <= depth.
template <ValueGroup G>
typename G::value_type levy_eval(const LevyFunction<G>& f, const Rational& alpha, long depth) {
    const Rational shift(floor(alpha));
    auto total = f.rule(Segment(Point(0), Point(1)));
    for (long d = 2; d <= depth; ++d) {
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            auto [minus, plus] = farey_interval_pair(c, d);
            for (const auto* I : {&minus, &plus}) {
                // translated system: alpha is tested against I + floor(alpha)
                FareyInterval moved{I->lo + shift, I->hi + shift, {}};
                for (const auto& e : I->excluded) moved.excluded.push_back(e + shift);
                if (moved.contains(alpha)) total = f.group.add(total, f.rule(I->segment()));
            }
        }
    }
    return total;
}

// Pairs (q_n, q_{n+1}) of consecutive convergent denominators of frac(alpha) used by the
// classical form, tagged -1 for alpha in (0, 1/2] and +1 for alpha in [1/2, 1).
std::vector<std::pair<int, std::pair<long, long>>> levy_denominator_pairs(const Rational& alpha, long depth);

// f(1, 1) + sum f^{-+}(q_n, q_{n+1}) with f^{-+}(c, d) = f(I^{-+}_{c,d}).
template <ValueGroup G>
typename G::value_type levy_eval_classical(const LevyFunction<G>& f, const Rational& alpha, long depth) {
    auto total = f.rule(Segment(Point(0), Point(1)));
    for (const auto& [side, pair] : levy_denominator_pairs(alpha, depth)) {
        auto [minus, plus] = farey_interval_pair(pair.first, pair.second);
        total = f.group.add(total, f.rule(side < 0 ? minus.segment() : plus.segment()));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Truncated formal Dirichlet series sum a_n n^{-s}, n = 1..truncation.

template <class V>
struct DirichletSeries {
    std::size_t truncation = 1;
    std::map<std::size_t, V> terms;
};

// Z[GL+(2,Q)]: finite integer combinations of matrices.
using GroupRingElement = std::map<RationalMatrix, Integer>;
using GroupRingSeries = DirichletSeries<GroupRingElement>;

GroupRingElement group_ring_product(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement group_ring_sum(const GroupRingElement& x, const GroupRingElement& y);

// c_n = sum_{d1 d2 = n} a_{d1} b_{d2}, truncated at min(N_A, N_B).
template <class A, class B, class Compose, class Add>
auto dirichlet_convolve(const DirichletSeries<A>& a, const DirichletSeries<B>& b, Compose compose, Add add) {
    using C = decltype(compose(std::declval<const A&>(), std::declval<const B&>()));
    DirichletSeries<C> out;
    out.truncation = std::min(a.truncation, b.truncation);
    for (const auto& [i, x] : a.terms) {
        for (const auto& [j, y] : b.terms) {
            if (i * j > out.truncation) break;
            C term = compose(x, y);
            auto it = out.terms.find(i * j);
            if (it == out.terms.end()) out.terms.emplace(i * j, std::move(term));
            else it->second = add(it->second, term);
        }
    }
    return out;
}

GroupRingSeries dirichlet_mul(const GroupRingSeries& a, const GroupRingSeries& b);

// sum m_g g[x].
template <RationalActionGroup G>
typename G::value_type act_group_ring(const G& group, const GroupRingElement& e, const typename G::value_type& x) {
    auto total = group.zero();
    for (const auto& [g, m] : e) total = group.add(total, times(group, m, group.act_rational(g, x)));
    return total;
}

template <RationalActionGroup G>
DirichletSeries<typename G::value_type> dirichlet_mul(const G& group, const GroupRingSeries& a,
                                                      const DirichletSeries<typename G::value_type>& b) {
    using V = typename G::value_type;
    return dirichlet_convolve(
        a, b, [&group](const GroupRingElement& e, const V& x) { return act_group_ring(group, e, x); },
        [&group](const V& x, const V& y) { return group.add(x, y); });
}

// a_n -> n^w a_n.
GroupRingSeries argument_shift(const GroupRingSeries& a, unsigned w);
template <ValueGroup G>
DirichletSeries<typename G::value_type> argument_shift(const G& group, const DirichletSeries<typename G::value_type>& a, unsigned w) {
    DirichletSeries<typename G::value_type> out{a.truncation, {}};
    for (const auto& [n, x] : a.terms) {
        Integer factor;
        mpz_ui_pow_ui(factor.get_mpz_t(), n, w);
        out.terms.emplace(n, times(group, factor, x));
    }
    return out;
}

GroupRingSeries unit_series(std::size_t truncation);
// sum_{d1} diag(1, 1/d1) d1^{-s}
GroupRingSeries z_minus(std::size_t truncation);
// sum_{d2} diag(1/d2, 1) d2^{-s}
GroupRingSeries z_plus(std::size_t truncation);

// (1, -c/d; 0, 1/d)
RationalMatrix lm_matrix(long c, long d);

// Coefficient at d: the integral over [0, 1/2] of the Levy function f_mu, i.e.
// sum over (c, d) in L u {(1,1)} of |I^-_{c,d}| * |I^-_{c,d}|^{-1} (1, -c/d; 0, 1/d)[mu(inf, c/d)].
template <RationalActionGroup G>
DirichletSeries<typename G::value_type> lm_transform(const PseudoMeasure<G>& mu, std::size_t truncation) {
    const G& group = mu.group();
    DirichletSeries<typename G::value_type> out{truncation, {}};
    for (long d = 1; d <= static_cast<long>(truncation); ++d) {
        auto total = group.zero();
        for (long c = 1; c <= d; ++c) {
            if (std::gcd(c, d) != 1 || (c == d && d != 1)) continue;
            total = group.add(total, group.act_rational(lm_matrix(c, d), mu(Point::infinity(), Point(Integer(c), Integer(d)))));
        }
        out.terms.emplace(static_cast<std::size_t>(d), total);
    }
    return out;
}

// Representative (a, b; 0, D) of determinant n written as (d2, c d1; 0, d d1).
struct HeckeDecomposition {
    RationalMatrix representative;
    long d = 1, d1 = 1, d2 = 1, c = 1;
    // inverse == diag(1/d2, 1) diag(1, 1/d1) (1, -c/d; 0, 1/d)
    bool factorization_holds = false;
};

std::vector<HeckeDecomposition> hecke_decompositions(long n);

template <class V>
struct CoefficientComparison {
    std::size_t n;
    V lhs;
    V rhs;
    bool equal;
};

template <class V>
struct HeckeSeriesReport {
    bool all_equal = true;
    std::vector<CoefficientComparison<V>> coefficients;
};

// Z+ Z- LM_mu against sum (T_n mu)(inf, 0) n^{-s}, coefficients 1..N.
template <RationalActionGroup G>
HeckeSeriesReport<typename G::value_type> verify_hecke_series(const PseudoMeasure<G>& mu, std::size_t truncation) {
    using V = typename G::value_type;
    const G& group = mu.group();
    const auto lm = lm_transform(mu, truncation);
    const auto lhs = dirichlet_mul(group, z_plus(truncation), dirichlet_mul(group, z_minus(truncation), lm));
    HeckeSeriesReport<V> report;
    for (std::size_t n = 1; n <= truncation; ++n) {
        V left = lhs.terms.count(n) ? lhs.terms.at(n) : group.zero();
        V right = seed_of(hecke(mu, static_cast<long>(n)));
        bool eq = group.equal(left, right);
        report.all_equal = report.all_equal && eq;
        report.coefficients.push_back({n, left, right, eq});
    }
    return report;
}

template <ValueGroup G>
nlohmann::json to_json(const G& group, const HeckeSeriesReport<typename G::value_type>& r) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : r.coefficients)
        coeffs.push_back({{"n", c.n}, {"lhs", group.to_json(c.lhs)}, {"rhs", group.to_json(c.rhs)}, {"equal", c.equal}});
    return {{"all_equal", r.all_equal}, {"coefficients", coeffs}};
}

}  // namespace pm
