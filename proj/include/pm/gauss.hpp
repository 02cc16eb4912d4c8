#pragma once

#include "pm/cosets.hpp"
#include "pm/matrix.hpp"
#include "pm/measure.hpp"
#include "pm/surd.hpp"
#include "pm/tree.hpp"

#include <json.hpp>

#include <cmath>
#include <concepts>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pm {

// x -> -sign(x) (1/|x| - floor(1/|x|)) on [-1, 1]; 0 is terminal and maps to itself.
Rational gauss_shift(const Rational& x);

struct ShiftStep {
    Rational x;
    std::size_t coset = 0;
    Integer k;  // sign(x) floor(1/|x|)
};

// (x, s) -> (gauss_shift(x), [h_s sigma T^k]); throws for x = 0 or |x| > 1.
ShiftStep generalized_shift(const Rational& x, std::size_t coset, const CosetTable& cosets);
// sigma T^{k_1} ... sigma T^{k_n} along the first n steps of the orbit of x.
UnimodularMatrix iterate_matrix(const Rational& x, std::size_t n);

struct ShiftLetter {
    Integer x;  // nonzero
    std::size_t coset = 0;
    friend bool operator==(const ShiftLetter&, const ShiftLetter&) = default;
};

// x_a x_b < 0 and s_b = [h_{s_a} sigma T^{x_a}].
bool admissible(const ShiftLetter& a, const ShiftLetter& b, const CosetTable& cosets);
// The other written form: x_a x_b < 0 and s_a = [h_{s_b} sigma T^{x_b}].
bool admissible_variant(const ShiftLetter& a, const ShiftLetter& b, const CosetTable& cosets);
// prod_{x in X} A_{xb} prod_{y in Y} (1 - A_{yb}).
int admissibility_product(const std::vector<ShiftLetter>& xs, const std::vector<ShiftLetter>& ys, const ShiftLetter& b,
                          const CosetTable& cosets);

// ---------------------------------------------------------------------------
// Eventually periodic continued fractions [a_0; a_1, ..., (c_0, ..., c_{p-1})].

class PeriodicCF {
public:
    // Canonical: minimal period, preperiod folded into the period as far as possible.
    PeriodicCF(std::vector<Integer> preperiod, std::vector<Integer> period);

    const std::vector<Integer>& preperiod() const { return pre_; }
    const std::vector<Integer>& period() const { return period_; }
    // a_i, with a_0 the integer part.
    const Integer& term(std::size_t i) const;
    QuadraticSurd value() const;

    friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;

private:
    std::vector<Integer> pre_;
    std::vector<Integer> period_;
};

// "[1;(1)]", "[(2)]", "[0;1,(2,3)]".
PeriodicCF parse_periodic_cf(std::string_view text);
std::string to_string(const PeriodicCF& cf);

// lambda = (2/p) log rho = coefficient * log unit, unit the least unit > 1 with rho a power of it.
struct LyapunovExact {
    QuadraticSurd spectral_radius;
    QuadraticSurd unit;
    Rational coefficient;
    long double value = 0;
};

LyapunovExact lyapunov_exact(const PeriodicCF& theta);
// 2 log q_n / n from the exact denominators.
long double lyapunov_estimate(const PeriodicCF& theta, std::size_t n);
std::string to_string(const LyapunovExact& l);

// sum_u terms[u] / log u, the shape of every exact limit here.
template <class V>
struct LimitValue {
    std::map<QuadraticSurd, V, SurdKeyLess> terms;
};

template <ValueGroup G>
LimitValue<typename G::value_type> limit_add(const G& group, const LimitValue<typename G::value_type>& x,
                                             const LimitValue<typename G::value_type>& y) {
    LimitValue<typename G::value_type> out = x;
    for (const auto& [u, v] : y.terms) {
        auto it = out.terms.find(u);
        if (it == out.terms.end()) out.terms.emplace(u, v);
        else it->second = group.add(it->second, v);
    }
    std::erase_if(out.terms, [&group](const auto& kv) { return is_zero(group, kv.second); });
    return out;
}

template <ValueGroup G>
LimitValue<typename G::value_type> limit_negate(const G& group, const LimitValue<typename G::value_type>& x) {
    LimitValue<typename G::value_type> out;
    for (const auto& [u, v] : x.terms) out.terms.emplace(u, group.negate(v));
    return out;
}

template <ValueGroup G>
bool limit_is_zero(const G& group, const LimitValue<typename G::value_type>& x) {
    for (const auto& [u, v] : x.terms)
        if (!is_zero(group, v)) return false;
    return true;
}

template <ValueGroup G>
bool limit_equal(const G& group, const LimitValue<typename G::value_type>& x, const LimitValue<typename G::value_type>& y) {
    return limit_is_zero(group, limit_add(group, x, limit_negate(group, y)));
}

template <LinearGroup G>
std::vector<long double> limit_numeric(const G& group, const LimitValue<typename G::value_type>& x) {
    std::vector<long double> out(group.dimension(), 0.0L);
    for (const auto& [u, v] : x.terms) {
        const long double scale = 1.0L / std::log(u.to_long_double());
        const auto coords = group.coordinates(v);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * static_cast<long double>(coords[i].get_d());
    }
    return out;
}

template <ValueGroup G>
nlohmann::json limit_json(const G& group, const LimitValue<typename G::value_type>& x) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [u, v] : x.terms) out.push_back({{"log_of", to_string(u)}, {"coefficient", group.to_json(v)}});
    return out;
}

// ---------------------------------------------------------------------------
// Value groups on which PSL(2,Z) acts through a permutation of finitely many cosets:
// (g x)[s] = x[pi_g(s)] with pi_{gh} = pi_h o pi_g.

using CosetPermutation = std::vector<std::size_t>;

inline CosetPermutation coset_permutation(const RationalGroup&, const UnimodularMatrix&) { return {0}; }
inline Rational permute_value(const RationalGroup&, const CosetPermutation&, const Rational& x) { return x; }

inline CosetPermutation coset_permutation(const PermutationGroup& group, const UnimodularMatrix& g) {
    CosetPermutation out;
    for (std::size_t s = 0; s < group.cosets->size(); ++s) out.push_back(group.cosets->right_multiply(s, g).first);
    return out;
}
inline std::vector<Rational> permute_value(const PermutationGroup&, const CosetPermutation& pi, const std::vector<Rational>& x) {
    std::vector<Rational> out;
    for (std::size_t s : pi) out.push_back(x[s]);
    return out;
}

template <class G>
concept CosetFactoringGroup = ModularValueGroup<G> && RationalScalarGroup<G> &&
                              requires(const G& g, const UnimodularMatrix& m, const CosetPermutation& p, const typename G::value_type& x) {
                                  { coset_permutation(g, m) } -> std::same_as<CosetPermutation>;
                                  { permute_value(g, p, x) } -> std::same_as<typename G::value_type>;
                              };

// M_j with g_j = g_{j-1} M_j: (0, (-1)^{j+1}; (-1)^j, -a_{j+1}); g_{-1} = T^{a_0}.
UnimodularMatrix convergent_step(std::size_t j, const Integer& next_partial);

// Exact Cesaro limit of (1/(lambda n)) sum_{j=0}^{n} g_j[seed] (or g_j sigma[seed] when twisted):
// the coset orbit is eventually periodic, so the limit is one period's average over lambda.
template <CosetFactoringGroup G>
LimitValue<typename G::value_type> limiting_from_seed(const G& group, const typename G::value_type& seed, const PeriodicCF& theta,
                                                      bool twisted = false) {
    using V = typename G::value_type;
    auto compose = [](const CosetPermutation& first, const CosetPermutation& then) {
        CosetPermutation out;
        for (std::size_t s : first) out.push_back(then[s]);
        return out;
    };
    const CosetPermutation sigma_pi = coset_permutation(group, UnimodularMatrix::sigma());
    const std::size_t pre = theta.preperiod().size(), p = theta.period().size();
    const std::size_t phases = std::lcm(p, std::size_t{2});

    std::map<std::pair<CosetPermutation, std::size_t>, std::size_t> seen;
    std::map<std::pair<std::size_t, Integer>, CosetPermutation> step_cache;
    std::vector<V> summands;
    CosetPermutation pi = coset_permutation(group, UnimodularMatrix::shift(theta.term(0)));
    for (std::size_t j = 0;; ++j) {
        const Integer& next = theta.term(j + 1);
        auto key = std::make_pair(j % 2, next);
        auto it = step_cache.find(key);
        if (it == step_cache.end()) it = step_cache.emplace(key, coset_permutation(group, convergent_step(j, next))).first;
        pi = compose(pi, it->second);
        if (j + 1 >= pre) {
            auto [pos, fresh] = seen.try_emplace({pi, (j + 1 - pre) % phases}, j);
            if (!fresh) {
                // summands pos->second .. j-1 form one full period
                const std::size_t start = pos->second, length = j - start;
                V total = group.zero();
                for (std::size_t i = start; i < j; ++i) total = group.add(total, summands[i]);
                const LyapunovExact lambda = lyapunov_exact(theta);
                Rational factor = 1 / (Rational(static_cast<long>(length)) * lambda.coefficient);
                LimitValue<V> out;
                const V value = group.scale(factor, total);
                if (!is_zero(group, value)) out.terms.emplace(lambda.unit, value);
                return out;
            }
        }
        summands.push_back(permute_value(group, twisted ? compose(pi, sigma_pi) : pi, seed));
    }
}

// mu^lim(inf, theta) for modular mu.
template <CosetFactoringGroup G>
LimitValue<typename G::value_type> limiting_measure(const PseudoMeasure<G>& mu, const PeriodicCF& theta) {
    return limiting_from_seed(mu.group(), seed_of(mu), theta);
}

// mu^lim(theta, inf) from the summands mu(g_j(0), g_j(inf)).
template <CosetFactoringGroup G>
LimitValue<typename G::value_type> limiting_measure_to_infinity(const PseudoMeasure<G>& mu, const PeriodicCF& theta) {
    return limiting_from_seed(mu.group(), seed_of(mu), theta, true);
}

// mu^lim(theta, eta) = mu^lim(theta, inf) + mu^lim(inf, eta).
template <CosetFactoringGroup G>
LimitValue<typename G::value_type> limiting_pair(const PseudoMeasure<G>& mu, const PeriodicCF& theta, const PeriodicCF& eta) {
    return limit_add(mu.group(), limiting_measure_to_infinity(mu, theta), limiting_measure(mu, eta));
}

struct NumericLimit {
    bool converged = false;
    long double lambda = 0;
    std::size_t terms = 0;
    std::vector<long double> value;
    // sup-norm distance between the averages at n/2 and n
    long double gap = 0;
    std::string note;
};

nlohmann::json to_json(const NumericLimit& r);

// Direct (n+1)-term sum over lambda n in floating point, for any linear modular value group.
template <LinearGroup G>
    requires ModularValueGroup<G>
NumericLimit limiting_numeric(const G& group, const typename G::value_type& seed, const PeriodicCF& theta, std::size_t n) {
    using Dense = std::vector<std::vector<long double>>;
    const std::size_t dim = group.dimension();
    auto action = [&](const UnimodularMatrix& g) {
        Dense a(dim, std::vector<long double>(dim, 0.0L));
        for (std::size_t j = 0; j < dim; ++j) {
            Vector e(dim, Rational(0));
            e[j] = 1;
            const auto column = group.coordinates(group.act(g, group.from_coordinates(e)));
            for (std::size_t i = 0; i < dim; ++i) a[i][j] = static_cast<long double>(column[i].get_d());
        }
        return a;
    };
    auto multiply = [dim](const Dense& x, const Dense& y) {
        Dense out(dim, std::vector<long double>(dim, 0.0L));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                for (std::size_t j = 0; j < dim; ++j) out[i][j] += x[i][k] * y[k][j];
        return out;
    };
    std::vector<long double> omega;
    for (const auto& c : group.coordinates(seed)) omega.push_back(static_cast<long double>(c.get_d()));

    NumericLimit report;
    report.lambda = lyapunov_exact(theta).value;
    report.terms = n + 1;
    std::map<std::pair<std::size_t, Integer>, Dense> cache;
    Dense current = action(UnimodularMatrix::shift(theta.term(0)));
    std::vector<long double> sum(dim, 0.0L), half(dim, 0.0L);
    for (std::size_t j = 0; j <= n; ++j) {
        const Integer& next = theta.term(j + 1);
        auto key = std::make_pair(j % 2, next);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, action(convergent_step(j, next))).first;
        current = multiply(current, it->second);
        bool finite = true;
        for (std::size_t i = 0; i < dim; ++i) {
            long double s = 0;
            for (std::size_t k = 0; k < dim; ++k) s += current[i][k] * omega[k];
            sum[i] += s;
            finite = finite && std::isfinite(sum[i]);
        }
        if (!finite) {
            report.note = "summands overflow after " + std::to_string(j) + " steps: the action does not factor through finite data";
            return report;
        }
        if (j == n / 2) half = sum;
    }
    const long double half_n = static_cast<long double>(std::max<std::size_t>(n / 2, 1));
    report.value.resize(dim);
    long double scale = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        report.value[i] = sum[i] / (report.lambda * static_cast<long double>(n));
        report.gap = std::max(report.gap, std::fabs(report.value[i] - half[i] / (report.lambda * half_n)));
        scale = std::max(scale, std::fabs(report.value[i]));
    }
    report.converged = report.gap <= 1e-3L * scale;
    if (!report.converged) report.note = "averages at n/2 and n disagree";
    return report;
}

// Averages the current over the turn edges of theta's tree path, whose intervals are the
// consecutive convergent segments. The value sequence is detected periodic; the path depth
// doubles from `depth` up to `max_depth` until a period shows.
template <CosetFactoringGroup G>
LimitValue<typename G::value_type> limiting_via_current(const Current<G>& c, const PeriodicCF& theta, int depth = 400,
                                                        int max_depth = 6400) {
    using V = typename G::value_type;
    const QuadraticSurd point = theta.value();
    for (; depth <= max_depth; depth *= 2) {
        const auto paths = upsilon_paths([&point](const Point& r) { return compare(point, r); }, depth);
        if (paths.size() != 1) throw std::logic_error("an irrational point has exactly one path");
        std::vector<V> values;
        for (const auto& e : turn_edges(paths.front())) values.push_back(c(e));
        const std::size_t m = values.size();
        for (std::size_t period = 1; period <= m / 4; ++period) {
            bool periodic = true;
            for (std::size_t i = m / 2; i + period < m && periodic; ++i) periodic = c.group.equal(values[i], values[i + period]);
            if (!periodic) continue;
            V total = c.group.zero();
            for (std::size_t i = m - period; i < m; ++i) total = c.group.add(total, values[i]);
            const LyapunovExact lambda = lyapunov_exact(theta);
            LimitValue<V> out;
            const V value = c.group.scale(1 / (Rational(static_cast<long>(period)) * lambda.coefficient), total);
            if (!is_zero(c.group, value)) out.terms.emplace(lambda.unit, value);
            return out;
        }
    }
    throw std::runtime_error("no period found along the path up to the maximal depth");
}

}  // namespace pm
