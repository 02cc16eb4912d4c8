#pragma once

#include "pm/cosets.hpp"
#include "pm/farey.hpp"
#include "pm/linalg.hpp"
#include "pm/measure.hpp"
#include "pm/polynomial.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pm {

// Matrix of x -> g[x] in the coordinates of a linear value group.
template <class G>
    requires LinearGroup<G> && ModularValueGroup<G>
Matrix action_matrix(const G& group, const UnimodularMatrix& g) {
    const std::size_t n = group.dimension();
    std::vector<Vector> columns;
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n);
        e[j] = 1;
        columns.push_back(group.coordinates(group.act(g, group.from_coordinates(e))));
    }
    return Matrix::from_columns(columns, n);
}

// Simultaneous kernel of (1 + sigma), (1 + tau + tau^2) and (1 - (-id)).
template <class G>
    requires LinearGroup<G> && ModularValueGroup<G>
std::vector<typename G::value_type> seed_space(const G& group) {
    const std::size_t n = group.dimension();
    const Matrix id = Matrix::identity(n);
    const Matrix s = action_matrix(group, UnimodularMatrix::sigma());
    const Matrix t = action_matrix(group, UnimodularMatrix::tau());
    const Matrix e = action_matrix(group, UnimodularMatrix::minus_identity());
    const Matrix stacked = (id + s).stacked(id + t + t * t).stacked(id - e);
    std::vector<typename G::value_type> basis;
    for (const auto& v : nullspace(stacked)) basis.push_back(group.from_coordinates(v));
    return basis;
}

inline std::vector<HomogeneousPoly> seed_space(int weight) { return seed_space(PolyGroup{weight}); }

template <ModularValueGroup G>
bool is_seed(const G& group, const typename G::value_type& omega) {
    const auto s = UnimodularMatrix::sigma();
    const auto t = UnimodularMatrix::tau();
    const auto e = UnimodularMatrix::minus_identity();
    if (!is_zero(group, group.add(omega, group.act(s, omega)))) return false;
    if (!is_zero(group, group.add(group.add(omega, group.act(t, omega)), group.act(t * t, omega)))) return false;
    return group.equal(group.act(e, omega), omega);
}

// mu(g inf, g 0) = g[omega].
template <ModularValueGroup G>
PseudoMeasure<G> from_seed(const G& group, const typename G::value_type& omega) {
    if (!is_seed(group, omega)) throw std::invalid_argument("value is not in the seed kernel");
    return PseudoMeasure<G>(group, [group, omega](const Segment& s) { return group.act(segment_matrix(s), omega); });
}

template <ValueGroup G>
typename G::value_type seed_of(const PseudoMeasure<G>& mu) {
    return mu(Point::infinity(), Point(0));
}

// c_alpha(g) = mu(g alpha, alpha).
template <ValueGroup G>
std::function<typename G::value_type(const UnimodularMatrix&)> cocycle(const PseudoMeasure<G>& mu, const Point& alpha) {
    return [mu, alpha](const UnimodularMatrix& g) { return mu(g(alpha), alpha); };
}

// (a, b; 0, d) with ad = n, 1 <= b <= d.
std::vector<RationalMatrix> hecke_representatives(long n);

// (T mu)(a, b) = sum delta^{-1}[mu(delta a, delta b)].
template <RationalActionGroup G>
PseudoMeasure<G> hecke(const PseudoMeasure<G>& mu, const std::vector<RationalMatrix>& reps) {
    std::vector<RationalMatrix> inverses;
    for (const auto& d : reps) inverses.push_back(d.inverse());
    return PseudoMeasure<G>(mu.group(), [mu, reps, inverses](const Segment& s) {
        const G& group = mu.group();
        auto total = group.zero();
        for (std::size_t i = 0; i < reps.size(); ++i) {
            total = group.add(total, group.act_rational(inverses[i], mu(reps[i](s.from()), reps[i](s.to()))));
        }
        return total;
    });
}

template <RationalActionGroup G>
PseudoMeasure<G> hecke(const PseudoMeasure<G>& mu, long n) {
    return hecke(mu, hecke_representatives(n));
}

// Coordinates of v in the span of basis; throws if v is outside it.
template <class G>
    requires LinearGroup<G>
Vector basis_coordinates(const G& group, const std::vector<typename G::value_type>& basis, const typename G::value_type& v) {
    std::vector<Vector> columns;
    for (const auto& b : basis) columns.push_back(group.coordinates(b));
    auto x = solve(Matrix::from_columns(columns, group.dimension()), group.coordinates(v));
    if (!x) throw std::logic_error("value lies outside the spanned subspace");
    return *x;
}

// Columns: coordinates of (T_n mu_j)(inf, 0) in the basis.
template <class G>
    requires LinearGroup<G> && RationalActionGroup<G>
Matrix hecke_matrix(const G& group, const std::vector<typename G::value_type>& basis, long n) {
    std::vector<Vector> columns;
    const auto reps = hecke_representatives(n);
    for (const auto& omega : basis) {
        auto t = hecke(from_seed(group, omega), reps);
        columns.push_back(basis_coordinates(group, basis, seed_of(t)));
    }
    return Matrix::from_columns(columns, basis.size());
}

// sum of d^k over divisors d of n.
Integer divisor_sigma(long n, int k);

struct HeckeReport {
    long n = 1;
    int weight = 0;
    std::vector<HomogeneousPoly> basis;
    Matrix raw;
    bool eisenstein_is_eigenvector = false;
    std::optional<Rational> eisenstein_raw_eigenvalue;
    // normalized = factor * raw, with factor = sigma_{w+1}(n) / raw Eisenstein eigenvalue
    std::optional<Rational> factor;
    Matrix normalized;
    UniPoly normalized_charpoly;
    std::vector<RationalRoot> normalized_eigenvalues;
};

HeckeReport hecke_report(int weight, long n);
nlohmann::json to_json(const HeckeReport& r);

}  // namespace pm
