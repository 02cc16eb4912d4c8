#pragma once

#include "pm/linalg.hpp"
#include "pm/matrix.hpp"
#include "pm/measure.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pm {

// Finite-index subgroup of PSL(2,Z), given by a membership test invariant under g -> -g.
struct Subgroup {
    std::string name;
    std::function<bool(const UnimodularMatrix&)> contains;

    static Subgroup full();
    static Subgroup gamma0(long n);
    static Subgroup gamma_principal(long n);
};

// Right cosets Gamma \ PSL(2,Z) with representatives h_s; h_0 = identity.
class CosetTable {
public:
    explicit CosetTable(Subgroup group, std::size_t max_index = 5000);

    const Subgroup& group() const { return group_; }
    std::size_t size() const { return reps_.size(); }
    const UnimodularMatrix& representative(std::size_t s) const { return reps_.at(s); }
    // Coset index of Gamma g.
    std::size_t coset_of(const UnimodularMatrix& g) const;
    // (s', gamma) with h_s g = gamma h_{s'}.
    std::pair<std::size_t, UnimodularMatrix> right_multiply(std::size_t s, const UnimodularMatrix& g) const;
    // Permutation s -> s' of right multiplication by sigma and tau.
    const std::vector<std::size_t>& sigma_perm() const { return sigma_; }
    const std::vector<std::size_t>& tau_perm() const { return tau_; }

private:
    Subgroup group_;
    std::vector<UnimodularMatrix> reps_;
    std::vector<std::size_t> sigma_;
    std::vector<std::size_t> tau_;
};

using CosetTablePtr = std::shared_ptr<const CosetTable>;

// Hom_Gamma(PSL(2,Z), W) stored as one base value per coset: phi[s] = phi(h_s).
template <ModularValueGroup G>
struct InducedGroup {
    using base_value = typename G::value_type;
    using value_type = std::vector<base_value>;

    G base;
    CosetTablePtr cosets;

    value_type zero() const { return value_type(cosets->size(), base.zero()); }
    value_type add(const value_type& x, const value_type& y) const {
        value_type out(x.size(), base.zero());
        for (std::size_t s = 0; s < x.size(); ++s) out[s] = base.add(x[s], y[s]);
        return out;
    }
    value_type negate(const value_type& x) const {
        value_type out;
        for (const auto& v : x) out.push_back(base.negate(v));
        return out;
    }
    bool equal(const value_type& x, const value_type& y) const {
        for (std::size_t s = 0; s < x.size(); ++s)
            if (!base.equal(x[s], y[s])) return false;
        return true;
    }
    // (g phi)(h_s) = phi(h_s g) = gamma phi(h_{s'}).
    value_type act(const UnimodularMatrix& g, const value_type& x) const {
        value_type out(x.size(), base.zero());
        for (std::size_t s = 0; s < x.size(); ++s) {
            auto [target, gamma] = cosets->right_multiply(s, g);
            out[s] = base.act(gamma, x[target]);
        }
        return out;
    }
    json to_json(const value_type& x) const {
        json out = json::array();
        for (const auto& v : x) out.push_back(base.to_json(v));
        return out;
    }
    value_type scale(const Rational& c, const value_type& x) const
        requires RationalScalarGroup<G>
    {
        value_type out;
        for (const auto& v : x) out.push_back(base.scale(c, v));
        return out;
    }
    std::size_t dimension() const
        requires LinearGroup<G>
    {
        return cosets->size() * base.dimension();
    }
    Vector coordinates(const value_type& x) const
        requires LinearGroup<G>
    {
        Vector out;
        for (const auto& v : x) {
            Vector part = base.coordinates(v);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    value_type from_coordinates(const Vector& v) const
        requires LinearGroup<G>
    {
        const std::size_t d = base.dimension();
        value_type out;
        for (std::size_t s = 0; s < cosets->size(); ++s) out.push_back(base.from_coordinates(Vector(v.begin() + s * d, v.begin() + (s + 1) * d)));
        return out;
    }
};

// Q[Gamma \ PSL(2,Z)] with the right-multiplication permutation action.
using PermutationGroup = InducedGroup<RationalGroup>;
inline PermutationGroup permutation_module(CosetTablePtr cosets) { return {RationalGroup{}, std::move(cosets)}; }

// mu^(a, b)[s] = mu(h_s a, h_s b).
template <ModularValueGroup G>
PseudoMeasure<InducedGroup<G>> induce(const PseudoMeasure<G>& mu, CosetTablePtr cosets) {
    InducedGroup<G> group{mu.group(), cosets};
    return PseudoMeasure<InducedGroup<G>>(group, [mu, cosets](const Segment& seg) {
        typename InducedGroup<G>::value_type out;
        for (std::size_t s = 0; s < cosets->size(); ++s) {
            out.push_back(mu(cosets->representative(s)(seg.from()), cosets->representative(s)(seg.to())));
        }
        return out;
    });
}

// Component at the identity coset.
template <ModularValueGroup G>
PseudoMeasure<G> restrict_measure(const PseudoMeasure<InducedGroup<G>>& mu) {
    return PseudoMeasure<G>(mu.group().base, [mu](const Segment& s) { return mu.on_segment(s).front(); });
}

}  // namespace pm
