#pragma once

#include "pm/dedekind.hpp"
#include "pm/farey.hpp"
#include "pm/free_group.hpp"
#include "pm/measure.hpp"
#include "pm/step_integral.hpp"
#include "pm/tensor.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pm {

template <class G>
concept NCGroup = requires(const G& g, const typename G::value_type& x, const typename G::value_type& y) {
    { g.one() } -> std::convertible_to<typename G::value_type>;
    { g.mul(x, y) } -> std::convertible_to<typename G::value_type>;
    { g.inverse(x) } -> std::convertible_to<typename G::value_type>;
    { g.equal(x, y) } -> std::convertible_to<bool>;
    { g.to_json(x) } -> std::convertible_to<json>;
};

template <class G>
concept ModularNCGroup = NCGroup<G> && requires(const G& g, const UnimodularMatrix& m, const typename G::value_type& x) {
    { g.act(m, x) } -> std::convertible_to<typename G::value_type>;
};

// An abelian group written multiplicatively.
template <ValueGroup G>
struct AbelianAsNC {
    using value_type = typename G::value_type;
    G base;
    value_type one() const { return base.zero(); }
    value_type mul(const value_type& x, const value_type& y) const { return base.add(x, y); }
    value_type inverse(const value_type& x) const { return base.negate(x); }
    bool equal(const value_type& x, const value_type& y) const { return base.equal(x, y); }
    value_type act(const UnimodularMatrix& g, const value_type& x) const
        requires ModularValueGroup<G>
    {
        return base.act(g, x);
    }
    json to_json(const value_type& x) const { return base.to_json(x); }
};

// The opposite group: x * y is y x.
template <NCGroup G>
struct Opposite {
    using value_type = typename G::value_type;
    G base;
    value_type one() const { return base.one(); }
    value_type mul(const value_type& x, const value_type& y) const { return base.mul(y, x); }
    value_type inverse(const value_type& x) const { return base.inverse(x); }
    bool equal(const value_type& x, const value_type& y) const { return base.equal(x, y); }
    json to_json(const value_type& x) const { return base.to_json(x); }
};

template <NCGroup G>
struct NCPreMeasure {
    G group;
    std::function<typename G::value_type(const Segment&)> rule;
};

// J(s) J(reversed s) = 1 and the loop product over every test triangle is 1.
template <NCGroup G>
CheckReport nc_validate(const NCPreMeasure<G>& m, int depth, int max_den = 30) {
    CheckReport report;
    for (const auto& t : test_triangles(depth, max_den)) {
        auto product = m.group.one();
        for (int i = 0; i < 3; ++i) {
            const Segment s(t[i], t[(i + 1) % 3]);
            const auto v = m.rule(s);
            ++report.checked;
            if (!m.group.equal(m.group.mul(v, m.rule(s.reversed())), m.group.one())) {
                report.fail("inverse relation fails on " + to_string(s));
                return report;
            }
            product = m.group.mul(v, product);
        }
        if (!m.group.equal(product, m.group.one())) {
            report.fail("loop product is not 1 on (" + to_string(t[0]) + ", " + to_string(t[1]) + ", " + to_string(t[2]) + ")");
            return report;
        }
    }
    return report;
}

// Values on primitive segments, extended to any pair along a primitive chain. The product is
// ordered right to left: the first segment of the chain is the rightmost factor.
template <NCGroup G>
class NCPseudoMeasure {
public:
    using value_type = typename G::value_type;
    using Rule = std::function<value_type(const Segment&)>;

    NCPseudoMeasure(G group, Rule rule) : impl_(std::make_shared<Impl>(std::move(group), std::move(rule))) {}

    static NCPseudoMeasure extend(const NCPreMeasure<G>& pre, int depth = 4, int max_den = 30) {
        CheckReport r = nc_validate(pre, depth, max_den);
        if (!r.passed) throw std::invalid_argument("pre-measure rejected: " + r.witness);
        return NCPseudoMeasure(pre.group, pre.rule);
    }

    const G& group() const { return impl_->group; }
    NCPreMeasure<G> premeasure() const {
        auto self = *this;
        return {group(), [self](const Segment& s) { return self.on_segment(s); }};
    }

    value_type on_segment(const Segment& s) const {
        if (auto hit = impl_->segments.find(s)) return *hit;
        value_type v = impl_->rule(s);
        impl_->segments.insert(s, v);
        return v;
    }

    value_type on_chain(const Chain& chain) const {
        value_type total = group().one();
        for (const Segment& s : chain) total = group().mul(on_segment(s), total);
        return total;
    }

    // J from a to b.
    value_type operator()(const Point& a, const Point& b) const {
        if (a == b) return group().one();
        return on_chain(primitive_chain(a, b));
    }

private:
    struct Impl {
        Impl(G g, Rule r) : group(std::move(g)), rule(std::move(r)) {}
        G group;
        Rule rule;
        MemoTable<Segment, value_type> segments;
    };
    std::shared_ptr<Impl> impl_;
};

template <NCGroup G>
typename G::value_type nc_evaluate(const NCPseudoMeasure<G>& j, const Point& a, const Point& b) {
    return j(a, b);
}

// (alpha, beta) -> <beta><alpha>^{-1}.
inline NCPseudoMeasure<FreeGroup> nc_universal_measure(FreeGroup group = {}) {
    return NCPseudoMeasure<FreeGroup>(group, [](const Segment& s) {
        return FreeGroupWord::generator(s.to()) * FreeGroupWord::generator(s.from()).inverse();
    });
}

template <ValueGroup G>
NCPseudoMeasure<AbelianAsNC<G>> nc_from_commutative(const PseudoMeasure<G>& mu) {
    return NCPseudoMeasure<AbelianAsNC<G>>({mu.group()}, [mu](const Segment& s) { return mu.on_segment(s); });
}

// s -> J(s)^{-1} in the opposite group.
template <NCGroup G>
NCPseudoMeasure<Opposite<G>> nc_inverse_measure(const NCPseudoMeasure<G>& j) {
    return NCPseudoMeasure<Opposite<G>>({j.group()}, [j](const Segment& s) { return j.group().inverse(j.on_segment(s)); });
}

template <NCGroup G>
using NCReciprocityFunction = std::function<typename G::value_type(const Integer&, const Integer&)>;

// R(p + q, q) R(p, p + q) = R(p, q) for coprime p, q >= 1 with p + q <= max_sum.
template <NCGroup G>
CheckReport nc_reciprocity_validate(const G& group, const NCReciprocityFunction<G>& r, long max_sum) {
    CheckReport report;
    for (long p = 1; p < max_sum; ++p)
        for (long q = 1; p + q <= max_sum; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const Integer P(p), Q(q);
            ++report.checked;
            if (!group.equal(group.mul(r(P + Q, Q), r(P, P + Q)), r(P, Q))) {
                report.fail("reciprocity fails at (" + std::to_string(p) + ", " + std::to_string(q) + ")");
                return report;
            }
        }
    return report;
}

// R_n(p, q) = J on the unit segment [a/p, b/q] translated by n.
template <NCGroup G>
NCReciprocityFunction<G> nc_reciprocity_from_measure(const NCPseudoMeasure<G>& j, const Integer& n) {
    return [j, n](const Integer& p, const Integer& q) {
        const Segment s = unit_segment(p, q);
        return j.on_segment(image(UnimodularMatrix::shift(n), s));
    };
}

// sigma[u] u = 1, tau^2[u] tau[u] u = 1 and (-id)[u] = u.
template <ModularNCGroup G>
CheckReport nc_seed_check(const G& group, const typename G::value_type& u) {
    CheckReport report;
    const auto s = UnimodularMatrix::sigma(), t = UnimodularMatrix::tau();
    report.checked = 3;
    if (!group.equal(group.mul(group.act(s, u), u), group.one())) report.fail("sigma[u] u != 1");
    else if (!group.equal(group.mul(group.act(t * t, u), group.mul(group.act(t, u), u)), group.one()))
        report.fail("tau^2[u] tau[u] u != 1");
    else if (!group.equal(group.act(UnimodularMatrix::minus_identity(), u), u)) report.fail("u is not fixed by -id");
    return report;
}

// J(g inf, g 0) = g[u].
template <ModularNCGroup G>
NCPseudoMeasure<G> nc_from_seed(const G& group, const typename G::value_type& u) {
    CheckReport r = nc_seed_check(group, u);
    if (!r.passed) throw std::invalid_argument("not a seed: " + r.witness);
    return NCPseudoMeasure<G>(group, [group, u](const Segment& s) { return group.act(segment_matrix(s), u); });
}

template <ModularNCGroup G>
CheckReport nc_modularity_check(const NCPseudoMeasure<G>& j, const std::vector<UnimodularMatrix>& generators, int depth,
                                int max_den = 20) {
    CheckReport report;
    for (const auto& t : test_triangles(depth, max_den))
        for (int i = 0; i < 3; ++i) {
            const Segment s(t[i], t[(i + 1) % 3]);
            for (const auto& g : generators) {
                ++report.checked;
                if (!j.group().equal(j.on_segment(image(g, s)), j.group().act(g, j.on_segment(s)))) {
                    report.fail("modularity fails for g = " + to_string(g) + " on " + to_string(s));
                    return report;
                }
            }
        }
    return report;
}

// c_alpha(g) = J from g alpha to alpha.
template <NCGroup G>
std::function<typename G::value_type(const UnimodularMatrix&)> nc_cocycle(const NCPseudoMeasure<G>& j, const Point& alpha) {
    return [j, alpha](const UnimodularMatrix& g) { return j(g(alpha), alpha); };
}

// J from a to b is F(b) F(a)^{-1}, F(x) the series of iterated integrals from below the supports
// up to x; the point inf counts as -inf, so F(inf) = 1.
NCPseudoMeasure<TensorGroup> iterated_measure(const std::vector<StepForm>& forms, std::size_t order);

}  // namespace pm
