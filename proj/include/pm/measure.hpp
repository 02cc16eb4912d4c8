#pragma once

#include "pm/arith.hpp"
#include "pm/farey.hpp"
#include "pm/matrix.hpp"

#include <json.hpp>

#include <array>
#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pm {

using json = nlohmann::json;

template <class G>
concept ValueGroup = requires(const G& g, const typename G::value_type& x, const typename G::value_type& y) {
    { g.zero() } -> std::convertible_to<typename G::value_type>;
    { g.add(x, y) } -> std::convertible_to<typename G::value_type>;
    { g.negate(x) } -> std::convertible_to<typename G::value_type>;
    { g.equal(x, y) } -> std::convertible_to<bool>;
    { g.to_json(x) } -> std::convertible_to<json>;
};

// Left action of PSL(2,Z) on values.
template <class G>
concept ModularValueGroup = ValueGroup<G> && requires(const G& g, const UnimodularMatrix& m, const typename G::value_type& x) {
    { g.act(m, x) } -> std::convertible_to<typename G::value_type>;
};

// Left action of GL+(2,Q), needed for Hecke operators.
template <class G>
concept RationalActionGroup =
    ModularValueGroup<G> && requires(const G& g, const RationalMatrix& m, const typename G::value_type& x) {
        { g.act_rational(m, x) } -> std::convertible_to<typename G::value_type>;
    };

// Finite-dimensional Q-vector space with explicit coordinates.
template <class G>
concept LinearGroup = ValueGroup<G> && requires(const G& g, const typename G::value_type& x, const std::vector<Rational>& v) {
    { g.dimension() } -> std::convertible_to<std::size_t>;
    { g.coordinates(x) } -> std::convertible_to<std::vector<Rational>>;
    { g.from_coordinates(v) } -> std::convertible_to<typename G::value_type>;
};

template <class G>
concept RationalScalarGroup = ValueGroup<G> && requires(const G& g, const Rational& c, const typename G::value_type& x) {
    { g.scale(c, x) } -> std::convertible_to<typename G::value_type>;
};

template <ValueGroup G>
typename G::value_type subtract(const G& g, const typename G::value_type& x, const typename G::value_type& y) {
    return g.add(x, g.negate(y));
}

// n * x by doubling.
template <ValueGroup G>
typename G::value_type times(const G& g, const Integer& n, const typename G::value_type& x) {
    typename G::value_type result = g.zero();
    typename G::value_type power = n < 0 ? g.negate(x) : x;
    Integer k = abs(n);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = g.add(result, power);
        k >>= 1;
        if (k > 0) power = g.add(power, power);
    }
    return result;
}

template <ValueGroup G>
bool is_zero(const G& g, const typename G::value_type& x) {
    return g.equal(x, g.zero());
}

// ---------------------------------------------------------------------------
// Scalar value groups with trivial action.

struct IntegerGroup {
    using value_type = Integer;
    Integer zero() const { return 0; }
    Integer add(const Integer& x, const Integer& y) const { return x + y; }
    Integer negate(const Integer& x) const { return -x; }
    bool equal(const Integer& x, const Integer& y) const { return x == y; }
    Integer act(const UnimodularMatrix&, const Integer& x) const { return x; }
    json to_json(const Integer& x) const { return x.get_str(); }
};

struct RationalGroup {
    using value_type = Rational;
    Rational zero() const { return 0; }
    Rational add(const Rational& x, const Rational& y) const { return x + y; }
    Rational negate(const Rational& x) const { return -x; }
    bool equal(const Rational& x, const Rational& y) const { return x == y; }
    Rational scale(const Rational& c, const Rational& x) const { return c * x; }
    Rational act(const UnimodularMatrix&, const Rational& x) const { return x; }
    Rational act_rational(const RationalMatrix&, const Rational& x) const { return x; }
    json to_json(const Rational& x) const { return to_string(x); }
    std::size_t dimension() const { return 1; }
    std::vector<Rational> coordinates(const Rational& x) const { return {x}; }
    Rational from_coordinates(const std::vector<Rational>& v) const { return v.at(0); }
};

// ---------------------------------------------------------------------------
// Z[P^1(Q)]_0: finite integer combinations of points with coefficient sum zero.

using UniversalValue = std::map<Point, Integer>;

struct UniversalGroup {
    using value_type = UniversalValue;
    // Permutation action g(nu(a)) = nu(g a); when false the action is trivial.
    bool permutation_action = true;

    UniversalValue zero() const { return {}; }
    UniversalValue add(const UniversalValue& x, const UniversalValue& y) const;
    UniversalValue negate(const UniversalValue& x) const;
    bool equal(const UniversalValue& x, const UniversalValue& y) const { return x == y; }
    UniversalValue act(const UnimodularMatrix& g, const UniversalValue& x) const;
    UniversalValue act_rational(const RationalMatrix& g, const UniversalValue& x) const;
    json to_json(const UniversalValue& x) const;

    static UniversalValue generator(const Point& a) { return {{a, Integer(1)}}; }
    static Integer augmentation(const UniversalValue& x);
};

// ---------------------------------------------------------------------------

struct CheckReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string witness;

    void fail(std::string why) {
        if (passed) witness = std::move(why);
        passed = false;
    }
};

// Farey triangles used by depth-bounded checks: every triangle within `depth` tree steps of
// (inf, 0, 1), every triangle in [0,1] whose vertices have denominator <= max_den, and the
// translates of the latter by -1 and +1. Each is returned as its positively ordered loop.
std::vector<std::array<Point, 3>> test_triangles(int depth, int max_den);

template <ValueGroup G>
struct PreMeasure {
    G group;
    std::function<typename G::value_type(const Segment&)> rule;
};

// Checks antisymmetry and the triangle relation on test_triangles(depth, max_den).
template <ValueGroup G>
CheckReport validate_premeasure(const PreMeasure<G>& m, int depth, int max_den = 50) {
    CheckReport report;
    for (const auto& t : test_triangles(depth, max_den)) {
        auto total = m.group.zero();
        for (int i = 0; i < 3; ++i) {
            Segment s(t[i], t[(i + 1) % 3]);
            auto v = m.rule(s);
            auto back = m.rule(s.reversed());
            ++report.checked;
            if (!m.group.equal(m.group.add(v, back), m.group.zero())) {
                report.fail("antisymmetry fails on " + to_string(s));
                return report;
            }
            total = m.group.add(total, v);
        }
        if (!m.group.equal(total, m.group.zero())) {
            report.fail("triangle relation fails on (" + to_string(t[0]) + ", " + to_string(t[1]) + ", " + to_string(t[2]) + ")");
            return report;
        }
    }
    return report;
}

// Thread-safe memo table; reads proceed in parallel.
template <class K, class V>
class MemoTable {
public:
    std::optional<V> find(const K& key) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(key);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }
    void insert(const K& key, const V& value) {
        std::unique_lock lock(mutex_);
        table_.emplace(key, value);
    }
    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<K, V> table_;
};

// A pseudo-measure given intensionally by its values on primitive segments and extended
// additively along chains. Copies share the rule and the memo tables.
template <ValueGroup G>
class PseudoMeasure {
public:
    using value_type = typename G::value_type;
    using Rule = std::function<value_type(const Segment&)>;

    PseudoMeasure(G group, Rule rule) : impl_(std::make_shared<Impl>(std::move(group), std::move(rule))) {}

    // Validates the pre-measure before accepting it.
    static PseudoMeasure extend(const PreMeasure<G>& pre, int depth = 6, int max_den = 50) {
        CheckReport r = validate_premeasure(pre, depth, max_den);
        if (!r.passed) throw std::invalid_argument("pre-measure rejected: " + r.witness);
        return PseudoMeasure(pre.group, pre.rule);
    }

    const G& group() const { return impl_->group; }
    PreMeasure<G> premeasure() const {
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
        value_type total = group().zero();
        for (const Segment& s : chain) total = group().add(total, on_segment(s));
        return total;
    }

    value_type operator()(const Point& a, const Point& b) const {
        if (a == b) return group().zero();
        auto key = std::make_pair(a, b);
        if (auto hit = impl_->pairs.find(key)) return *hit;
        value_type v = on_chain(primitive_chain(a, b));
        impl_->pairs.insert(key, v);
        return v;
    }

private:
    struct Impl {
        Impl(G g, Rule r) : group(std::move(g)), rule(std::move(r)) {}
        G group;
        Rule rule;
        MemoTable<Segment, value_type> segments;
        MemoTable<std::pair<Point, Point>, value_type> pairs;
    };
    std::shared_ptr<Impl> impl_;
};

template <ValueGroup G>
typename G::value_type evaluate(const PseudoMeasure<G>& mu, const Point& a, const Point& b) {
    return mu(a, b);
}

template <ValueGroup G>
PseudoMeasure<G> zero_measure(G group) {
    auto z = group.zero();
    return PseudoMeasure<G>(group, [z](const Segment&) { return z; });
}

template <ValueGroup G>
PseudoMeasure<G> operator+(const PseudoMeasure<G>& x, const PseudoMeasure<G>& y) {
    return PseudoMeasure<G>(x.group(), [x, y](const Segment& s) { return x.group().add(x.on_segment(s), y.on_segment(s)); });
}

template <ValueGroup G>
PseudoMeasure<G> operator-(const PseudoMeasure<G>& x) {
    return PseudoMeasure<G>(x.group(), [x](const Segment& s) { return x.group().negate(x.on_segment(s)); });
}

template <ValueGroup G>
PseudoMeasure<G> operator-(const PseudoMeasure<G>& x, const PseudoMeasure<G>& y) {
    return x + (-y);
}

template <RationalScalarGroup G>
PseudoMeasure<G> scale(const Rational& c, const PseudoMeasure<G>& x) {
    return PseudoMeasure<G>(x.group(), [c, x](const Segment& s) { return x.group().scale(c, x.on_segment(s)); });
}

// (mu g)(a, b) = mu(g a, g b).
template <ValueGroup G>
PseudoMeasure<G> right_action(const PseudoMeasure<G>& mu, const RationalMatrix& g) {
    return PseudoMeasure<G>(mu.group(), [mu, g](const Segment& s) { return mu(g(s.from()), g(s.to())); });
}

inline RationalMatrix reflection() { return RationalMatrix(-1, 0, 0, 1); }

// Image under z -> -z.
template <ValueGroup G>
PseudoMeasure<G> involution_image(const PseudoMeasure<G>& mu) {
    return right_action(mu, reflection());
}

// Returns (even part, odd part) with mu = even + odd.
template <RationalScalarGroup G>
std::pair<PseudoMeasure<G>, PseudoMeasure<G>> parity_parts(const PseudoMeasure<G>& mu) {
    auto flipped = involution_image(mu);
    Rational half(1, 2);
    return {scale(half, mu + flipped), scale(half, mu - flipped)};
}

PseudoMeasure<UniversalGroup> universal_measure(UniversalGroup group = {});

// The homomorphism w with mu = w o mu^U: w(sum m_i nu(a_i)) = sum m_i mu(inf, a_i).
template <ValueGroup G>
std::function<typename G::value_type(const UniversalValue&)> universal_factor(const PseudoMeasure<G>& mu) {
    return [mu](const UniversalValue& x) {
        auto total = mu.group().zero();
        for (const auto& [point, m] : x) {
            total = mu.group().add(total, times(mu.group(), m, mu(Point::infinity(), point)));
        }
        return total;
    };
}

// mu(g a, g b) = g[mu(a, b)] on the sides of test_triangles(depth, max_den).
template <ModularValueGroup G>
CheckReport modularity_check(const PseudoMeasure<G>& mu, const std::vector<UnimodularMatrix>& generators, int depth,
                             int max_den = 20) {
    CheckReport report;
    for (const auto& t : test_triangles(depth, max_den)) {
        for (int i = 0; i < 3; ++i) {
            Segment s(t[i], t[(i + 1) % 3]);
            auto v = mu.on_segment(s);
            for (const auto& g : generators) {
                ++report.checked;
                if (!mu.group().equal(mu.on_segment(image(g, s)), mu.group().act(g, v))) {
                    report.fail("modularity fails for g = " + to_string(g) + " on " + to_string(s));
                    return report;
                }
            }
        }
    }
    return report;
}

// JSON fixture: [{segment: [from, to], value: ...}].
template <ValueGroup G>
json fixture_json(const PseudoMeasure<G>& mu, const std::vector<Segment>& segments) {
    json out = json::array();
    for (const auto& s : segments) {
        out.push_back({{"segment", {to_string(s.from()), to_string(s.to())}}, {"value", mu.group().to_json(mu.on_segment(s))}});
    }
    return out;
}

}  // namespace pm
