#pragma once

#include "pm/farey.hpp"
#include "pm/hecke.hpp"
#include "pm/linalg.hpp"
#include "pm/matrix.hpp"
#include "pm/measure.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pm {

// Edge of the tree of PSL(2,Z) between the triangle g(inf, 0, 1) and its side {g inf, g 0}.
// Away edges point from the triangle to the side; the base vertex is the triangle (inf, 0, 1).
class TreeEdge {
public:
    static TreeEdge away(const UnimodularMatrix& g);
    static TreeEdge toward(const UnimodularMatrix& g);
    // The away edge whose interval is s.
    static TreeEdge of_segment(const Segment& s) { return away(segment_matrix(s)); }

    const UnimodularMatrix& element() const { return element_; }
    bool is_away() const { return away_; }
    TreeEdge reversed() const;
    // element = triangle * tau^slot with triangle the least of the three representatives.
    UnimodularMatrix triangle() const;
    int slot() const;
    // The boundary ends beyond the edge: (g inf, g 0) when away, the complement (g 0, g inf) otherwise.
    Segment interval() const;

    friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
    friend auto operator<=>(const TreeEdge& x, const TreeEdge& y) {
        if (auto c = x.element_ <=> y.element_; c != 0) return c;
        return x.away_ <=> y.away_;
    }

private:
    TreeEdge(UnimodularMatrix g, bool away) : element_(std::move(g)), away_(away) {}
    UnimodularMatrix element_;
    bool away_ = true;
};

std::string to_string(const TreeEdge& e);
nlohmann::json edge_json(const TreeEdge& e);

// Canonical representative of the triangle g(inf, 0, 1).
UnimodularMatrix triangle_key(const UnimodularMatrix& g);
// Triangles within `depth` steps of the base triangle, breadth first.
std::vector<UnimodularMatrix> tree_triangles(int depth);

template <ValueGroup G>
struct Current {
    G group;
    std::function<typename G::value_type(const TreeEdge&)> rule;

    typename G::value_type operator()(const TreeEdge& e) const { return rule(e); }
};

// c(e) = mu(V(e)).
template <ValueGroup G>
Current<G> current_from_measure(const PseudoMeasure<G>& mu) {
    return {mu.group(), [mu](const TreeEdge& e) {
                const Segment s = e.interval();
                return mu(s.from(), s.to());
            }};
}

// Antisymmetry and momentum conservation at every vertex within `depth` triangle steps.
template <ValueGroup G>
CheckReport current_validate(const Current<G>& c, int depth) {
    CheckReport report;
    const G& w = c.group;
    for (const auto& t : tree_triangles(depth)) {
        auto total = w.zero();
        for (int k = 0; k < 3; ++k) {
            UnimodularMatrix g = t;
            for (int i = 0; i < k; ++i) g = g * UnimodularMatrix::tau();
            const TreeEdge e = TreeEdge::away(g);
            const auto v = c(e);
            report.checked += 3;
            if (!is_zero(w, w.add(v, c(e.reversed())))) {
                report.fail("antisymmetry fails on " + to_string(e));
                return report;
            }
            // the side vertex has two edges out of it
            const TreeEdge across = TreeEdge::away(g * UnimodularMatrix::sigma());
            if (!is_zero(w, w.add(c(e.reversed()), c(across.reversed())))) {
                report.fail("conservation fails at the side of " + to_string(e));
                return report;
            }
            total = w.add(total, v);
        }
        if (!is_zero(w, total)) {
            report.fail("conservation fails at the triangle " + to_string(t));
            return report;
        }
    }
    return report;
}

// mu(s) = c(away edge of s); the current is validated to `depth` first.
template <ValueGroup G>
PseudoMeasure<G> measure_from_current(const Current<G>& c, int depth = 4) {
    CheckReport r = current_validate(c, depth);
    if (!r.passed) throw std::invalid_argument("invalid current: " + r.witness);
    return PseudoMeasure<G>(c.group, [c](const Segment& s) { return c(TreeEdge::of_segment(s)); });
}

// [{edge: {element, slot, dir}, value}] over the edges of tree_triangles(depth).
template <ValueGroup G>
nlohmann::json current_dump(const Current<G>& c, int depth) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : tree_triangles(depth)) {
        UnimodularMatrix g = t;
        for (int k = 0; k < 3; ++k, g = g * UnimodularMatrix::tau()) {
            for (const TreeEdge& e : {TreeEdge::away(g), TreeEdge::toward(g)})
                out.push_back({{"edge", edge_json(e)}, {"value", c.group.to_json(c(e))}});
        }
    }
    return out;
}

// Upper half-plane picture of the Farey edges of tree_triangles(depth), labelled by `label`.
std::string tessellation_svg(int depth, const std::function<std::string(const TreeEdge&)>& label);

// ---------------------------------------------------------------------------
// Boundary arcs. An arc is a primitive segment read as the positively oriented arc of P^1(R)
// from its first to its second end. Descendant arcs lie in one of the base arcs (inf, 0),
// (0, 1), (1, inf); every primitive arc is a descendant or the complement of one.

bool is_descendant(const Segment& arc);
std::vector<Segment> base_arcs();
// Children split at g(-1) for g = segment_matrix(arc).
std::pair<Segment, Segment> arc_children(const Segment& arc);
// Throws for a base arc.
Segment arc_parent(const Segment& arc);
int arc_depth(const Segment& arc);
// Descendant arcs of the given depth, left to right inside each base arc.
std::vector<Segment> arcs_at_depth(int depth);
// Closed containment of descendant arcs.
bool arc_contains(const Segment& outer, const Segment& inner);

// f = sum a_i chi_{I_i} on the disconnection space, kept in canonical form: disjoint descendant
// arcs, no zero coefficients, siblings with equal coefficients merged into their parent.
class LocallyConstantFunction {
public:
    LocallyConstantFunction() = default;
    static LocallyConstantFunction indicator(const Segment& arc, const Integer& coefficient = 1);
    static LocallyConstantFunction constant(const Integer& c);

    const std::map<Segment, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Value away from arc ends; x must not be an end of any term.
    Integer operator()(const Rational& x) const;

    // f o g, i.e. chi_I o g = chi_{g^{-1} I}.
    LocallyConstantFunction compose(const UnimodularMatrix& g) const;
    // Coefficients on arcs_at_depth(depth); throws if some term is deeper.
    std::vector<Integer> at_depth(int depth) const;
    // Splits every term into its descendants at depth `depth` without re-merging.
    std::map<Segment, Integer> refined(int depth) const;

    friend LocallyConstantFunction operator+(const LocallyConstantFunction& x, const LocallyConstantFunction& y);
    friend LocallyConstantFunction operator-(const LocallyConstantFunction& x, const LocallyConstantFunction& y);
    friend LocallyConstantFunction operator*(const Integer& c, const LocallyConstantFunction& x);
    friend bool operator==(const LocallyConstantFunction&, const LocallyConstantFunction&) = default;

    // Canonical form of an arbitrary combination of primitive arcs.
    static LocallyConstantFunction from_terms(const std::vector<std::pair<Segment, Integer>>& terms);

private:
    std::map<Segment, Integer> terms_;
};

std::string to_string(const LocallyConstantFunction& f);
nlohmann::json to_json(const LocallyConstantFunction& f);
LocallyConstantFunction lcf_from_json(const nlohmann::json& j);

// sum a_i mu(I_i).
template <ValueGroup G>
typename G::value_type integrate(const LocallyConstantFunction& f, const PseudoMeasure<G>& mu) {
    auto total = mu.group().zero();
    for (const auto& [arc, a] : f.terms()) total = mu.group().add(total, times(mu.group(), a, mu(arc.from(), arc.to())));
    return total;
}

// f + f o sigma = 0 and f + f o tau + f o tau^2 = 0.
CheckReport kernel_function_check(const LocallyConstantFunction& f);
// Integer basis of the kernel functions constant on the arcs of the given depth.
std::vector<LocallyConstantFunction> kernel_function_basis(int depth);

// from_seed(int f dmu) for a kernel function f and a modular mu.
template <ModularValueGroup G>
PseudoMeasure<G> measure_from_kernel_function(const LocallyConstantFunction& f, const PseudoMeasure<G>& mu) {
    CheckReport r = kernel_function_check(f);
    if (!r.passed) throw std::invalid_argument("not a kernel function: " + r.witness);
    return from_seed(mu.group(), integrate(f, mu));
}

struct DescendReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string witness;
};

// For modular mu: int f o g^{-1} dmu = g[int f dmu] for g = sigma, tau on the given functions,
// so that int (f + f o sigma) dmu = (1 + sigma) int f dmu and the integral descends to coinvariants.
template <ModularValueGroup G>
DescendReport descend_check(const PseudoMeasure<G>& mu, const std::vector<LocallyConstantFunction>& samples) {
    DescendReport report;
    const G& w = mu.group();
    const UnimodularMatrix s = UnimodularMatrix::sigma(), t = UnimodularMatrix::tau();
    for (const auto& f : samples) {
        const auto base = integrate(f, mu);
        for (const auto& g : {s, t, t * t}) {
            ++report.checked;
            if (!w.equal(integrate(f.compose(g.inverse()), mu), w.act(g, base))) {
                report.passed = false;
                report.witness = "intertwining fails for g = " + to_string(g) + " and f = " + to_string(f);
                return report;
            }
        }
        ++report.checked;
        const auto sigma_sum = integrate(f + f.compose(s), mu);
        if (!w.equal(sigma_sum, w.add(base, w.act(s, base)))) {
            report.passed = false;
            report.witness = "(1 + sigma) law fails for f = " + to_string(f);
            return report;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Paths from the base vertex toward a boundary point theta: sequences of nested descendant arcs,
// one per depth, each containing theta in the closed sense. `side(r)` is the sign of theta - r.

using PointSide = std::function<int(const Point&)>;

std::vector<std::vector<Segment>> upsilon_paths(const PointSide& side, int depth);

// Along a single path: the arcs at which the path turns, i.e. the next arc keeps the end with
// the larger denominator; their ends are consecutive convergents. Each is returned as the edge
// whose interval runs from the older convergent to the newer one.
std::vector<TreeEdge> turn_edges(const std::vector<Segment>& path);
// 0 when the next arc keeps the first end of the current one, 1 when it keeps the second.
std::vector<int> path_moves(const std::vector<Segment>& path);

}  // namespace pm
