#include "pm/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace pm {

namespace {

const UnimodularMatrix& tau() {
    static const UnimodularMatrix t = UnimodularMatrix::tau();
    return t;
}

// End of an arc on the extended real line: inf is -inf as a first end and +inf as a second.
struct End {
    int infinite = 0;
    Rational value;
};

End first_end(const Segment& arc) { return arc.from().is_infinite() ? End{-1, 0} : End{0, arc.from().value()}; }
End second_end(const Segment& arc) { return arc.to().is_infinite() ? End{1, 0} : End{0, arc.to().value()}; }

bool less_equal(const End& x, const End& y) {
    if (x.infinite != 0 || y.infinite != 0) return x.infinite < y.infinite || (x.infinite == y.infinite);
    return x.value <= y.value;
}

Integer denominator(const Point& x) { return x.den(); }

void add_term(std::map<Segment, Integer>& terms, const Segment& arc, const Integer& a) {
    if (is_descendant(arc)) {
        terms[arc] += a;
        return;
    }
    const Segment complement = arc.reversed();
    if (!is_descendant(complement)) throw std::logic_error("arc is neither a descendant nor a complement: " + to_string(arc));
    for (const auto& b : base_arcs()) terms[b] += a;
    terms[complement] -= a;
}

std::map<Segment, Integer> canonicalize(std::map<Segment, Integer> terms) {
    // refine until the arcs are disjoint
    for (bool changed = true; changed;) {
        changed = false;
        for (auto outer = terms.begin(); outer != terms.end() && !changed; ++outer)
            for (auto inner = terms.begin(); inner != terms.end(); ++inner) {
                if (inner == outer || !arc_contains(outer->first, inner->first)) continue;
                const auto [left, right] = arc_children(outer->first);
                const Integer a = outer->second;
                terms.erase(outer);
                terms[left] += a;
                terms[right] += a;
                changed = true;
                break;
            }
    }
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    // merge equal siblings
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [arc, a] : terms) {
            if (arc_depth(arc) == 0) continue;
            const Segment parent = arc_parent(arc);
            const auto [left, right] = arc_children(parent);
            auto l = terms.find(left), r = terms.find(right);
            if (l == terms.end() || r == terms.end() || l->second != r->second) continue;
            const Integer value = l->second;
            terms.erase(l);
            terms.erase(right);
            terms[parent] += value;
            changed = true;
            break;
        }
    }
    return terms;
}

}  // namespace

TreeEdge TreeEdge::away(const UnimodularMatrix& g) {
    if (g.det() != 1) throw std::invalid_argument("tree edges are indexed by PSL(2,Z)");
    return {g.psl_canonical(), true};
}

TreeEdge TreeEdge::toward(const UnimodularMatrix& g) {
    TreeEdge e = away(g);
    e.away_ = false;
    return e;
}

TreeEdge TreeEdge::reversed() const { return {element_, !away_}; }

UnimodularMatrix triangle_key(const UnimodularMatrix& g) {
    UnimodularMatrix best = g.psl_canonical(), current = g;
    for (int k = 1; k < 3; ++k) {
        current = current * tau();
        best = std::min(best, current.psl_canonical());
    }
    return best;
}

UnimodularMatrix TreeEdge::triangle() const { return triangle_key(element_); }

int TreeEdge::slot() const {
    UnimodularMatrix g = triangle();
    for (int k = 0; k < 3; ++k, g = g * tau())
        if (g.psl_equal(element_)) return k;
    throw std::logic_error("edge is not on its own triangle");
}

Segment TreeEdge::interval() const {
    const Point inf = element_(Point::infinity()), zero = element_(Point(0));
    return away_ ? Segment(inf, zero) : Segment(zero, inf);
}

std::string to_string(const TreeEdge& e) { return std::string(e.is_away() ? "away " : "toward ") + to_string(e.element()); }

nlohmann::json edge_json(const TreeEdge& e) {
    const auto& g = e.element();
    return {{"element", {g.a().get_str(), g.b().get_str(), g.c().get_str(), g.d().get_str()}},
            {"slot", e.slot()},
            {"dir", e.is_away() ? "away" : "toward"}};
}

std::vector<UnimodularMatrix> tree_triangles(int depth) {
    std::vector<UnimodularMatrix> out;
    std::set<UnimodularMatrix> seen;
    std::deque<std::pair<UnimodularMatrix, int>> queue{{triangle_key(UnimodularMatrix::identity()), 0}};
    seen.insert(queue.front().first);
    while (!queue.empty()) {
        auto [t, d] = queue.front();
        queue.pop_front();
        out.push_back(t);
        if (d == depth) continue;
        UnimodularMatrix g = t;
        for (int k = 0; k < 3; ++k, g = g * tau()) {
            const UnimodularMatrix next = triangle_key(g * UnimodularMatrix::sigma());
            if (seen.insert(next).second) queue.push_back({next, d + 1});
        }
    }
    return out;
}

std::string tessellation_svg(int depth, const std::function<std::string(const TreeEdge&)>& label) {
    const double lo = -3, hi = 4, width = 1400, height = 700, base = 650;
    auto px = [&](double x) { return (x - lo) / (hi - lo) * width; };
    const double unit = width / (hi - lo);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<line x1=\"0\" y1=\"" << base << "\" x2=\"" << width << "\" y2=\"" << base << "\" stroke=\"black\"/>\n";
    std::set<std::pair<Point, Point>> drawn;
    for (const auto& t : tree_triangles(depth)) {
        UnimodularMatrix g = t;
        for (int k = 0; k < 3; ++k, g = g * tau()) {
            const TreeEdge e = TreeEdge::away(g);
            const Segment s = e.interval();
            const auto key = std::minmax(s.from(), s.to());
            if (!drawn.insert(key).second) continue;
            const std::string text = label(e);
            double tx = 0, ty = 0;
            if (s.from().is_infinite() || s.to().is_infinite()) {
                const double x = (s.from().is_infinite() ? s.to() : s.from()).value().get_d();
                if (x < lo || x > hi) continue;
                svg << "<line x1=\"" << px(x) << "\" y1=\"" << base << "\" x2=\"" << px(x) << "\" y2=\"0\" stroke=\"gray\"/>\n";
                tx = px(x) + 3;
                ty = 40;
            } else {
                const double a = s.from().value().get_d(), b = s.to().value().get_d();
                const double left = std::min(a, b), right = std::max(a, b);
                if (right < lo || left > hi) continue;
                const double r = (right - left) / 2 * unit;
                svg << "<path d=\"M " << px(left) << " " << base << " A " << r << " " << r << " 0 0 1 " << px(right) << " " << base
                    << "\" fill=\"none\" stroke=\"gray\"/>\n";
                tx = px((left + right) / 2);
                ty = base - r - 2;
            }
            if (!text.empty()) svg << "<text x=\"" << tx << "\" y=\"" << ty << "\" font-size=\"9\">" << text << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

bool is_descendant(const Segment& arc) {
    const Point& a = arc.from();
    const Point& b = arc.to();
    if (a.is_infinite()) return b.value() <= 0;
    if (b.is_infinite()) return a.value() >= 1;
    const Rational x = a.value(), y = b.value();
    if (!(x < y)) return false;
    return y <= 0 || (x >= 0 && y <= 1) || x >= 1;
}

std::vector<Segment> base_arcs() {
    return {Segment(Point::infinity(), Point(0)), Segment(Point(0), Point(1)), Segment(Point(1), Point::infinity())};
}

std::pair<Segment, Segment> arc_children(const Segment& arc) {
    const UnimodularMatrix g = segment_matrix(arc);
    const Point split = g(Point(-1));
    return {Segment(arc.from(), split), Segment(split, arc.to())};
}

bool arc_contains(const Segment& outer, const Segment& inner) {
    return less_equal(first_end(outer), first_end(inner)) && less_equal(second_end(inner), second_end(outer));
}

Segment arc_parent(const Segment& arc) {
    if (!is_descendant(arc)) throw std::invalid_argument("not a descendant arc");
    for (const auto& b : base_arcs())
        if (b == arc) throw std::invalid_argument("base arcs have no parent");
    const Point outer = segment_matrix(arc)(Point(1));
    for (const Segment& candidate : {Segment(arc.from(), outer), Segment(outer, arc.to())})
        if (is_descendant(candidate) && arc_contains(candidate, arc)) return candidate;
    throw std::logic_error("no parent found for " + to_string(arc));
}

int arc_depth(const Segment& arc) {
    int depth = 0;
    Segment current = arc;
    const auto bases = base_arcs();
    while (std::find(bases.begin(), bases.end(), current) == bases.end()) {
        current = arc_parent(current);
        ++depth;
    }
    return depth;
}

std::vector<Segment> arcs_at_depth(int depth) {
    std::vector<Segment> level = base_arcs();
    for (int d = 0; d < depth; ++d) {
        std::vector<Segment> next;
        for (const auto& a : level) {
            auto [l, r] = arc_children(a);
            next.push_back(l);
            next.push_back(r);
        }
        level = std::move(next);
    }
    return level;
}

LocallyConstantFunction LocallyConstantFunction::from_terms(const std::vector<std::pair<Segment, Integer>>& terms) {
    std::map<Segment, Integer> raw;
    for (const auto& [arc, a] : terms) {
        if (!is_primitive(arc.from(), arc.to())) throw std::invalid_argument("arc is not primitive: " + to_string(arc));
        add_term(raw, arc, a);
    }
    LocallyConstantFunction f;
    f.terms_ = canonicalize(std::move(raw));
    return f;
}

LocallyConstantFunction LocallyConstantFunction::indicator(const Segment& arc, const Integer& coefficient) {
    return from_terms({{arc, coefficient}});
}

LocallyConstantFunction LocallyConstantFunction::constant(const Integer& c) {
    std::vector<std::pair<Segment, Integer>> terms;
    for (const auto& b : base_arcs()) terms.emplace_back(b, c);
    return from_terms(terms);
}

Integer LocallyConstantFunction::operator()(const Rational& x) const {
    Integer total = 0;
    for (const auto& [arc, a] : terms_) {
        const End lo = first_end(arc), hi = second_end(arc), at{0, x};
        if (!arc.from().is_infinite() && arc.from().value() == x) throw std::domain_error("x is an arc end");
        if (!arc.to().is_infinite() && arc.to().value() == x) throw std::domain_error("x is an arc end");
        if (less_equal(lo, at) && less_equal(at, hi)) total += a;
    }
    return total;
}

LocallyConstantFunction LocallyConstantFunction::compose(const UnimodularMatrix& g) const {
    const UnimodularMatrix inv = g.inverse();
    std::vector<std::pair<Segment, Integer>> moved;
    for (const auto& [arc, a] : terms_) {
        const Segment image(inv(arc.from()), inv(arc.to()));
        // an orientation-reversing g turns the positive arc around
        moved.emplace_back(inv.det() == 1 ? image : image.reversed(), a);
    }
    return from_terms(moved);
}

std::map<Segment, Integer> LocallyConstantFunction::refined(int depth) const {
    std::map<Segment, Integer> out;
    for (const auto& [arc, a] : terms_) {
        const int d = arc_depth(arc);
        if (d > depth) throw std::invalid_argument("function is finer than the requested depth");
        std::vector<Segment> level{arc};
        for (int k = d; k < depth; ++k) {
            std::vector<Segment> next;
            for (const auto& s : level) {
                auto [l, r] = arc_children(s);
                next.push_back(l);
                next.push_back(r);
            }
            level = std::move(next);
        }
        for (const auto& s : level) out[s] += a;
    }
    return out;
}

std::vector<Integer> LocallyConstantFunction::at_depth(int depth) const {
    const auto fine = refined(depth);
    std::vector<Integer> out;
    for (const auto& s : arcs_at_depth(depth)) {
        auto it = fine.find(s);
        out.push_back(it == fine.end() ? Integer(0) : it->second);
    }
    return out;
}

LocallyConstantFunction operator+(const LocallyConstantFunction& x, const LocallyConstantFunction& y) {
    std::map<Segment, Integer> terms = x.terms_;
    for (const auto& [arc, a] : y.terms_) terms[arc] += a;
    LocallyConstantFunction f;
    f.terms_ = canonicalize(std::move(terms));
    return f;
}

LocallyConstantFunction operator*(const Integer& c, const LocallyConstantFunction& x) {
    if (c == 0) return {};
    LocallyConstantFunction f = x;
    for (auto& [arc, a] : f.terms_) a *= c;
    return f;
}

LocallyConstantFunction operator-(const LocallyConstantFunction& x, const LocallyConstantFunction& y) {
    return x + Integer(-1) * y;
}

std::string to_string(const LocallyConstantFunction& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [arc, a] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += a.get_str() + "*chi" + to_string(arc);
    }
    return out;
}

nlohmann::json to_json(const LocallyConstantFunction& f) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [arc, a] : f.terms())
        out.push_back({{"arc", {to_string(arc.from()), to_string(arc.to())}}, {"coefficient", a.get_str()}});
    return out;
}

LocallyConstantFunction lcf_from_json(const nlohmann::json& j) {
    std::vector<std::pair<Segment, Integer>> terms;
    for (const auto& t : j) {
        const Segment arc(parse_point(t.at("arc").at(0).get<std::string>()), parse_point(t.at("arc").at(1).get<std::string>()));
        const auto& c = t.at("coefficient");
        terms.emplace_back(arc, c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long>()));
    }
    return LocallyConstantFunction::from_terms(terms);
}

CheckReport kernel_function_check(const LocallyConstantFunction& f) {
    CheckReport report;
    const UnimodularMatrix s = UnimodularMatrix::sigma(), t = tau();
    report.checked = 2;
    const auto sigma_sum = f + f.compose(s);
    if (!sigma_sum.is_zero()) {
        report.fail("f + f o sigma = " + to_string(sigma_sum));
        return report;
    }
    const auto tau_sum = f + f.compose(t) + f.compose(t * t);
    if (!tau_sum.is_zero()) report.fail("f + f o tau + f o tau^2 = " + to_string(tau_sum));
    return report;
}

std::vector<LocallyConstantFunction> kernel_function_basis(int depth) {
    const auto arcs = arcs_at_depth(depth);
    const int fine = depth + 2;
    const UnimodularMatrix s = UnimodularMatrix::sigma(), t = tau();
    std::vector<Vector> columns;
    for (const auto& a : arcs) {
        const auto f = LocallyConstantFunction::indicator(a);
        Vector column;
        for (const auto& image : {f + f.compose(s), f + f.compose(t) + f.compose(t * t)})
            for (const auto& c : image.at_depth(fine)) column.emplace_back(c);
        columns.push_back(std::move(column));
    }
    const Matrix m = Matrix::from_columns(columns, columns.front().size());
    std::vector<LocallyConstantFunction> out;
    for (const auto& v : nullspace(m)) {
        Integer common = 1;
        for (const auto& x : v) common = lcm(common, Integer(x.get_den()));
        std::vector<std::pair<Segment, Integer>> terms;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const Rational scaled = v[i] * common;
            if (scaled != 0) terms.emplace_back(arcs[i], scaled.get_num());
        }
        out.push_back(LocallyConstantFunction::from_terms(terms));
    }
    return out;
}

std::vector<std::vector<Segment>> upsilon_paths(const PointSide& side, int depth) {
    auto holds = [&side](const Segment& arc) {
        const bool after_start = arc.from().is_infinite() || side(arc.from()) >= 0;
        const bool before_end = arc.to().is_infinite() || side(arc.to()) <= 0;
        return after_start && before_end;
    };
    std::vector<std::vector<Segment>> paths;
    for (const auto& b : base_arcs())
        if (holds(b)) paths.push_back({b});
    for (int d = 0; d < depth; ++d) {
        std::vector<std::vector<Segment>> next;
        for (const auto& p : paths) {
            auto [l, r] = arc_children(p.back());
            for (const Segment& c : {l, r})
                if (holds(c)) {
                    next.push_back(p);
                    next.back().push_back(c);
                }
        }
        paths = std::move(next);
    }
    return paths;
}

std::vector<int> path_moves(const std::vector<Segment>& path) {
    std::vector<int> out;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) out.push_back(path[j + 1].from() == path[j].from() ? 0 : 1);
    return out;
}

std::vector<TreeEdge> turn_edges(const std::vector<Segment>& path) {
    std::vector<TreeEdge> out;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        const Segment& arc = path[j];
        const bool keeps_first = path[j + 1].from() == arc.from();
        const Point& kept = keeps_first ? arc.from() : arc.to();
        const Point& dropped = keeps_first ? arc.to() : arc.from();
        if (!(denominator(kept) > denominator(dropped))) continue;
        // the dropped end is the older convergent
        const UnimodularMatrix g = segment_matrix(arc);
        out.push_back(arc.from() == dropped ? TreeEdge::away(g) : TreeEdge::toward(g));
    }
    return out;
}

}  // namespace pm
