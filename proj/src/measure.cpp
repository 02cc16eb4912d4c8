#include "pm/measure.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace pm {

UniversalValue UniversalGroup::add(const UniversalValue& x, const UniversalValue& y) const {
    UniversalValue out = x;
    for (const auto& [p, m] : y) {
        auto [it, fresh] = out.emplace(p, m);
        if (!fresh) {
            it->second += m;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

UniversalValue UniversalGroup::negate(const UniversalValue& x) const {
    UniversalValue out;
    for (const auto& [p, m] : x) out.emplace(p, -m);
    return out;
}

UniversalValue UniversalGroup::act(const UnimodularMatrix& g, const UniversalValue& x) const {
    if (!permutation_action) return x;
    UniversalValue out;
    for (const auto& [p, m] : x) out.emplace(g(p), m);
    return out;
}

UniversalValue UniversalGroup::act_rational(const RationalMatrix& g, const UniversalValue& x) const {
    if (!permutation_action) return x;
    UniversalValue out;
    for (const auto& [p, m] : x) out = add(out, {{g(p), m}});
    return out;
}

json UniversalGroup::to_json(const UniversalValue& x) const {
    json out = json::array();
    for (const auto& [p, m] : x) out.push_back({to_string(p), m.get_str()});
    return out;
}

Integer UniversalGroup::augmentation(const UniversalValue& x) {
    Integer total = 0;
    for (const auto& [p, m] : x) total += m;
    return total;
}

PseudoMeasure<UniversalGroup> universal_measure(UniversalGroup group) {
    return PseudoMeasure<UniversalGroup>(group, [](const Segment& s) {
        UniversalValue v{{s.to(), Integer(1)}};
        v.emplace(s.from(), Integer(-1));
        return v;
    });
}

namespace {

using Triangle = std::array<Point, 3>;

std::array<Point, 3> sorted_vertices(const Triangle& t) {
    std::array<Point, 3> v = t;
    std::sort(v.begin(), v.end());
    return v;
}

void stern_brocot_triangles(const Point& left, const Point& right, int max_den, std::vector<Triangle>& out) {
    Integer den = left.den() + right.den();
    if (den > max_den) return;
    Point mid(left.num() + right.num(), den);
    out.push_back({left, mid, right});
    stern_brocot_triangles(left, mid, max_den, out);
    stern_brocot_triangles(mid, right, max_den, out);
}

}  // namespace

std::vector<Triangle> test_triangles(int depth, int max_den) {
    std::vector<Triangle> candidates;
    // Breadth-first over the tree: the triangle across side k of g(inf,0,1) is g tau^k sigma (inf,0,1).
    const UnimodularMatrix sigma = UnimodularMatrix::sigma();
    const UnimodularMatrix tau = UnimodularMatrix::tau();
    std::deque<std::pair<UnimodularMatrix, int>> queue{{UnimodularMatrix::identity(), 0}};
    // g, g tau and g tau^2 name the same triangle; key on the smallest.
    auto triangle_key = [&](const UnimodularMatrix& g) {
        return std::min({g.psl_canonical(), (g * tau).psl_canonical(), (g * tau * tau).psl_canonical()});
    };
    std::set<UnimodularMatrix> seen{triangle_key(UnimodularMatrix::identity())};
    while (!queue.empty()) {
        auto [g, dist] = queue.front();
        queue.pop_front();
        candidates.push_back({g(Point::infinity()), g(Point(0)), g(Point(1))});
        if (dist >= depth) continue;
        UnimodularMatrix rot = UnimodularMatrix::identity();
        for (int k = 0; k < 3; ++k) {
            UnimodularMatrix h = g * rot * sigma;
            rot = rot * tau;
            UnimodularMatrix key = triangle_key(h);
            if (seen.insert(key).second) queue.emplace_back(h, dist + 1);
        }
    }
    std::vector<Triangle> unit;
    stern_brocot_triangles(Point(0), Point(1), max_den, unit);
    for (const auto& t : unit) {
        candidates.push_back(t);
        for (int shift : {-1, 1}) {
            auto moved = [&](const Point& p) { return Point(p.num() + shift * p.den(), p.den()); };
            candidates.push_back({moved(t[0]), moved(t[1]), moved(t[2])});
        }
    }
    std::vector<Triangle> out;
    std::set<std::array<Point, 3>> keys;
    for (const auto& t : candidates) {
        if (keys.insert(sorted_vertices(t)).second) out.push_back(t);
    }
    return out;
}

}  // namespace pm
