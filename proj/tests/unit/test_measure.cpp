#include "pm/measure.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace pm;

namespace {

Point pt(long p, long q = 1) { return Point(Integer(p), Integer(q)); }

UniversalValue nu(const Point& a) { return UniversalGroup::generator(a); }

// An additive measure given by a potential: mu(a, b) = h(b) - h(a).
PseudoMeasure<RationalGroup> potential_measure() {
    auto h = [](const Point& x) -> Rational {
        if (x.is_infinite()) return Rational(7, 3);
        Rational v(x.num() * x.num() - 3 * x.den(), x.den() * x.den() + 1);
        v.canonicalize();
        return v;
    };
    return PseudoMeasure<RationalGroup>({}, [h](const Segment& s) -> Rational { return h(s.to()) - h(s.from()); });
}

}  // namespace

TEST_CASE("universal measure values") {
    auto mu = universal_measure();
    UniversalGroup g;
    CHECK(mu(pt(1, 2), pt(3, 7)) == subtract(g, nu(pt(3, 7)), nu(pt(1, 2))));
    CHECK(mu(Point::infinity(), pt(0)) == subtract(g, nu(pt(0)), nu(Point::infinity())));
    CHECK(mu(pt(0), pt(0)).empty());
    CHECK(UniversalGroup::augmentation(mu(pt(5, 3), pt(-2, 9))) == 0);
}

TEST_CASE("pre-measure validation") {
    CHECK(validate_premeasure(universal_measure().premeasure(), 4).passed);
    PreMeasure<IntegerGroup> constant{{}, [](const Segment&) { return Integer(1); }};
    CheckReport r = validate_premeasure(constant, 3);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.find("antisymmetry") != std::string::npos);
    CHECK_THROWS(PseudoMeasure<IntegerGroup>::extend(constant, 2));

    // Antisymmetric but violating the triangle relation.
    PreMeasure<IntegerGroup> odd{{}, [](const Segment& s) { return Integer(s.from() < s.to() ? 1 : -1); }};
    CheckReport r2 = validate_premeasure(odd, 2);
    CHECK_FALSE(r2.passed);
    CHECK(r2.witness.find("triangle") != std::string::npos);
}

TEST_CASE("test triangles are Farey triangles") {
    auto tris = test_triangles(4, 12);
    CHECK(tris.size() > 50);
    for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) CHECK(is_primitive(t[i], t[(i + 1) % 3]));
    }
}

TEST_CASE("chain independence") {
    std::mt19937_64 rng(31);
    auto uni = universal_measure();
    auto pot = potential_measure();
    for (int i = 0; i < 100; ++i) {
        Point a = random_point(rng, 30, 40), b = random_point(rng, 30, 40);
        Chain canonical = primitive_chain(a, b);
        for (int k = 0; k < 3; ++k) {
            Chain other = randomize_chain(canonical, rng, 2 + k * 3);
            CHECK(uni.on_chain(other) == uni(a, b));
            CHECK(pot.on_chain(other) == pot(a, b));
        }
    }
}

TEST_CASE("cocycle relation and antisymmetry") {
    std::mt19937_64 rng(32);
    auto mu = potential_measure();
    for (int i = 0; i < 200; ++i) {
        Point a = random_point(rng, 25, 25), b = random_point(rng, 25, 25), c = random_point(rng, 25, 25);
        CHECK(mu(a, b) + mu(b, c) + mu(c, a) == 0);
        CHECK(mu(a, b) + mu(b, a) == 0);
    }
}

TEST_CASE("universality") {
    std::mt19937_64 rng(33);
    auto mu = potential_measure();
    auto w = universal_factor(mu);
    auto uni = universal_measure();
    for (int i = 0; i < 100; ++i) {
        Point a = random_point(rng, 25, 25), b = random_point(rng, 25, 25);
        CHECK(w(uni(a, b)) == mu(a, b));
    }
}

TEST_CASE("group structure") {
    auto mu = potential_measure();
    auto zero = zero_measure(RationalGroup{});
    auto sum = mu + (-mu);
    auto diff = mu - mu;
    auto twice = mu + mu;
    std::mt19937_64 rng(34);
    for (int i = 0; i < 50; ++i) {
        Point a = random_point(rng, 20, 20), b = random_point(rng, 20, 20);
        CHECK(sum(a, b) == 0);
        CHECK(diff(a, b) == 0);
        CHECK(zero(a, b) == 0);
        CHECK(twice(a, b) == 2 * mu(a, b));
    }
    CHECK((mu + potential_measure())(Point::infinity(), pt(0)) ==
          mu(Point::infinity(), pt(0)) + potential_measure()(Point::infinity(), pt(0)));
}

TEST_CASE("right action") {
    auto uni = universal_measure();
    UniversalGroup g;
    auto same = right_action(uni, RationalMatrix::identity());
    auto by_sigma = right_action(uni, UnimodularMatrix::sigma());
    CHECK(by_sigma(Point::infinity(), pt(0)) == g.negate(uni(Point::infinity(), pt(0))));

    std::mt19937_64 rng(35);
    RationalMatrix x(Rational(2), Rational(1, 3), Rational(-1), Rational(5, 2));
    RationalMatrix y(Rational(1, 2), Rational(4), Rational(3), Rational(-7));
    auto stepwise = right_action(right_action(uni, x), y);
    auto joint = right_action(uni, x * y);
    for (int i = 0; i < 60; ++i) {
        Point a = random_point(rng, 20, 20), b = random_point(rng, 20, 20);
        CHECK(same(a, b) == uni(a, b));
        CHECK(stepwise(a, b) == joint(a, b));
    }
}

TEST_CASE("involution and parity") {
    auto uni = universal_measure();
    UniversalGroup g;
    auto flipped = involution_image(uni);
    CHECK(flipped(pt(0), pt(1)) == subtract(g, nu(pt(-1)), nu(pt(0))));
    auto twice = involution_image(flipped);

    auto mu = potential_measure();
    auto [even, odd] = parity_parts(mu);
    auto even_flipped = involution_image(even);
    auto odd_flipped = involution_image(odd);
    std::mt19937_64 rng(36);
    for (int i = 0; i < 60; ++i) {
        Point a = random_point(rng, 20, 20), b = random_point(rng, 20, 20);
        CHECK(twice(a, b) == uni(a, b));
        CHECK(even(a, b) + odd(a, b) == mu(a, b));
        CHECK(even_flipped(a, b) == even(a, b));
        CHECK(odd_flipped(a, b) == -odd(a, b));
    }
}

TEST_CASE("modularity of the universal measure") {
    std::vector<UnimodularMatrix> gens{UnimodularMatrix::sigma(), UnimodularMatrix::tau()};
    CHECK(modularity_check(universal_measure(), gens, 3).passed);
    CHECK_FALSE(modularity_check(universal_measure(UniversalGroup{false}), gens, 3).passed);
}

TEST_CASE("fixture export") {
    auto mu = potential_measure();
    json j = fixture_json(mu, {Segment(Point::infinity(), pt(0))});
    REQUIRE(j.size() == 1);
    CHECK(j[0]["segment"][0] == "inf");
    CHECK(j[0]["value"] == to_string(mu(Point::infinity(), pt(0))));
}

TEST_CASE("memoized evaluation is consistent across threads") {
    auto mu = potential_measure();
    std::vector<Point> pts;
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) pts.push_back(random_point(rng, 40, 40));
    std::vector<Rational> expected;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) expected.push_back(potential_measure()(pts[i], pts[i + 1]));
    std::vector<int> mismatches(4, 0);
    {
        std::vector<std::jthread> workers;
        for (int t = 0; t < 4; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                    if (mu(pts[i], pts[i + 1]) != expected[i]) ++mismatches[t];
                }
            });
        }
    }
    for (int m : mismatches) CHECK(m == 0);
}
