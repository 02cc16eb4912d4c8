#include "pm/continued_fraction.hpp"
#include "pm/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pm;

namespace {

Rational q(long p, long d) { return Rational(p, d); }

std::vector<Rational> sample_rationals(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
    std::vector<Rational> out;
    for (int i = 0; i < count; ++i) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("points are stored in lowest terms with a unique infinity") {
    CHECK(Point(Integer(4), Integer(-6)) == Point(Integer(-2), Integer(3)));
    CHECK(Point(Integer(-7), Integer(0)) == Point::infinity());
    CHECK(Point::infinity().num() == 1);
    CHECK_THROWS(Point(Integer(0), Integer(0)));
    CHECK(to_string(Point::infinity()) == "inf");
    CHECK(to_string(Point(q(-3, 7))) == "-3/7");
    CHECK(parse_point("inf") == Point::infinity());
    CHECK(parse_point("6/4") == Point(q(3, 2)));
    CHECK(parse_point("-5") == Point(-5));
    CHECK_THROWS(parse_point("1/x"));
    CHECK(Point::infinity() < Point(-1000));
    CHECK(Point(q(1, 3)) < Point(q(1, 2)));
}

TEST_CASE("continued fraction expansion") {
    CHECK(to_string(cf_expand(q(3, 7))) == "[0;2,3]");
    CHECK(cf_expand(Rational(5)).partials.empty());
    CHECK(to_string(cf_expand(q(5, 2))) == "[2;2]");
    CHECK(to_string(cf_expand(q(-1, 2))) == "[-1;2]");
    CHECK(parse_cf("[0;2,3]").value() == q(3, 7));
    CHECK_THROWS(parse_cf("[0;2,1]"));

    for (const Rational& x : sample_rationals(11, 400)) {
        ContinuedFraction cf = cf_expand(x);
        CHECK(cf.value() == x);
        if (!cf.partials.empty()) CHECK(cf.partials.back() >= 2);
        for (const auto& k : cf.partials) CHECK(k >= 1);
        CHECK(parse_cf(to_string(cf)) == cf);
    }
}

TEST_CASE("convergents") {
    auto c = convergents(q(3, 7));
    REQUIRE(c.size() == 4);
    CHECK(c[0] == Point::infinity());
    CHECK(c[1] == Point(0));
    CHECK(c[2] == Point(q(1, 2)));
    CHECK(c[3] == Point(q(3, 7)));
    CHECK(convergents(Rational(5)) == std::vector<Point>{Point::infinity(), Point(5)});
    CHECK(convergents(q(-1, 2)) == std::vector<Point>{Point::infinity(), Point(-1), Point(q(-1, 2))});

    for (const Rational& x : sample_rationals(12, 300)) {
        auto conv = convergents(x);
        CHECK(conv.back() == Point(x));
        CHECK(conv[1] == Point(floor(x)));
        for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
            Integer det = cross(conv[i], conv[i + 1]);
            CHECK((det == 1 || det == -1));
        }
    }
}

TEST_CASE("convergent matrices") {
    auto g = gk_matrices(q(3, 7));
    REQUIRE(g.size() == 3);
    CHECK(g[0] == UnimodularMatrix::identity());
    CHECK(g[1] == UnimodularMatrix(0, -1, 1, -2));
    CHECK(g[2] == UnimodularMatrix(1, 3, 2, 7));
    CHECK(g[1](Point(0)) == Point(q(1, 2)));

    for (const Rational& x : sample_rationals(13, 300)) {
        auto conv = convergents(x);
        auto gs = gk_matrices(x);
        REQUIRE(gs.size() + 1 == conv.size());
        for (std::size_t k = 0; k < gs.size(); ++k) {
            CHECK(gs[k].det() == 1);
            CHECK(gs[k](Point::infinity()) == conv[k]);
            CHECK(gs[k](Point(0)) == conv[k + 1]);
        }
    }
}

TEST_CASE("Moebius action") {
    const auto sigma = UnimodularMatrix::sigma();
    const auto tau = UnimodularMatrix::tau();
    CHECK(sigma(Point::infinity()) == Point(0));
    CHECK(sigma(Point(0)) == Point::infinity());
    CHECK(tau(Point(0)) == Point(1));
    CHECK(tau(Point(1)) == Point::infinity());
    CHECK(tau(Point::infinity()) == Point(0));
    CHECK(UnimodularMatrix::identity()(Point(q(3, 7))) == Point(q(3, 7)));
    CHECK((sigma * sigma).psl_equal(UnimodularMatrix::identity()));
    CHECK((tau * tau * tau).psl_equal(UnimodularMatrix::identity()));
    // sigma tau is the inverse translation.
    CHECK((sigma * tau).psl_equal(UnimodularMatrix::shift(-1)));

    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> pick(0, 3);
    auto random_matrix = [&]() {
        UnimodularMatrix g;
        for (int i = 0; i < 8; ++i) {
            switch (pick(rng)) {
                case 0: g = g * sigma; break;
                case 1: g = g * tau; break;
                case 2: g = g * UnimodularMatrix::shift(3); break;
                default: g = g * UnimodularMatrix(0, 1, 1, 0); break;
            }
        }
        return g;
    };
    for (const Rational& x : sample_rationals(15, 200)) {
        UnimodularMatrix g = random_matrix(), h = random_matrix();
        CHECK((g * h)(Point(x)) == g(h(Point(x))));
        CHECK(g.inverse()(g(Point(x))) == Point(x));
        RationalMatrix r(Rational(2, 3), Rational(1), Rational(-5, 2), Rational(7));
        RationalMatrix s = RationalMatrix(g) * r;
        CHECK(s(Point(x)) == g(r(Point(x))));
        CHECK(r.inverse()(r(Point(x))) == Point(x));
    }
    CHECK(RationalMatrix(2, 0, 0, 1)(Point::infinity()) == Point::infinity());
    CHECK(RationalMatrix(1, 0, 3, 1)(Point::infinity()) == Point(q(1, 3)));
}

TEST_CASE("PSL canonical form") {
    UnimodularMatrix g(-1, 2, -3, 5);
    CHECK(g.psl_canonical() == UnimodularMatrix(1, -2, 3, -5));
    CHECK(UnimodularMatrix(-1, 0, 0, -1).psl_canonical() == UnimodularMatrix::identity());
    CHECK(UnimodularMatrix(-1, 7, 0, -1).psl_canonical() == UnimodularMatrix(1, -7, 0, 1));
    CHECK_THROWS(UnimodularMatrix(2, 0, 0, 1));
    CHECK(UnimodularMatrix(0, 1, 1, 0).det() == -1);
}
