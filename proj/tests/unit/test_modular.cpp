#include "pm/cosets.hpp"
#include "pm/hecke.hpp"
#include "pm/polynomial.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

using namespace pm;
using pm::testing::pt;

namespace {

HomogeneousPoly poly(int w, std::vector<long> c) {
    std::vector<Rational> r;
    for (long x : c) r.emplace_back(x);
    return HomogeneousPoly(w, r);
}

// dim S_k for SL(2,Z), even k >= 4, from the classical dimension formula.
long cusp_dimension(long k) {
    long m = k / 12 + (k % 12 == 2 ? 0 : 1);
    return m - 1;
}

// Coefficients of q prod (1 - q^n)^24 up to q^max.
std::vector<Integer> ramanujan_tau(int max) {
    std::vector<Integer> series(static_cast<std::size_t>(max), 0);
    series[0] = 1;  // the product, shifted by one power of q
    for (int n = 1; n < max; ++n) {
        for (int rep = 0; rep < 24; ++rep) {
            for (int i = max - 1; i >= n; --i) series[static_cast<std::size_t>(i)] -= series[static_cast<std::size_t>(i - n)];
        }
    }
    std::vector<Integer> tau(static_cast<std::size_t>(max) + 1, 0);
    for (int i = 0; i < max; ++i) tau[static_cast<std::size_t>(i) + 1] = series[static_cast<std::size_t>(i)];
    return tau;
}

Integer power_sum_of_divisors(long n, int k) {
    Integer total = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        Integer p = 1;
        for (int i = 0; i < k; ++i) p *= d;
        total += p;
    }
    return total;
}

bool has_eigenvalue(const HeckeReport& r, const Integer& value, int multiplicity) {
    for (const auto& root : r.normalized_eigenvalues)
        if (root.value == Rational(value) && root.multiplicity == multiplicity) return true;
    return false;
}

template <ValueGroup G>
bool agree_on_segments(const PseudoMeasure<G>& a, const PseudoMeasure<G>& b, int depth, int max_den) {
    for (const auto& t : test_triangles(depth, max_den))
        for (int i = 0; i < 3; ++i) {
            Segment s(t[i], t[(i + 1) % 3]);
            if (!a.group().equal(a.on_segment(s), b.on_segment(s))) return false;
        }
    return true;
}

const std::vector<UnimodularMatrix> generators{UnimodularMatrix::sigma(), UnimodularMatrix::tau()};

}  // namespace

TEST_CASE("from_seed on X^2 - Y^2") {
    const PolyGroup group{2};
    const HomogeneousPoly omega = poly(2, {1, 0, -1});
    auto mu = from_seed(group, omega);
    CHECK(mu(Point::infinity(), pt(0)) == omega);
    CHECK(mu(pt(0), pt(1)) == poly(2, {0, -2, 1}));   // Y^2 - 2XY
    CHECK(mu(pt(1), Point::infinity()) == poly(2, {-1, 2, 0}));  // 2XY - X^2
    CHECK((mu(Point::infinity(), pt(0)) + mu(pt(0), pt(1)) + mu(pt(1), Point::infinity())).is_zero());
    CHECK(validate_premeasure(mu.premeasure(), 5).passed);
    CHECK(modularity_check(mu, generators, 4).passed);

    auto zero = from_seed(group, group.zero());
    CHECK(zero(pt(3, 7), pt(-2, 5)).is_zero());
    CHECK_THROWS(from_seed(group, poly(2, {1, 0, 0})));
}

TEST_CASE("seed space dimensions match the Eichler-Shimura count") {
    CHECK(seed_space(0).empty());
    REQUIRE(seed_space(2).size() == 1);
    CHECK(is_seed(PolyGroup{2}, poly(2, {1, 0, -1})));
    for (int w = 2; w <= 24; w += 2) {
        INFO("w = " << w);
        CHECK(static_cast<long>(seed_space(w).size()) == 2 * cusp_dimension(w + 2) + 1);
    }
    CHECK(seed_space(10).size() == 3);
    for (int w : {1, 3, 7}) CHECK(seed_space(w).empty());
}

TEST_CASE("exactness between seeds and modular measures") {
    for (int w : {2, 10}) {
        const PolyGroup group{w};
        for (const auto& omega : seed_space(group)) {
            auto mu = from_seed(group, omega);
            CHECK(seed_of(mu) == omega);
            CHECK(validate_premeasure(mu.premeasure(), 4, 20).passed);
            CHECK(modularity_check(mu, generators, 3, 12).passed);
            // a modular measure is rebuilt from its seed
            auto t = hecke(mu, 2);
            CHECK(agree_on_segments(from_seed(group, seed_of(t)), t, 3, 10));
        }
    }
}

TEST_CASE("cocycles") {
    const PolyGroup group{10};
    std::mt19937_64 rng(21);
    for (const auto& omega : seed_space(group)) {
        auto mu = from_seed(group, omega);
        auto c = cocycle(mu, Point::infinity());
        CHECK(c(UnimodularMatrix::sigma()) == -omega);
        CHECK(c(UnimodularMatrix::tau()) == -omega);
        CHECK(c(UnimodularMatrix::identity()).is_zero());
        for (int trial = 0; trial < 10; ++trial) {
            UnimodularMatrix g = pm::testing::random_sl2(rng, 5), h = pm::testing::random_sl2(rng, 5);
            CHECK(c(g * h) == c(g) + group.act(g, c(h)));
            // base change: c_beta(g) = c_alpha(g) - (g - 1) mu(alpha, beta)
            const Point alpha = pt(2, 7), beta = pt(-3, 4);
            auto ca = cocycle(mu, alpha), cb = cocycle(mu, beta);
            auto m = mu(alpha, beta);
            CHECK(cb(g) == ca(g) - (group.act(g, m) - m));
        }
        // parabolic elements fixing a cusp
        UnimodularMatrix h(3, 1, 5, 2);
        UnimodularMatrix parabolic = h * UnimodularMatrix::shift(4) * h.inverse();
        CHECK(cocycle(mu, h(Point::infinity()))(parabolic).is_zero());
    }
}

TEST_CASE("Hecke representatives") {
    auto reps = hecke_representatives(2);
    REQUIRE(reps.size() == 3);
    CHECK(reps[0] == RationalMatrix(1, 1, 0, 2));
    CHECK(reps[1] == RationalMatrix(1, 2, 0, 2));
    CHECK(reps[2] == RationalMatrix(2, 1, 0, 1));
    for (long n : {3, 4, 6}) CHECK(static_cast<long>(hecke_representatives(n).size()) == power_sum_of_divisors(n, 1));
}

TEST_CASE("Hecke operators") {
    const PolyGroup group{10};
    const auto basis = seed_space(group);
    auto mu = from_seed(group, basis[1]);

    // T_1 is the identity
    CHECK(agree_on_segments(hecke(mu, 1), mu, 3, 10));

    // independent of the representatives chosen
    std::mt19937_64 rng(22);
    auto reps = hecke_representatives(3);
    std::vector<RationalMatrix> moved;
    for (const auto& d : reps) moved.push_back(RationalMatrix(pm::testing::random_sl2(rng, 4)) * d);
    CHECK(agree_on_segments(hecke(mu, reps), hecke(mu, moved), 2, 8));

    // the image is modular again
    CHECK(modularity_check(hecke(mu, 2), generators, 3, 10).passed);

    CHECK(hecke_matrix(group, basis, 1) == Matrix::identity(3));
}

TEST_CASE("Hecke operators commute") {
    const PolyGroup group{10};
    const auto basis = seed_space(group);
    for (auto [n, m] : std::vector<std::pair<long, long>>{{2, 3}, {2, 5}, {3, 4}, {5, 6}}) {
        Matrix tn = hecke_matrix(group, basis, n), tm = hecke_matrix(group, basis, m);
        CHECK(tn * tm == tm * tn);
    }
}

TEST_CASE("normalized Hecke spectra") {
    const auto tau = ramanujan_tau(8);
    CHECK(tau[2] == -24);  // sanity of the oracle itself
    HeckeReport r2 = hecke_report(2, 2);
    REQUIRE(r2.factor);
    CHECK(r2.eisenstein_is_eigenvector);
    CHECK(r2.normalized(0, 0) == 9);

    for (long n : {2, 3, 5, 7}) {
        HeckeReport r = hecke_report(10, n);
        INFO("n = " << n);
        CHECK(r.eisenstein_is_eigenvector);
        CHECK(has_eigenvalue(r, tau[static_cast<std::size_t>(n)], 2));
        CHECK(has_eigenvalue(r, power_sum_of_divisors(n, 11), 1));
        // the normalization factor is n^w
        Integer nw = 1;
        for (int i = 0; i < 10; ++i) nw *= n;
        CHECK(*r.factor == Rational(nw));
    }
    HeckeReport one = hecke_report(10, 1);
    CHECK(one.raw == Matrix::identity(3));
}

TEST_CASE("induced measures") {
    auto cosets = std::make_shared<const CosetTable>(Subgroup::gamma0(2));
    InducedGroup<PolyGroup> induced{PolyGroup{2}, cosets};
    const auto seeds = seed_space(induced);
    REQUIRE_FALSE(seeds.empty());
    auto mu_hat = from_seed(induced, seeds.back());
    CHECK(modularity_check(mu_hat, generators, 3, 10).passed);

    // the identity component is Gamma0(2)-modular
    auto mu = restrict_measure(mu_hat);
    const std::vector<UnimodularMatrix> gamma0_gens{UnimodularMatrix::shift(1), UnimodularMatrix(1, 0, 2, 1),
                                                   UnimodularMatrix(1, -1, 2, -1)};
    for (const auto& g : gamma0_gens) REQUIRE(cosets->group().contains(g));
    CHECK(modularity_check(mu, gamma0_gens, 3, 10).passed);

    // round trips
    auto back = induce(mu, cosets);
    CHECK(agree_on_segments(back, mu_hat, 3, 10));
    CHECK(agree_on_segments(restrict_measure(back), mu, 3, 10));

    // pointwise: mu^(a, b)[s] = mu(h_s a, h_s b)
    for (std::size_t s = 0; s < cosets->size(); ++s) {
        const auto& h = cosets->representative(s);
        CHECK(mu_hat(pt(1, 3), pt(2, 5))[s] == mu(h(pt(1, 3)), h(pt(2, 5))));
    }

    // Gamma = PSL(2,Z): induction changes nothing
    auto full = std::make_shared<const CosetTable>(Subgroup::full());
    auto plain = from_seed(PolyGroup{2}, poly(2, {1, 0, -1}));
    auto lifted = induce(plain, full);
    CHECK(lifted(pt(1, 2), pt(5, 3)).front() == plain(pt(1, 2), pt(5, 3)));
}

TEST_CASE("permutation module seeds") {
    for (long n : {2, 3, 11}) {
        auto cosets = std::make_shared<const CosetTable>(Subgroup::gamma0(n));
        auto group = permutation_module(cosets);
        for (const auto& omega : seed_space(group)) {
            auto mu = from_seed(group, omega);
            CHECK(modularity_check(mu, generators, 2, 8).passed);
        }
    }
}
