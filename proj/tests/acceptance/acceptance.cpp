// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include "pm/dedekind.hpp"
#include "pm/gauss.hpp"
#include "pm/hecke.hpp"
#include "pm/levy_mellin.hpp"
#include "pm/noncommutative.hpp"
#include "pm/polynomial.hpp"
#include "pm/step_integral.hpp"
#include "pm/tree.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

using namespace pm;
using pm::testing::pt;
using pm::testing::rat;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && passed) {
            passed = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<UnimodularMatrix> generators{UnimodularMatrix::sigma(), UnimodularMatrix::tau()};

// Primitive descendant arcs of depth <= d, with their complements.
std::vector<Segment> primitive_segments(int depth) {
    std::vector<Segment> out;
    for (int d = 0; d <= depth; ++d)
        for (const auto& a : arcs_at_depth(d)) {
            out.push_back(a);
            out.push_back(a.reversed());
        }
    return out;
}

template <ValueGroup G>
bool agree_on(const PseudoMeasure<G>& x, const PseudoMeasure<G>& y, const std::vector<Segment>& segments) {
    for (const auto& s : segments)
        if (!x.group().equal(x(s.from(), s.to()), y(s.from(), s.to()))) return false;
    return true;
}

// ---------------------------------------------------------------------------

Outcome criterion_dirichlet_identity() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::size_t seeds = 0;
    for (int w : {2, 10}) {
        const PolyGroup group{w};
        for (const auto& omega : seed_space(group)) {
            ++seeds;
            const auto report = verify_hecke_series(from_seed(group, omega), 30);
            out.require(report.all_equal, "coefficients differ at w = " + std::to_string(w));
            out.require(report.coefficients.size() == 30, "expected 30 coefficients");
        }
    }
    const double elapsed = seconds_since(start);
    out.require(seeds == 4, "expected 1 + 3 basis seeds");
    out.require(elapsed < 60, "took " + std::to_string(elapsed) + " s");
    if (out.passed) out.detail = std::to_string(seeds) + " seeds, n = 1..30, " + std::to_string(elapsed) + " s";
    return out;
}

// P(X, Y) -> P(aX + bY, cX + dY) on coefficients of X^{w-i} Y^i.
Matrix substitution_matrix(int w, long a, long b, long c, long d) {
    auto binomial = [](long n, long k) {
        Integer r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    auto power = [](long base, long e) {
        Integer r = 1;
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    };
    std::vector<Vector> columns;
    for (long i = 0; i <= w; ++i) {
        // (aX + bY)^{w-i} (cX + dY)^i
        Vector col(static_cast<std::size_t>(w) + 1, Rational(0));
        for (long j = 0; j <= w - i; ++j)
            for (long k = 0; k <= i; ++k) {
                const Integer coef = binomial(w - i, j) * power(a, w - i - j) * power(b, j) * binomial(i, k) * power(c, i - k) * power(d, k);
                col[static_cast<std::size_t>(j + k)] += Rational(coef);
            }
        columns.push_back(col);
    }
    return Matrix::from_columns(columns, static_cast<std::size_t>(w) + 1);
}

Outcome criterion_seed_dimensions() {
    Outcome out;
    auto cusp_dimension = [](long k) { return k % 12 == 2 ? k / 12 - 1 : k / 12; };
    std::ostringstream detail;
    for (auto [w, expected] : std::vector<std::pair<int, std::size_t>>{{2, 1}, {10, 3}}) {
        const std::size_t formula = static_cast<std::size_t>(2 * cusp_dimension(w + 2) + 1);
        const Matrix id = Matrix::identity(static_cast<std::size_t>(w) + 1);
        const Matrix s = substitution_matrix(w, 0, -1, 1, 0), t = substitution_matrix(w, 0, -1, 1, -1);
        const Matrix stacked = (id + s).stacked(id + t + t * t);
        const std::size_t naive = static_cast<std::size_t>(w) + 1 - rank(stacked);
        const std::size_t computed = seed_space(PolyGroup{w}).size();
        out.require(formula == expected && naive == expected && computed == expected,
                    "w = " + std::to_string(w) + ": seed_space " + std::to_string(computed) + ", formula " + std::to_string(formula) +
                        ", naive " + std::to_string(naive));
        detail << "w=" << w << " -> " << computed << " ";
    }
    if (out.passed) out.detail = detail.str() + "(formula and naive solve agree)";
    return out;
}

Outcome criterion_hecke_spectrum() {
    Outcome out;
    // tau(2): coefficient of q^2 in q prod (1 - q^n)^24, expanded to q^1 inside the product
    std::vector<Integer> series{1, 0};
    for (int rep = 0; rep < 24; ++rep) series[1] -= series[0];
    const Integer tau2 = series[1];
    out.require(tau2 == -24, "oracle tau(2) = " + tau2.get_str());
    const HeckeReport r = hecke_report(10, 2);
    bool found = false;
    for (const auto& root : r.normalized_eigenvalues)
        if (root.value == Rational(tau2) && root.multiplicity == 2) found = true;
    out.require(found, "normalized T_2 has no eigenvalue -24 of multiplicity 2");
    if (out.passed) out.detail = "eigenvalue " + tau2.get_str() + " with multiplicity 2";
    return out;
}

Outcome criterion_chain_independence() {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    const auto universal = universal_measure();
    const PolyGroup group{10};
    const auto modular = from_seed(group, seed_space(group)[1]);
    int pairs = 0;
    while (pairs < 100) {
        const Point a = random_point(rng, 25, 30), b = random_point(rng, 25, 30);
        if (a == b) continue;
        ++pairs;
        const auto direct_u = universal(a, b);
        const auto direct_m = modular(a, b);
        for (int k = 0; k < 3; ++k) {
            const Chain chain = randomize_chain(primitive_chain(a, b), rng, 5);
            out.require(is_chain(chain), "randomized chain is broken");
            out.require(universal.on_chain(chain) == direct_u, "universal measure depends on the chain");
            out.require(modular.on_chain(chain) == direct_m, "modular measure depends on the chain");
        }
    }
    for (int i = 0; i < 100; ++i) {
        const Point base = random_point(rng, 20, 20);
        const std::size_t length = 2 + rng() % 11;
        const Chain loop = random_loop(base, length, rng);
        Chain work = loop;
        for (const auto& m : reduce_loop(loop)) apply_move(work, m);
        out.require(work.empty(), "a loop did not reduce to the empty chain");
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 30, "took " + std::to_string(elapsed) + " s");
    if (out.passed) out.detail = "100 pairs x 3 chains, 100 loops emptied, " + std::to_string(elapsed) + " s";
    return out;
}

Outcome criterion_dedekind_roundtrip() {
    Outcome out;
    const auto segments = primitive_segments(6);
    auto mu = pm::testing::potential_measure();
    ReciprocityFamily<RationalGroup> family = [mu](const Integer& n) { return reciprocity_from_measure(mu, n); };
    out.require(agree_on(measure_from_reciprocity(RationalGroup{}, family, seed_of(mu)), mu, segments), "potential measure changed");

    const PolyGroup group{10};
    for (const auto& omega : seed_space(group)) {
        auto modular = from_seed(group, omega);
        ReciprocityFamily<PolyGroup> f = [modular](const Integer& n) { return reciprocity_from_measure(modular, n); };
        out.require(agree_on(measure_from_reciprocity(group, f, seed_of(modular), 3, 12), modular, segments), "modular measure changed");
    }
    if (out.passed) out.detail = std::to_string(segments.size()) + " primitive segments, 4 measures";
    return out;
}

Outcome criterion_current_dictionary() {
    Outcome out;
    const auto segments = primitive_segments(6);
    const PolyGroup group{10};
    auto check = [&](const auto& mu, const std::string& name) {
        const auto c = current_from_measure(mu);
        out.require(current_validate(c, 6).passed, name + ": conservation fails in the depth-6 subtree");
        const auto back = measure_from_current(c, 6);
        out.require(agree_on(back, mu, segments), name + ": measure -> current -> measure changed values");
        const auto again = current_from_measure(back);
        for (const auto& t : tree_triangles(6)) {
            UnimodularMatrix g = t;
            for (int k = 0; k < 3; ++k, g = g * UnimodularMatrix::tau())
                for (const TreeEdge& e : {TreeEdge::away(g), TreeEdge::toward(g)})
                    out.require(mu.group().equal(again(e), c(e)), name + ": current -> measure -> current changed values");
        }
    };
    check(pm::testing::potential_measure(), "potential");
    check(universal_measure(), "universal");
    check(from_seed(group, seed_space(group)[0]), "modular");
    if (out.passed) out.detail = std::to_string(tree_triangles(6).size()) + " vertices, 3 measures";
    return out;
}

Outcome criterion_integration() {
    Outcome out;
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<int> coef(-4, 4);
    const auto mu = pm::testing::potential_measure();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<Segment, Integer>> terms;
        for (int i = 0; i < 3; ++i) {
            const UnimodularMatrix h = pm::testing::random_sl2(rng, 6);
            terms.emplace_back(Segment(h(Point::infinity()), h(Point(0))), Integer(coef(rng)));
        }
        const auto f = LocallyConstantFunction::from_terms(terms);
        const UnimodularMatrix g = pm::testing::random_sl2(rng, 5), g_inv = g.inverse();
        // (mu o g^{-1})(a, b) = mu(g^{-1} a, g^{-1} b)
        const PseudoMeasure<RationalGroup> moved({}, [mu, g_inv](const Segment& s) -> Rational { return mu(g_inv(s.from()), g_inv(s.to())); });
        out.require(integrate(f.compose(g), mu) == integrate(f, moved), "change of variable fails");
    }
    const PolyGroup group{10};
    const auto modular = from_seed(group, seed_space(group)[2]);
    std::ostringstream sizes;
    std::size_t total = 0;
    for (int depth = 0; depth <= 4; ++depth) {
        auto basis = kernel_function_basis(depth);
        sizes << (depth ? "," : "") << basis.size();
        basis.emplace_back();  // f = 0
        for (const auto& f : basis) {
            ++total;
            out.require(kernel_function_check(f).passed, "basis element fails the kernel condition");
            out.require(modularity_check(measure_from_kernel_function(f, modular), generators, 3, 10).passed, "mu_f is not modular");
        }
    }
    if (out.passed)
        out.detail = "50 change-of-variable pairs; kernel basis sizes at depth 0..4: " + sizes.str() + ", " + std::to_string(total) +
                     " kernel functions checked";
    return out;
}

StepForm random_form(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 4), val(-3, 3), pieces(1, 3);
    std::set<Rational> cuts;
    const long n = pieces(rng);
    while (static_cast<long>(cuts.size()) < n + 1) cuts.insert(rat(num(rng), den(rng)));
    std::vector<Rational> values;
    for (long i = 0; i < n; ++i) values.push_back(rat(val(rng)));
    return StepForm({cuts.begin(), cuts.end()}, values);
}

Outcome criterion_noncommutative() {
    Outcome out;
    std::mt19937_64 rng(1008);
    std::uniform_int_distribution<long> end(-10, 10);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<StepForm> forms{random_form(rng), random_form(rng), random_form(rng)};
        Rational a = rat(end(rng), 2), b = rat(end(rng), 2);
        if (a == b) b += 1;
        if (b < a) std::swap(a, b);
        // shuffle identities on the iterated integrals themselves
        auto J = [&](std::vector<std::size_t> word) {
            std::vector<StepForm> picked;
            for (std::size_t i : word) picked.push_back(forms[i]);
            return iterated_integral(a, b, picked);
        };
        out.require(J({0}) * J({1}) == J({0, 1}) + J({1, 0}), "order-2 shuffle identity fails");
        out.require(J({0}) * J({1, 2}) == J({0, 1, 2}) + J({1, 0, 2}) + J({1, 2, 0}), "order-3 shuffle identity fails");
        out.require(J({0, 1}) * J({2}) == J({0, 1, 2}) + J({0, 2, 1}) + J({2, 0, 1}), "order-3 shuffle identity fails");
        // and group-likeness of the measure values at orders 2 and 3
        for (std::size_t order : {2u, 3u}) {
            const auto j = iterated_measure({forms[0], forms[1]}, order);
            out.require(shuffle_check(j(Point(a), Point(b))).passed, "iterated measure value is not group-like");
        }
    }
    const auto universal = nc_universal_measure();
    const auto iterated = iterated_measure({random_form(rng), random_form(rng)}, 3);
    for (int pairs = 0; pairs < 50;) {
        const Point a = random_point(rng, 15, 20), b = random_point(rng, 15, 20);
        if (a == b) continue;
        ++pairs;
        const auto du = universal(a, b);
        const auto di = iterated(a, b);
        for (int k = 0; k < 3; ++k) {
            const Chain chain = randomize_chain(primitive_chain(a, b), rng, 4);
            out.require(universal.on_chain(chain) == du, "free-group measure depends on the chain");
            out.require(iterated.on_chain(chain) == di, "iterated measure depends on the chain");
        }
    }
    std::size_t lifted = 0;
    for (auto [weight, order] : std::vector<std::pair<int, std::size_t>>{{2, 3}, {10, 2}}) {
        const PolyGroup poly{weight};
        const TensorGroup group{poly.dimension(), order, [poly](const UnimodularMatrix& g) { return action_matrix(poly, g); }};
        for (const auto& omega : seed_space(poly)) {
            const auto u = nc_seed_lift(group, poly.coordinates(omega));
            out.require(u.has_value(), "seed does not lift");
            if (!u) continue;
            ++lifted;
            out.require(nc_seed_check(group, *u).passed, "lifted seed fails the sigma/tau conditions");
            const auto j = nc_from_seed(group, *u);
            out.require(nc_validate(j.premeasure(), 3, 12).passed, "seed-built NC measure is not a pre-measure");
            out.require(nc_modularity_check(j, generators, 2, 10).passed, "seed-built NC measure is not modular");
        }
    }
    if (out.passed) out.detail = "50 tuples, 50 pairs x 3 chains, " + std::to_string(lifted) + " seed-built NC measures";
    return out;
}

Outcome criterion_limits() {
    Outcome out;
    const auto group = permutation_module(std::make_shared<const CosetTable>(Subgroup::gamma0(11)));
    const auto golden = parse_periodic_cf("[1;(1)]"), root2 = parse_periodic_cf("[1;(2)]");
    const std::vector<PeriodicCF> extra{parse_periodic_cf("[(2)]"), parse_periodic_cf("[0;3,(1,4)]")};
    long double worst = 0;
    for (const auto& omega : seed_space(group)) {
        const auto mu = from_seed(group, omega);
        for (const auto& theta : {golden, root2}) {
            const auto exact = limit_numeric(group, limiting_measure(mu, theta));
            const auto numeric = limiting_numeric(group, omega, theta, 100000);
            out.require(numeric.converged, "numeric average did not converge");
            for (std::size_t i = 0; i < exact.size() && numeric.converged; ++i) worst = std::max(worst, std::fabs(exact[i] - numeric.value[i]));
        }
        std::vector<PeriodicCF> points{golden, root2};
        points.insert(points.end(), extra.begin(), extra.end());
        for (const auto& theta : points)
            for (const auto& eta : points) {
                out.require(limit_equal(group, limiting_pair(mu, eta, theta), limit_negate(group, limiting_pair(mu, theta, eta))),
                            "antisymmetry fails");
                for (const auto& zeta : points) {
                    const auto sum = limit_add(group, limit_add(group, limiting_pair(mu, theta, eta), limiting_pair(mu, eta, zeta)),
                                               limiting_pair(mu, zeta, theta));
                    out.require(limit_is_zero(group, sum), "triangle identity fails");
                }
            }
    }
    out.require(worst < 1e-4L, "closed form and numeric average differ by " + std::to_string(static_cast<double>(worst)));
    long double worst_lambda = 0;
    for (const auto& theta : {golden, root2})
        worst_lambda = std::max(worst_lambda, std::fabs(lyapunov_estimate(theta, 10000) - lyapunov_exact(theta).value));
    out.require(worst_lambda < 1e-3L, "lambda estimate off by " + std::to_string(static_cast<double>(worst_lambda)));
    if (out.passed) {
        std::ostringstream d;
        d << "max |closed - numeric| = " << static_cast<double>(worst) << ", max |lambda estimate - exact| = " << static_cast<double>(worst_lambda);
        out.detail = d.str();
    }
    return out;
}

Outcome criterion_levy_periodicity() {
    Outcome out;
    const PolyGroup group{10};
    const auto mu = from_seed(group, seed_space(group)[1]);
    LevyFunction<PolyGroup> f{group, [mu](const Segment& s) { return mu(s.from(), s.to()); }};
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<long> den(2, 60);
    for (int i = 0; i < 50; ++i) {
        const long q = den(rng);
        const long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(q - 1));
        const Rational alpha = rat(p, q);
        out.require(levy_eval(f, alpha, 30) == levy_eval(f, alpha + 1, 30), "levy_eval(alpha) != levy_eval(alpha + 1) at " + to_string(alpha));
    }
    if (out.passed) out.detail = "50 rationals, depth 30";
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"Dirichlet series identity Z+ Z- LM = sum T_n", criterion_dirichlet_identity},
        {"seed-space dimensions", criterion_seed_dimensions},
        {"Hecke spectrum", criterion_hecke_spectrum},
        {"chain independence and loop reduction", criterion_chain_independence},
        {"Dedekind round trip", criterion_dedekind_roundtrip},
        {"current dictionary", criterion_current_dictionary},
        {"integration laws", criterion_integration},
        {"non-commutative layer", criterion_noncommutative},
        {"limiting measures", criterion_limits},
        {"Levy periodicity", criterion_levy_periodicity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::cout << (o.passed ? "PASS" : "FAIL") << " " << i + 1 << ". " << criteria[i].first << " (" << o.detail << ")" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
