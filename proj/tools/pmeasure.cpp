// Command-line front end; every subcommand prints one JSON document on stdout.

#include "pm/continued_fraction.hpp"
#include "pm/cosets.hpp"
#include "pm/dedekind.hpp"
#include "pm/gauss.hpp"
#include "pm/hecke.hpp"
#include "pm/levy_mellin.hpp"
#include "pm/noncommutative.hpp"
#include "pm/polynomial.hpp"
#include "pm/step_integral.hpp"
#include "pm/tensor.hpp"
#include "pm/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

using namespace pm;
using nlohmann::json;

namespace {

std::size_t default_truncation() {
    if (const char* env = std::getenv("PMEASURE_TRUNC")) return static_cast<std::size_t>(std::stoul(env));
    return 30;
}

std::string read_argument(const std::string& text) {
    if (text.empty() || text.front() != '@') return text;
    std::ifstream in(text.substr(1));
    if (!in) throw std::runtime_error("cannot open " + text.substr(1));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <class G>
typename G::value_type pick_seed(const G& group, std::size_t index) {
    const auto basis = seed_space(group);
    if (index >= basis.size())
        throw std::invalid_argument("seed index " + std::to_string(index) + " out of range, dimension " + std::to_string(basis.size()));
    return basis[index];
}

// "seed:w<W>:<i>" is the i-th weight-W seed; "gamma0:<N>:<i>" the i-th seed of the Gamma0(N) permutation module.
struct MeasureSpec {
    enum class Kind { polynomial, permutation } kind;
    long parameter;
    std::size_t index;
};

MeasureSpec parse_measure(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("measure must be seed:w<W>:<i> or gamma0:<N>:<i>");
    const std::size_t index = std::stoul(parts[2]);
    if (parts[0] == "seed" && parts[1].size() > 1 && parts[1][0] == 'w') return {MeasureSpec::Kind::polynomial, std::stol(parts[1].substr(1)), index};
    if (parts[0] == "gamma0") return {MeasureSpec::Kind::permutation, std::stol(parts[1]), index};
    throw std::invalid_argument("unknown measure " + text);
}

PermutationGroup gamma0_module(long level) { return permutation_module(std::make_shared<const CosetTable>(Subgroup::gamma0(level))); }

// Calls f(group, seed) with the concrete group named by the measure string.
template <class F>
json with_measure(const MeasureSpec& spec, F&& f) {
    if (spec.kind == MeasureSpec::Kind::polynomial) {
        const PolyGroup group{static_cast<int>(spec.parameter)};
        return f(group, pick_seed(group, spec.index));
    }
    const auto group = gamma0_module(spec.parameter);
    return f(group, pick_seed(group, spec.index));
}

json chain_json(const Chain& chain) {
    json out = json::array();
    for (const auto& s : chain) out.push_back({to_string(s.from()), to_string(s.to())});
    return out;
}

StepForm random_form(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 4), val(-3, 3), pieces(1, 3);
    std::set<Rational> cuts;
    const long n = pieces(rng);
    while (static_cast<long>(cuts.size()) < n + 1) cuts.insert(Rational(num(rng)) / den(rng));
    std::vector<Rational> values;
    for (long i = 0; i < n; ++i) values.emplace_back(val(rng));
    return StepForm({cuts.begin(), cuts.end()}, values);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pmeasure: modular pseudo-measures on P^1(Q)"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --seed follow the subcommand
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "random seed");
    json result;

    std::string cf_input;
    auto* cf = app.add_subcommand("cf", "continued fraction and convergents of a rational");
    cf->add_option("x", cf_input)->required();
    cf->callback([&] {
        const Rational x = parse_rational(cf_input);
        json conv = json::array();
        for (const auto& c : convergents(x)) conv.push_back(to_string(c));
        result = {{"x", to_string(x)}, {"cf", to_string(cf_expand(x))}, {"convergents", conv}};
    });

    std::string chain_from, chain_to;
    int insertions = 0;
    auto* chain = app.add_subcommand("chain", "primitive chain between two points");
    chain->add_option("from", chain_from)->required();
    chain->add_option("to", chain_to)->required();
    chain->add_option("--randomize", insertions, "random pair/triangle insertions");
    chain->callback([&] {
        std::mt19937_64 rng(seed);
        Chain c = primitive_chain(parse_point(chain_from), parse_point(chain_to));
        if (insertions > 0) c = randomize_chain(c, rng, insertions);
        result = {{"length", c.size()}, {"chain", chain_json(c)}};
    });

    std::vector<std::string> loop_points;
    std::size_t loop_length = 0;
    auto* reduce = app.add_subcommand("reduce-loop", "moves reducing a closed primitive chain to the empty chain");
    reduce->add_option("points", loop_points, "vertices a0 a1 ... ; the loop closes back to a0");
    reduce->add_option("--random-length", loop_length, "reduce a random loop at 0 of this length instead");
    reduce->callback([&] {
        Chain loop;
        if (loop_length > 0) {
            std::mt19937_64 rng(seed);
            loop = random_loop(Point(0), loop_length, rng);
        } else {
            if (loop_points.size() < 2) throw std::invalid_argument("need at least two vertices");
            for (std::size_t i = 0; i < loop_points.size(); ++i)
                loop.emplace_back(parse_point(loop_points[i]), parse_point(loop_points[(i + 1) % loop_points.size()]));
        }
        json moves = json::array();
        Chain work = loop;
        for (const auto& m : reduce_loop(loop)) {
            apply_move(work, m);
            moves.push_back({{"kind", to_string(m.kind)}, {"position", m.position}, {"inserted", chain_json(m.inserted)}});
        }
        result = {{"loop", chain_json(loop)}, {"moves", moves}, {"reduced", work.empty()}};
    });

    int weight = 10;
    auto* seeds = app.add_subcommand("seed-space", "basis of the seed space in weight w");
    seeds->add_option("--weight", weight)->required();
    seeds->callback([&] {
        const PolyGroup group{weight};
        json basis = json::array();
        for (const auto& p : seed_space(group)) basis.push_back(group.to_json(p));
        result = {{"weight", weight}, {"dimension", basis.size()}, {"basis", basis}};
    });

    long hecke_n = 2;
    auto* hecke_cmd = app.add_subcommand("hecke-matrix", "Hecke operator on the seed basis, raw and normalized");
    hecke_cmd->add_option("--weight", weight)->required();
    hecke_cmd->add_option("--n", hecke_n)->required();
    hecke_cmd->callback([&] { result = to_json(hecke_report(weight, hecke_n)); });

    std::size_t truncation = default_truncation(), seed_index = 0;
    bool all_seeds = true;
    auto* lm = app.add_subcommand("levymellin", "Levy-Mellin transforms");
    lm->require_subcommand(1);
    auto* verify = lm->add_subcommand("verify", "compare Z+ Z- LM_mu with the Hecke Dirichlet series");
    verify->add_option("--weight", weight)->required();
    verify->add_option("--trunc", truncation, "number of coefficients (default $PMEASURE_TRUNC or 30)");
    auto* index_opt = verify->add_option("--seed-index", seed_index, "one basis seed instead of all");
    verify->callback([&] {
        const PolyGroup group{weight};
        all_seeds = index_opt->count() == 0;
        const auto basis = seed_space(group);
        json reports = json::array();
        bool all_equal = true;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!all_seeds && i != seed_index) continue;
            const auto report = verify_hecke_series(from_seed(group, basis[i]), truncation);
            all_equal = all_equal && report.all_equal;
            json r = to_json(group, report);
            r["seed_index"] = i;
            reports.push_back(r);
        }
        if (reports.empty()) throw std::invalid_argument("seed index out of range");
        result = {{"weight", weight}, {"truncation", truncation}, {"all_equal", all_equal}, {"reports", reports}};
    });

    std::string measure_text = "seed:w10:0";
    int depth = 4;
    auto* dedekind = app.add_subcommand("dedekind", "reciprocity functions");
    dedekind->require_subcommand(1);
    auto* roundtrip = dedekind->add_subcommand("roundtrip", "measure -> reciprocity family -> measure on descendant arcs");
    roundtrip->add_option("--measure", measure_text);
    roundtrip->add_option("--depth", depth);
    roundtrip->callback([&] {
        result = with_measure(parse_measure(measure_text), [&](const auto& group, const auto& omega) {
            using G = std::decay_t<decltype(group)>;
            const auto mu = from_seed(group, omega);
            ReciprocityFamily<G> family = [mu](const Integer& n) { return reciprocity_from_measure(mu, n); };
            const auto rebuilt = measure_from_reciprocity(group, family, seed_of(mu), 3, 12);
            std::size_t checked = 0;
            bool agree = true;
            for (int d = 0; d <= depth; ++d)
                for (const auto& arc : arcs_at_depth(d)) {
                    ++checked;
                    agree = agree && group.equal(rebuilt(arc.from(), arc.to()), mu(arc.from(), arc.to()));
                }
            return json{{"measure", measure_text},
                        {"arcs_checked", checked},
                        {"agree", agree},
                        {"reciprocity_n0", reciprocity_table(reciprocity_from_measure(mu, Integer(0)), 6)}};
        });
    });

    std::string svg_path;
    auto* current = app.add_subcommand("current", "harmonic currents on the Farey tree");
    current->require_subcommand(1);
    auto* dump = current->add_subcommand("dump", "edge values of the current of a modular measure");
    dump->add_option("--measure", measure_text);
    dump->add_option("--depth", depth);
    dump->add_option("--svg", svg_path, "also write a tessellation picture");
    dump->callback([&] {
        result = with_measure(parse_measure(measure_text), [&](const auto& group, const auto& omega) {
            const auto c = current_from_measure(from_seed(group, omega));
            if (!svg_path.empty()) {
                std::ofstream out(svg_path);
                out << tessellation_svg(depth, [&](const TreeEdge& e) { return group.to_json(c(e)).dump(); });
            }
            return json{{"measure", measure_text}, {"conserved", current_validate(c, depth).passed}, {"edges", current_dump(c, depth)}};
        });
    });

    std::string lcf_text;
    auto* integrate_cmd = app.add_subcommand("integrate", "integral of a locally constant function");
    integrate_cmd->add_option("--function", lcf_text, "JSON list of {arc, coefficient}, or @file")->required();
    integrate_cmd->add_option("--measure", measure_text);
    integrate_cmd->callback([&] {
        const auto f = lcf_from_json(json::parse(read_argument(lcf_text)));
        result = with_measure(parse_measure(measure_text), [&](const auto& group, const auto& omega) {
            return json{{"function", to_json(f)}, {"value", group.to_json(integrate(f, from_seed(group, omega)))}};
        });
    });

    std::string theta_text, mode = "exact";
    std::size_t terms = 100000;
    auto* limsym = app.add_subcommand("limsym", "limiting modular symbol at a quadratic irrational");
    limsym->add_option("--cf", theta_text, "periodic expansion such as [1;(1)]")->required();
    limsym->add_option("--measure", measure_text);
    limsym->add_option("--mode", mode)->check(CLI::IsMember({"exact", "numeric"}));
    limsym->add_option("--n", terms, "terms of the numeric average");
    limsym->callback([&] {
        const PeriodicCF theta = parse_periodic_cf(theta_text);
        const LyapunovExact lambda = lyapunov_exact(theta);
        const MeasureSpec spec = parse_measure(measure_text);
        json out{{"theta", to_string(theta)}, {"measure", measure_text}, {"mode", mode}};
        if (mode == "exact") {
            if (spec.kind != MeasureSpec::Kind::permutation)
                throw std::invalid_argument("exact mode needs a gamma0:<N>:<i> measure; the polynomial averages diverge");
            const auto group = gamma0_module(spec.parameter);
            const auto limit = limiting_measure(from_seed(group, pick_seed(group, spec.index)), theta);
            json value = json::array();
            for (long double v : limit_numeric(group, limit)) value.push_back(static_cast<double>(v));
            out["lambda"] = static_cast<double>(lambda.value);
            out["lambda_exact"] = to_string(lambda);
            out["value"] = value;
            out["value_exact"] = limit_json(group, limit);
            out["gap"] = 0.0;
        } else {
            result = with_measure(spec, [&](const auto& group, const auto& omega) {
                const NumericLimit r = limiting_numeric(group, omega, theta, terms);
                json value = json::array();
                for (long double v : r.value) value.push_back(static_cast<double>(v));
                json o = out;
                o["lambda"] = static_cast<double>(r.lambda);
                o["value"] = value;
                o["gap"] = static_cast<double>(r.gap);
                o["converged"] = r.converged;
                o["terms"] = r.terms;
                if (!r.note.empty()) o["note"] = r.note;
                return o;
            });
            return;
        }
        result = out;
    });

    std::size_t nc_count = 50, nc_order = 3;
    auto* nc = app.add_subcommand("nc", "non-commutative measures");
    nc->require_subcommand(1);
    auto* shuffle = nc->add_subcommand("shuffle-check", "group-likeness of iterated step-form integrals");
    shuffle->add_option("--count", nc_count);
    shuffle->add_option("--order", nc_order);
    shuffle->callback([&] {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> end(-10, 10);
        std::size_t passed = 0;
        json failures = json::array();
        for (std::size_t i = 0; i < nc_count; ++i) {
            const auto j = iterated_measure({random_form(rng), random_form(rng)}, nc_order);
            const Point a(Integer(end(rng))), b(Integer(end(rng)));
            const auto report = shuffle_check(j(a, b));
            if (report.passed) ++passed;
            else failures.push_back({to_string(a), to_string(b)});
        }
        result = {{"order", nc_order}, {"checked", nc_count}, {"passed", passed}, {"all_passed", passed == nc_count}, {"failures", failures}};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << result.dump(2) << "\n";
    return 0;
}
