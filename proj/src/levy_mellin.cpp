#include "pm/levy_mellin.hpp"

#include <algorithm>
#include <numeric>

namespace pm {

namespace {

void require_pair(long c, long d) {
    const bool marginal = c == 1 && d == 1;
    if (!marginal && !(1 <= c && c < d)) throw std::invalid_argument("need 1 <= c < d or (c, d) = (1, 1)");
    if (std::gcd(c, d) != 1) throw std::invalid_argument("lower row must be coprime");
}

Rational at(const UnimodularMatrix& g, long x) { return g(Point(x)).value(); }

}  // namespace

bool is_reduced(const UnimodularMatrix& g) {
    const bool nonnegative = g.a() >= 0 && g.b() >= 0 && g.c() >= 0 && g.d() >= 0;
    return nonnegative && g.a() <= g.b() && g.c() <= g.d() && g.a() <= g.c() && g.b() <= g.d();
}

ReducedPair reduced_pair(long c, long d) {
    require_pair(c, d);
    if (d == 1) return {UnimodularMatrix(0, 1, 1, 1), std::nullopt};
    const Integer C(c), D(d);
    const Integer b_neg = mod_inverse(C, D);  // determinant -1
    const Integer b_pos = D - b_neg;          // determinant +1
    UnimodularMatrix neg((b_neg * C - 1) / D, b_neg, C, D);
    UnimodularMatrix pos((b_pos * C + 1) / D, b_pos, C, D);
    // the sign of the determinant alternates with the expansion length; the side of 1/2 decides
    if (at(neg, 1) < Rational(1, 2)) return {neg, pos};
    return {pos, neg};
}

bool FareyInterval::contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    return std::find(excluded.begin(), excluded.end(), x) == excluded.end();
}

std::pair<FareyInterval, FareyInterval> farey_interval_pair(long c, long d) {
    ReducedPair r = reduced_pair(c, d);
    if (!r.g_plus) return {{Rational(0), Rational(1, 2), {}}, {Rational(1, 2), Rational(1), {}}};
    const Rational kept = at(r.g_minus, 0), far = at(r.g_minus, 1);
    FareyInterval minus{std::min(kept, far), std::max(kept, far), {far}};
    if (2 * c > d) minus.excluded.push_back(kept);
    FareyInterval plus{1 - minus.hi, 1 - minus.lo, {}};
    for (const auto& e : minus.excluded) plus.excluded.push_back(1 - e);
    return {minus, plus};
}

std::pair<long, long> pair_from_interval(const FareyInterval& minus) {
    if (minus.lo == 0 && minus.hi == Rational(1, 2)) return {1, 1};
    // ends b/d and (a+b)/(c+d)
    const long p = minus.lo.get_den().get_si(), q = minus.hi.get_den().get_si();
    const long d = std::min(p, q);
    return {std::max(p, q) - d, d};
}

std::vector<std::pair<int, std::pair<long, long>>> levy_denominator_pairs(const Rational& alpha, long depth) {
    const Rational x = alpha - Rational(floor(alpha));
    std::vector<std::pair<int, std::pair<long, long>>> out;
    if (x == 0) return out;
    auto collect = [&](int side, std::vector<Integer> partials) {
        Integer q_prev = 1, q = partials.front();  // q_0 = 1, q_1 = a_1
        std::vector<Integer> rest(partials.begin() + 1, partials.end());
        auto emit = [&](const Integer& a, const Integer& b) {
            if (b > depth) return false;
            if (!(a == 1 && b == 1)) out.push_back({side, {a.get_si(), b.get_si()}});
            return true;
        };
        if (!emit(q_prev, q)) return;
        for (const Integer& k : rest) {
            Integer next = k * q + q_prev;
            q_prev = q;
            q = next;
            if (!emit(q_prev, q)) return;
        }
    };
    const ContinuedFraction cf = cf_expand(x);
    const Rational half(1, 2);
    if (x <= half) collect(-1, cf.partials);
    if (x >= half) {
        // the expansion starting with a_1 = 1
        std::vector<Integer> partials = cf.partials;
        if (partials.front() != 1) {
            partials.back() -= 1;
            partials.push_back(1);
        }
        collect(+1, partials);
    }
    return out;
}

GroupRingElement group_ring_sum(const GroupRingElement& x, const GroupRingElement& y) {
    GroupRingElement out = x;
    for (const auto& [g, m] : y) {
        Integer& slot = out[g];
        slot += m;
        if (slot == 0) out.erase(g);
    }
    return out;
}

GroupRingElement group_ring_product(const GroupRingElement& x, const GroupRingElement& y) {
    GroupRingElement out;
    for (const auto& [g, m] : x)
        for (const auto& [h, k] : y) out = group_ring_sum(out, {{g * h, m * k}});
    return out;
}

GroupRingSeries dirichlet_mul(const GroupRingSeries& a, const GroupRingSeries& b) {
    return dirichlet_convolve(a, b, group_ring_product, group_ring_sum);
}

GroupRingSeries argument_shift(const GroupRingSeries& a, unsigned w) {
    GroupRingSeries out{a.truncation, {}};
    for (const auto& [n, e] : a.terms) {
        Integer factor;
        mpz_ui_pow_ui(factor.get_mpz_t(), n, w);
        GroupRingElement scaled;
        for (const auto& [g, m] : e) scaled.emplace(g, m * factor);
        out.terms.emplace(n, scaled);
    }
    return out;
}

GroupRingSeries unit_series(std::size_t truncation) {
    return {truncation, {{1, {{RationalMatrix::identity(), Integer(1)}}}}};
}

GroupRingSeries z_minus(std::size_t truncation) {
    GroupRingSeries out{truncation, {}};
    for (std::size_t n = 1; n <= truncation; ++n)
        out.terms.emplace(n, GroupRingElement{{RationalMatrix::diagonal(1, Rational(1, static_cast<long>(n))), Integer(1)}});
    return out;
}

GroupRingSeries z_plus(std::size_t truncation) {
    GroupRingSeries out{truncation, {}};
    for (std::size_t n = 1; n <= truncation; ++n)
        out.terms.emplace(n, GroupRingElement{{RationalMatrix::diagonal(Rational(1, static_cast<long>(n)), 1), Integer(1)}});
    return out;
}

RationalMatrix lm_matrix(long c, long d) {
    Rational shift(-c, d), scale(1, d);
    shift.canonicalize();
    return RationalMatrix(1, shift, 0, scale);
}

std::vector<HeckeDecomposition> hecke_decompositions(long n) {
    std::vector<HeckeDecomposition> out;
    for (const auto& rep : hecke_representatives(n)) {
        HeckeDecomposition h;
        h.representative = rep;
        const long b = rep.b().get_num().get_si();
        const long big_d = rep.d().get_num().get_si();
        h.d2 = rep.a().get_num().get_si();
        h.d1 = std::gcd(b, big_d);
        h.d = big_d / h.d1;
        h.c = b / h.d1;
        const RationalMatrix product = RationalMatrix::diagonal(Rational(1, h.d2), 1) * RationalMatrix::diagonal(1, Rational(1, h.d1)) *
                                       lm_matrix(h.c, h.d);
        h.factorization_holds = product == rep.inverse();
        out.push_back(h);
    }
    return out;
}

}  // namespace pm
