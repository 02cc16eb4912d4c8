#include "pm/continued_fraction.hpp"

#include <stdexcept>

namespace pm {

Rational ContinuedFraction::value() const {
    if (partials.empty()) return Rational(k0);
    Rational tail(partials.back());
    for (auto it = partials.rbegin() + 1; it != partials.rend(); ++it) {
        tail = Rational(*it) + 1 / tail;
    }
    return Rational(k0) + 1 / tail;
}

ContinuedFraction cf_expand(const Rational& x) {
    ContinuedFraction cf;
    cf.k0 = floor(x);
    Integer p = x.get_num() - cf.k0 * x.get_den();
    Integer q = x.get_den();
    // Euclid on (q, p): the fractional part is p/q with 0 <= p < q.
    while (p != 0) {
        Integer k = floor_div(q, p);
        Integer r = q - k * p;
        cf.partials.push_back(k);
        q = p;
        p = r;
    }
    return cf;
}

std::string to_string(const ContinuedFraction& cf) {
    std::string out = "[" + cf.k0.get_str() + ";";
    for (std::size_t i = 0; i < cf.partials.size(); ++i) {
        if (i > 0) out += ",";
        out += cf.partials[i].get_str();
    }
    return out + "]";
}

ContinuedFraction parse_cf(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw std::invalid_argument("continued fraction must look like [k0;k1,...]");
    }
    std::string body(text.substr(1, text.size() - 2));
    ContinuedFraction cf;
    auto semi = body.find(';');
    std::string head = semi == std::string::npos ? body : body.substr(0, semi);
    if (cf.k0.set_str(head, 10) != 0) throw std::invalid_argument("bad integer part in " + std::string(text));
    if (semi == std::string::npos) return cf;
    std::string rest = body.substr(semi + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        Integer k;
        if (k.set_str(item, 10) != 0 || k < 1) throw std::invalid_argument("bad partial quotient '" + item + "'");
        cf.partials.push_back(k);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!cf.partials.empty() && cf.partials.back() < 2) {
        throw std::invalid_argument("last partial quotient must be >= 2");
    }
    return cf;
}

std::vector<ProjectiveRational> convergents(const Rational& x) {
    ContinuedFraction cf = cf_expand(x);
    std::vector<ProjectiveRational> out;
    out.reserve(cf.partials.size() + 2);
    out.push_back(ProjectiveRational::infinity());
    Integer p_prev = 1, q_prev = 0;
    Integer p = cf.k0, q = 1;
    out.emplace_back(p, q);
    for (const Integer& k : cf.partials) {
        Integer p_next = k * p + p_prev;
        Integer q_next = k * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        out.emplace_back(p, q);
    }
    return out;
}

std::vector<UnimodularMatrix> gk_matrices(const Rational& x) {
    ContinuedFraction cf = cf_expand(x);
    std::vector<Integer> ps{1, cf.k0};
    std::vector<Integer> qs{0, 1};
    for (const Integer& k : cf.partials) {
        ps.push_back(k * ps.back() + ps[ps.size() - 2]);
        qs.push_back(k * qs.back() + qs[qs.size() - 2]);
    }
    // ps[j] holds p_{j-1}.
    std::vector<UnimodularMatrix> out;
    out.reserve(ps.size() - 1);
    for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
        long k = static_cast<long>(j) - 1;
        int s = (k + 1) % 2 == 0 ? 1 : -1;
        out.emplace_back(ps[j], s * ps[j + 1], qs[j], s * qs[j + 1]);
    }
    return out;
}

}  // namespace pm
