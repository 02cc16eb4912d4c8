#include "pm/polynomial.hpp"

#include <stdexcept>

namespace pm {

HomogeneousPoly::HomogeneousPoly(int w, std::vector<Rational> c) : weight(w), coeffs(std::move(c)) {
    if (w < 0) throw std::invalid_argument("negative polynomial degree");
    if (coeffs.size() != static_cast<std::size_t>(w) + 1) throw std::invalid_argument("coefficient count must be w + 1");
}

HomogeneousPoly HomogeneousPoly::monomial(int w, int i, const Rational& c) {
    HomogeneousPoly p = zero(w);
    p.coeffs.at(static_cast<std::size_t>(i)) = c;
    return p;
}

Rational HomogeneousPoly::at(const Rational& x, const Rational& y) const {
    Rational total = 0;
    for (int i = 0; i <= weight; ++i) {
        Rational term = coeffs[static_cast<std::size_t>(i)];
        if (term == 0) continue;
        for (int k = 0; k < weight - i; ++k) term *= x;
        for (int k = 0; k < i; ++k) term *= y;
        total += term;
    }
    return total;
}

bool HomogeneousPoly::is_zero() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

namespace {

void require_same_weight(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    if (p.weight != q.weight) throw std::invalid_argument("polynomial degree mismatch");
}

// Coefficients of (u X + v Y)^n, index j multiplying X^(n-j) Y^j.
std::vector<Rational> linear_power(const Rational& u, const Rational& v, int n) {
    std::vector<Rational> out{1};
    for (int k = 0; k < n; ++k) {
        std::vector<Rational> next(out.size() + 1);
        for (std::size_t j = 0; j < out.size(); ++j) {
            next[j] += out[j] * u;
            next[j + 1] += out[j] * v;
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

HomogeneousPoly operator+(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    require_same_weight(p, q);
    HomogeneousPoly r = p;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += q.coeffs[i];
    return r;
}

HomogeneousPoly operator-(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    require_same_weight(p, q);
    HomogeneousPoly r = p;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= q.coeffs[i];
    return r;
}

HomogeneousPoly operator-(const HomogeneousPoly& p) {
    HomogeneousPoly r = p;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

HomogeneousPoly operator*(const Rational& c, const HomogeneousPoly& p) {
    HomogeneousPoly r = p;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

std::string to_string(const HomogeneousPoly& p) {
    std::string out;
    for (int i = 0; i <= p.weight; ++i) {
        const Rational& c = p.coeffs[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        int xe = p.weight - i, ye = i;
        bool constant = xe == 0 && ye == 0;
        if (a != 1 || constant) {
            out += a.get_den() == 1 ? a.get_num().get_str() : a.get_str();
            if (!constant) out += "*";
        }
        if (xe > 0) out += xe == 1 ? "X" : "X^" + std::to_string(xe);
        if (xe > 0 && ye > 0) out += "*";
        if (ye > 0) out += ye == 1 ? "Y" : "Y^" + std::to_string(ye);
    }
    return out.empty() ? "0" : out;
}

HomogeneousPoly parse_poly_coeffs(int w, const std::vector<std::string>& coeffs) {
    std::vector<Rational> c;
    for (const auto& s : coeffs) c.push_back(parse_rational(s));
    return HomogeneousPoly(w, std::move(c));
}

HomogeneousPoly poly_right_action(const HomogeneousPoly& p, const RationalMatrix& g) {
    const int w = p.weight;
    const Rational det = g.det();
    const Rational a = g.a() / det, b = g.b() / det, c = g.c() / det, d = g.d() / det;
    std::vector<std::vector<Rational>> first, second;
    for (int n = 0; n <= w; ++n) {
        first.push_back(linear_power(a, b, n));
        second.push_back(linear_power(c, d, n));
    }
    HomogeneousPoly out = HomogeneousPoly::zero(w);
    for (int i = 0; i <= w; ++i) {
        const Rational& coeff = p.coeffs[static_cast<std::size_t>(i)];
        if (coeff == 0) continue;
        const auto& u = first[static_cast<std::size_t>(w - i)];
        const auto& v = second[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (u[j] == 0) continue;
            for (std::size_t k = 0; k < v.size(); ++k) out.coeffs[j + k] += coeff * u[j] * v[k];
        }
    }
    return out;
}

HomogeneousPoly poly_left_action(const RationalMatrix& g, const HomogeneousPoly& p) {
    return poly_right_action(p, g.inverse());
}

nlohmann::json PolyGroup::to_json(const HomogeneousPoly& x) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : x.coeffs) out.push_back(pm::to_string(c));
    return out;
}

}  // namespace pm
