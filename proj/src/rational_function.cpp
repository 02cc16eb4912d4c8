#include "pm/rational_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace pm {

namespace {

UniPoly scaled(const Rational& c, const UniPoly& p) { return UniPoly(std::vector<Rational>{c}) * p; }

UniPoly poly_pow(const UniPoly& p, int n) {
    UniPoly out(std::vector<Rational>{1});
    for (int i = 0; i < n; ++i) out = out * p;
    return out;
}

// p(g z) * (c z + d)^n with n >= deg p.
UniPoly homogenized_compose(const UniPoly& p, const RationalMatrix& g, int n) {
    const UniPoly top(std::vector<Rational>{g.b(), g.a()});
    const UniPoly bottom(std::vector<Rational>{g.d(), g.c()});
    UniPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        const Rational c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        out = out + scaled(c, poly_pow(top, i) * poly_pow(bottom, n - i));
    }
    return out;
}

RationalFunction raise(const RationalFunction& base, int m) {
    RationalFunction out = RationalFunction::constant(1);
    for (int i = 0; i < std::abs(m); ++i) out = m > 0 ? out * base : out / base;
    return out;
}

}  // namespace

RationalFunction::RationalFunction(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
        den_ = UniPoly(std::vector<Rational>{1});
        return;
    }
    UniPoly g = gcd(num_, den_);
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
    const Rational lead = den_.coeff(static_cast<std::size_t>(den_.degree()));
    num_ = scaled(1 / lead, num_);
    den_ = den_.monic();
}

RationalFunction RationalFunction::power(int m) {
    UniPoly z = UniPoly::monomial(1, static_cast<std::size_t>(std::abs(m)));
    return m >= 0 ? RationalFunction(z) : RationalFunction(UniPoly(std::vector<Rational>{1}), z);
}

RationalFunction RationalFunction::compose(const RationalMatrix& g) const {
    const int n = std::max({num_.degree(), den_.degree(), 0});
    return RationalFunction(homogenized_compose(num_, g, n), homogenized_compose(den_, g, n));
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    return RationalFunction(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

RationalFunction operator-(const RationalFunction& x) { return RationalFunction(UniPoly() - x.num_, x.den_); }

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + (-y); }

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    return RationalFunction(x.num_ * y.num_, x.den_ * y.den_);
}

RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
    if (y.is_zero()) throw std::domain_error("division by the zero function");
    return RationalFunction(x.num_ * y.den_, x.den_ * y.num_);
}

std::string to_string(const RationalFunction& q) {
    if (q.den().degree() == 0) return to_string(q.num(), "z");
    return "(" + to_string(q.num(), "z") + ")/(" + to_string(q.den(), "z") + ")";
}

RationalFunction DifferentialGroup::act_rational(const RationalMatrix& g, const RationalFunction& x) const {
    const RationalMatrix inv = g.inverse();
    // (c z + d)/det, so that the polynomial correspondence holds for every det
    RationalFunction factor(UniPoly(std::vector<Rational>{inv.d() / inv.det(), inv.c() / inv.det()}));
    return x.compose(inv) * raise(factor, -2 * weight);
}

nlohmann::json DifferentialGroup::to_json(const RationalFunction& x) const {
    auto coeffs = [](const UniPoly& p) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& c : p.coeffs()) out.push_back(to_string(c));
        return out;
    };
    return {{"num", coeffs(x.num())}, {"den", coeffs(x.den())}};
}

bool rpf_validate(const RationalDifferential& f) {
    const DifferentialGroup group{f.weight};
    const RationalFunction& q = f.q;
    const auto sigma = UnimodularMatrix::sigma();
    const auto tau = UnimodularMatrix::tau();
    if (!(q + group.act(sigma, q)).is_zero()) return false;
    return (q + group.act(tau, q) + group.act(tau * tau, q)).is_zero();
}

RationalDifferential differential_from_poly(const HomogeneousPoly& p) {
    if (p.weight % 2 != 0) throw std::invalid_argument("odd degree has no integral differential weight");
    return {-p.weight / 2, RationalFunction(UniPoly(std::vector<Rational>(p.coeffs.rbegin(), p.coeffs.rend())))};
}

}  // namespace pm
