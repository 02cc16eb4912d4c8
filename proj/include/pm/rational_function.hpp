#pragma once

#include "pm/linalg.hpp"
#include "pm/matrix.hpp"
#include "pm/polynomial.hpp"

#include <json.hpp>

#include <string>

namespace pm {

// num/den over Q with den monic and gcd(num, den) = 1; zero is 0/1.
class RationalFunction {
public:
    RationalFunction() : den_(std::vector<Rational>{1}) {}
    RationalFunction(UniPoly num, UniPoly den);
    explicit RationalFunction(UniPoly num) : RationalFunction(std::move(num), UniPoly(std::vector<Rational>{1})) {}
    static RationalFunction constant(const Rational& c) { return RationalFunction(UniPoly(std::vector<Rational>{c})); }
    // z^m, m of either sign.
    static RationalFunction power(int m);

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // q(g z) for g = (a, b; c, d).
    RationalFunction compose(const RationalMatrix& g) const;

    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x);
    friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y);
    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

private:
    UniPoly num_;
    UniPoly den_;
};

std::string to_string(const RationalFunction& q);

// q(z) (dz)^k. Negative k is allowed so that degree-w polynomials sit at k = -w/2.
struct RationalDifferential {
    int weight = 0;
    RationalFunction q;
    friend bool operator==(const RationalDifferential&, const RationalDifferential&) = default;
};

// Value group W_k: (g q)(z) = q(g^{-1} z) (c z + d)^{-2k}, (c, d) the bottom row of g^{-1}.
struct DifferentialGroup {
    using value_type = RationalFunction;
    int weight = 0;

    RationalFunction zero() const { return {}; }
    RationalFunction add(const RationalFunction& x, const RationalFunction& y) const { return x + y; }
    RationalFunction negate(const RationalFunction& x) const { return -x; }
    bool equal(const RationalFunction& x, const RationalFunction& y) const { return x == y; }
    RationalFunction scale(const Rational& c, const RationalFunction& x) const { return RationalFunction::constant(c) * x; }
    RationalFunction act(const UnimodularMatrix& g, const RationalFunction& x) const { return act_rational(g, x); }
    RationalFunction act_rational(const RationalMatrix& g, const RationalFunction& x) const;
    nlohmann::json to_json(const RationalFunction& x) const;
};

// Both functional equations of a rational period function hold identically.
bool rpf_validate(const RationalDifferential& f);

// P(z, 1) at weight -w/2; requires even w.
RationalDifferential differential_from_poly(const HomogeneousPoly& p);

}  // namespace pm
