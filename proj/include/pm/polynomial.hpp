#pragma once

#include "pm/arith.hpp"
#include "pm/linalg.hpp"
#include "pm/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pm {

// Homogeneous polynomial of degree w in X, Y; coeffs[i] multiplies X^(w-i) Y^i.
struct HomogeneousPoly {
    int weight = 0;
    std::vector<Rational> coeffs;

    HomogeneousPoly() : coeffs(1) {}
    HomogeneousPoly(int w, std::vector<Rational> c);
    static HomogeneousPoly zero(int w) { return HomogeneousPoly(w, std::vector<Rational>(static_cast<std::size_t>(w) + 1)); }
    // c X^(w-i) Y^i
    static HomogeneousPoly monomial(int w, int i, const Rational& c = 1);

    Rational at(const Rational& x, const Rational& y) const;
    bool is_zero() const;

    friend bool operator==(const HomogeneousPoly&, const HomogeneousPoly&) = default;
    friend HomogeneousPoly operator+(const HomogeneousPoly& p, const HomogeneousPoly& q);
    friend HomogeneousPoly operator-(const HomogeneousPoly& p, const HomogeneousPoly& q);
    friend HomogeneousPoly operator-(const HomogeneousPoly& p);
    friend HomogeneousPoly operator*(const Rational& c, const HomogeneousPoly& p);
};

// "X^2 - Y^2" style rendering.
std::string to_string(const HomogeneousPoly& p);
HomogeneousPoly parse_poly_coeffs(int w, const std::vector<std::string>& coeffs);

// P((aX + bY)/det, (cX + dY)/det).
HomogeneousPoly poly_right_action(const HomogeneousPoly& p, const RationalMatrix& g);
// g[P] = P g^{-1}; a left action.
HomogeneousPoly poly_left_action(const RationalMatrix& g, const HomogeneousPoly& p);

// Value group F_w with the left action above.
struct PolyGroup {
    using value_type = HomogeneousPoly;
    int weight = 0;

    HomogeneousPoly zero() const { return HomogeneousPoly::zero(weight); }
    HomogeneousPoly add(const HomogeneousPoly& x, const HomogeneousPoly& y) const { return x + y; }
    HomogeneousPoly negate(const HomogeneousPoly& x) const { return -x; }
    bool equal(const HomogeneousPoly& x, const HomogeneousPoly& y) const { return x == y; }
    HomogeneousPoly scale(const Rational& c, const HomogeneousPoly& x) const { return c * x; }
    HomogeneousPoly act(const UnimodularMatrix& g, const HomogeneousPoly& x) const { return poly_left_action(g, x); }
    HomogeneousPoly act_rational(const RationalMatrix& g, const HomogeneousPoly& x) const { return poly_left_action(g, x); }
    nlohmann::json to_json(const HomogeneousPoly& x) const;

    // Linear structure used by the seed-space solver.
    std::size_t dimension() const { return static_cast<std::size_t>(weight) + 1; }
    Vector coordinates(const HomogeneousPoly& x) const { return x.coeffs; }
    HomogeneousPoly from_coordinates(const Vector& v) const { return HomogeneousPoly(weight, v); }
};

}  // namespace pm
