#pragma once

#include "pm/arith.hpp"
#include "pm/matrix.hpp"

#include <compare>
#include <string>

namespace pm {

// a + b sqrt(D) with D > 1 squarefree, or a rational (b = 0, D = 1).
class QuadraticSurd {
public:
    QuadraticSurd() : a_(0), b_(0), d_(1) {}
    QuadraticSurd(const Rational& a) : a_(a), b_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
    // a + b sqrt(radicand); square factors of the radicand are pulled out.
    QuadraticSurd(const Rational& a, const Rational& b, const Integer& radicand);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Integer& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    QuadraticSurd conjugate() const;
    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }
    Rational trace() const { return 2 * a_; }
    int sign() const;
    long double to_long_double() const;

    friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator-(const QuadraticSurd& x);
    friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
    friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
    // Real order.
    friend std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y);

private:
    void normalize();
    Rational a_, b_;
    Integer d_;
};

// Structural order (radicand, then parts) for use as a map key.
struct SurdKeyLess {
    bool operator()(const QuadraticSurd& x, const QuadraticSurd& y) const;
};

QuadraticSurd pow(const QuadraticSurd& x, unsigned n);
// g(x) = (a x + b) / (c x + d); x irrational or c x + d != 0.
QuadraticSurd moebius(const UnimodularMatrix& g, const QuadraticSurd& x);
// sign of x - r, with r = inf treated as +inf.
int compare(const QuadraticSurd& x, const Point& r);

// "1/2 + 3/2*sqrt(5)"
std::string to_string(const QuadraticSurd& x);

}  // namespace pm
