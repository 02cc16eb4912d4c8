#pragma once

#include "pm/arith.hpp"

#include <compare>
#include <string>

namespace pm {

// Integer 2x2 matrix with determinant +1 or -1.
class UnimodularMatrix {
public:
    UnimodularMatrix() : a_(1), b_(0), c_(0), d_(1) {}
    UnimodularMatrix(Integer a, Integer b, Integer c, Integer d);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix sigma() { return {0, -1, 1, 0}; }
    static UnimodularMatrix tau() { return {0, -1, 1, -1}; }
    static UnimodularMatrix shift(const Integer& k) { return {1, k, 0, 1}; }
    static UnimodularMatrix minus_identity() { return {-1, 0, 0, -1}; }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }
    int det() const { return det_; }

    UnimodularMatrix inverse() const;
    // Representative of the class in PSL(2,Z): (c,d) lexicographically positive.
    UnimodularMatrix psl_canonical() const;
    bool psl_equal(const UnimodularMatrix& other) const;

    ProjectiveRational operator()(const ProjectiveRational& x) const;

    friend UnimodularMatrix operator*(const UnimodularMatrix& g, const UnimodularMatrix& h);
    friend bool operator==(const UnimodularMatrix& g, const UnimodularMatrix& h) {
        return g.a_ == h.a_ && g.b_ == h.b_ && g.c_ == h.c_ && g.d_ == h.d_;
    }
    friend std::strong_ordering operator<=>(const UnimodularMatrix& g, const UnimodularMatrix& h);

private:
    Integer a_, b_, c_, d_;
    int det_ = 1;
};

// Invertible 2x2 matrix over Q.
class RationalMatrix {
public:
    RationalMatrix() : a_(1), b_(0), c_(0), d_(1) {}
    RationalMatrix(Rational a, Rational b, Rational c, Rational d);
    RationalMatrix(const UnimodularMatrix& g)  // NOLINT(google-explicit-constructor)
        : RationalMatrix(Rational(g.a()), Rational(g.b()), Rational(g.c()), Rational(g.d())) {}

    static RationalMatrix identity() { return {}; }
    static RationalMatrix diagonal(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }
    Rational det() const { return a_ * d_ - b_ * c_; }
    bool positive() const { return det() > 0; }
    bool is_integral() const;

    RationalMatrix inverse() const;
    ProjectiveRational operator()(const ProjectiveRational& x) const;

    friend RationalMatrix operator*(const RationalMatrix& g, const RationalMatrix& h);
    friend bool operator==(const RationalMatrix& g, const RationalMatrix& h) {
        return g.a_ == h.a_ && g.b_ == h.b_ && g.c_ == h.c_ && g.d_ == h.d_;
    }
    friend std::strong_ordering operator<=>(const RationalMatrix& g, const RationalMatrix& h);

private:
    Rational a_, b_, c_, d_;
};

std::string to_string(const UnimodularMatrix& g);
std::string to_string(const RationalMatrix& g);

template <class M>
ProjectiveRational moebius(const M& g, const ProjectiveRational& x) {
    return g(x);
}

}  // namespace pm
