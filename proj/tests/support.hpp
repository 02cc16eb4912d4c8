#pragma once

#include "pm/arith.hpp"
#include "pm/farey.hpp"
#include "pm/measure.hpp"

#include <random>

namespace pm::testing {

inline Point pt(long p, long q = 1) { return Point(Integer(p), Integer(q)); }
inline Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// An additive measure with potential h: mu(a, b) = h(b) - h(a).
inline PseudoMeasure<RationalGroup> potential_measure() {
    auto h = [](const Point& x) -> Rational {
        if (x.is_infinite()) return Rational(7, 3);
        Rational v(x.num() * x.num() - 3 * x.den(), x.den() * x.den() + 1);
        v.canonicalize();
        return v;
    };
    return PseudoMeasure<RationalGroup>({}, [h](const Segment& s) -> Rational { return h(s.to()) - h(s.from()); });
}

inline UnimodularMatrix random_sl2(std::mt19937_64& rng, int letters = 6) {
    std::uniform_int_distribution<int> coin(0, 2);
    UnimodularMatrix g;
    for (int i = 0; i < letters; ++i) {
        switch (coin(rng)) {
            case 0: g = g * UnimodularMatrix::sigma(); break;
            case 1: g = g * UnimodularMatrix::tau(); break;
            default: g = g * UnimodularMatrix::shift(1); break;
        }
    }
    return g;
}

inline RationalMatrix random_rational_matrix(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> entry(-7, 7);
    for (;;) {
        Rational a = rat(entry(rng), 1 + std::abs(entry(rng))), b = rat(entry(rng)), c = rat(entry(rng)),
                 d = rat(entry(rng), 1 + std::abs(entry(rng)));
        if (a * d - b * c != 0) return RationalMatrix(a, b, c, d);
    }
}

}  // namespace pm::testing
