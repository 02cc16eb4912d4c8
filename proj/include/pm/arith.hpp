#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace pm {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& z);
// Always "p/q", including integers ("5/1").
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& q);
Integer mod_inverse(const Integer& a, const Integer& m);

// A point of P^1(Q) in lowest terms; infinity is stored as 1/0.
class ProjectiveRational {
public:
    ProjectiveRational() : num_(0), den_(1) {}
    ProjectiveRational(const Integer& num, const Integer& den);
    ProjectiveRational(const Rational& q);  // NOLINT(google-explicit-constructor)
    ProjectiveRational(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

    static ProjectiveRational infinity() { return {Integer(1), Integer(0)}; }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_infinite() const { return den_ == 0; }
    bool is_integer() const { return den_ == 1; }
    Rational value() const;  // precondition: finite

    friend bool operator==(const ProjectiveRational& x, const ProjectiveRational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    // Total order for containers: infinity first, then increasing reals.
    friend std::strong_ordering operator<=>(const ProjectiveRational& x, const ProjectiveRational& y);

private:
    Integer num_;
    Integer den_;
};

using Point = ProjectiveRational;

// "p/q" for finite points, "inf" for infinity.
std::string to_string(const ProjectiveRational& x);
ProjectiveRational parse_point(std::string_view text);

// ad - bc for x = a/c, y = b/d (signed).
Integer cross(const ProjectiveRational& x, const ProjectiveRational& y);

struct PointHash {
    std::size_t operator()(const ProjectiveRational& x) const noexcept;
};

}  // namespace pm
