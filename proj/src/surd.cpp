#include "pm/surd.hpp"

#include <cmath>
#include <stdexcept>

namespace pm {

namespace {

// (square part s, squarefree part f) with n = s^2 f.
std::pair<Integer, Integer> split_square(Integer n) {
    Integer s = 1, f = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
        if (n % p == 0) {
            n /= p;
            f *= p;
        }
    }
    return {s, f * n};
}

Integer common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.is_rational()) return y.radicand();
    if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
    throw std::domain_error("surds from different quadratic fields");
}

}  // namespace

QuadraticSurd::QuadraticSurd(const Rational& a, const Rational& b, const Integer& radicand) : a_(a), b_(b), d_(radicand) {
    if (radicand <= 0) throw std::domain_error("radicand must be positive");
    auto [s, f] = split_square(radicand);
    b_ *= s;
    d_ = f;
    normalize();
}

void QuadraticSurd::normalize() {
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (b_ == 0) d_ = 1;
}

QuadraticSurd QuadraticSurd::conjugate() const {
    QuadraticSurd out = *this;
    out.b_ = -b_;
    return out;
}

int QuadraticSurd::sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 D
    const int c = cmp(a_ * a_, b_ * b_ * d_);
    return c > 0 ? sa : sb;
}

long double QuadraticSurd::to_long_double() const {
    return static_cast<long double>(a_.get_d()) + static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(d_.get_d()));
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    QuadraticSurd out;
    out.d_ = common_radicand(x, y);
    out.a_ = x.a_ + y.a_;
    out.b_ = x.b_ + y.b_;
    out.normalize();
    return out;
}

QuadraticSurd operator-(const QuadraticSurd& x) {
    QuadraticSurd out = x;
    out.a_ = -x.a_;
    out.b_ = -x.b_;
    return out;
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    QuadraticSurd out;
    out.d_ = common_radicand(x, y);
    out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * out.d_;
    out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    out.normalize();
    return out;
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
    const Rational n = y.norm();
    if (n == 0) throw std::domain_error("division by zero");
    QuadraticSurd out = x * y.conjugate();
    out.a_ /= n;
    out.b_ /= n;
    out.normalize();
    return out;
}

std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool SurdKeyLess::operator()(const QuadraticSurd& x, const QuadraticSurd& y) const {
    if (x.radicand() != y.radicand()) return x.radicand() < y.radicand();
    if (x.rational_part() != y.rational_part()) return x.rational_part() < y.rational_part();
    return x.surd_part() < y.surd_part();
}

QuadraticSurd pow(const QuadraticSurd& x, unsigned n) {
    QuadraticSurd result(Rational(1)), base = x;
    while (n) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n) base = base * base;
    }
    return result;
}

QuadraticSurd moebius(const UnimodularMatrix& g, const QuadraticSurd& x) {
    const QuadraticSurd num = QuadraticSurd(Rational(g.a())) * x + QuadraticSurd(Rational(g.b()));
    const QuadraticSurd den = QuadraticSurd(Rational(g.c())) * x + QuadraticSurd(Rational(g.d()));
    return num / den;
}

int compare(const QuadraticSurd& x, const Point& r) {
    if (r.is_infinite()) return -1;
    return (x - QuadraticSurd(r.value())).sign();
}

std::string to_string(const QuadraticSurd& x) {
    if (x.is_rational()) return to_string(x.rational_part());
    return to_string(x.rational_part()) + " + " + to_string(x.surd_part()) + "*sqrt(" + x.radicand().get_str() + ")";
}

}  // namespace pm
