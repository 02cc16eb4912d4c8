#include "pm/matrix.hpp"

#include <stdexcept>
#include <tuple>

namespace pm {

UnimodularMatrix::UnimodularMatrix(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    Integer det = a_ * d_ - b_ * c_;
    if (det == 1) {
        det_ = 1;
    } else if (det == -1) {
        det_ = -1;
    } else {
        throw std::invalid_argument("determinant is not +-1: " + det.get_str());
    }
}

UnimodularMatrix UnimodularMatrix::inverse() const {
    if (det_ == 1) return {d_, -b_, -c_, a_};
    return {-d_, b_, c_, -a_};
}

UnimodularMatrix UnimodularMatrix::psl_canonical() const {
    bool negate = c_ < 0 || (c_ == 0 && (d_ < 0 || (d_ == 0 && a_ < 0)));
    if (!negate) return *this;
    return {-a_, -b_, -c_, -d_};
}

bool UnimodularMatrix::psl_equal(const UnimodularMatrix& other) const {
    return psl_canonical() == other.psl_canonical();
}

ProjectiveRational UnimodularMatrix::operator()(const ProjectiveRational& x) const {
    return {a_ * x.num() + b_ * x.den(), c_ * x.num() + d_ * x.den()};
}

UnimodularMatrix operator*(const UnimodularMatrix& g, const UnimodularMatrix& h) {
    return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
            g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

namespace {

template <class T>
std::strong_ordering compare_entries(const T& x, const T& y) {
    int c = cmp(x, y);
    return c <=> 0;
}

}  // namespace

std::strong_ordering operator<=>(const UnimodularMatrix& g, const UnimodularMatrix& h) {
    for (auto [x, y] : {std::tie(g.a_, h.a_), std::tie(g.b_, h.b_), std::tie(g.c_, h.c_), std::tie(g.d_, h.d_)}) {
        if (auto c = compare_entries(x, y); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

RationalMatrix::RationalMatrix(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
    if (det() == 0) throw std::invalid_argument("singular matrix");
}

bool RationalMatrix::is_integral() const {
    return a_.get_den() == 1 && b_.get_den() == 1 && c_.get_den() == 1 && d_.get_den() == 1;
}

RationalMatrix RationalMatrix::inverse() const {
    Rational D = det();
    return {d_ / D, -b_ / D, -c_ / D, a_ / D};
}

ProjectiveRational RationalMatrix::operator()(const ProjectiveRational& x) const {
    // Clear denominators so the image is computed on integer homogeneous coordinates.
    Integer L = lcm(lcm(a_.get_den(), b_.get_den()), lcm(c_.get_den(), d_.get_den()));
    Rational s(L);
    Rational top = (a_ * s) * Rational(x.num()) + (b_ * s) * Rational(x.den());
    Rational bottom = (c_ * s) * Rational(x.num()) + (d_ * s) * Rational(x.den());
    return {top.get_num(), bottom.get_num()};
}

RationalMatrix operator*(const RationalMatrix& g, const RationalMatrix& h) {
    return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
            g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_};
}

std::strong_ordering operator<=>(const RationalMatrix& g, const RationalMatrix& h) {
    for (auto [x, y] : {std::tie(g.a_, h.a_), std::tie(g.b_, h.b_), std::tie(g.c_, h.c_), std::tie(g.d_, h.d_)}) {
        if (auto c = compare_entries(x, y); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string to_string(const UnimodularMatrix& g) {
    return "(" + g.a().get_str() + "," + g.b().get_str() + ";" + g.c().get_str() + "," + g.d().get_str() + ")";
}

std::string to_string(const RationalMatrix& g) {
    return "(" + to_string(g.a()) + "," + to_string(g.b()) + ";" + to_string(g.c()) + "," + to_string(g.d()) + ")";
}

}  // namespace pm
