#include "pm/arith.hpp"

#include <stdexcept>

namespace pm {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer p = parse_integer(text.substr(0, slash));
    Integer q = parse_integer(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::invalid_argument("not invertible modulo " + m.get_str());
    }
    return r;
}

ProjectiveRational::ProjectiveRational(const Integer& num, const Integer& den) : num_(num), den_(den) {
    if (num_ == 0 && den_ == 0) throw std::invalid_argument("(0,0) is not a point of P^1");
    if (den_ == 0) {
        num_ = 1;
        return;
    }
    Integer g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

ProjectiveRational::ProjectiveRational(const Rational& q) : num_(q.get_num()), den_(q.get_den()) {}

Rational ProjectiveRational::value() const {
    if (is_infinite()) throw std::domain_error("infinity has no rational value");
    return Rational(num_, den_);
}

std::strong_ordering operator<=>(const ProjectiveRational& x, const ProjectiveRational& y) {
    if (x.is_infinite() || y.is_infinite()) {
        return static_cast<int>(!x.is_infinite()) <=> static_cast<int>(!y.is_infinite());
    }
    int c = cmp(x.num_ * y.den_, y.num_ * x.den_);
    return c <=> 0;
}

std::string to_string(const ProjectiveRational& x) {
    if (x.is_infinite()) return "inf";
    return x.num().get_str() + "/" + x.den().get_str();
}

ProjectiveRational parse_point(std::string_view text) {
    if (text == "inf" || text == "1/0" || text == "oo" || text == "∞") return ProjectiveRational::infinity();
    return ProjectiveRational(parse_rational(text));
}

Integer cross(const ProjectiveRational& x, const ProjectiveRational& y) {
    return x.num() * y.den() - y.num() * x.den();
}

std::size_t PointHash::operator()(const ProjectiveRational& x) const noexcept {
    std::size_t h1 = mpz_fdiv_ui(x.num().get_mpz_t(), 1000000007UL);
    std::size_t h2 = mpz_fdiv_ui(x.den().get_mpz_t(), 998244353UL);
    return h1 * 1315423911u ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6));
}

}  // namespace pm
