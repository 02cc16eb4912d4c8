#include "pm/gauss.hpp"

#include <algorithm>
#include <cctype>

namespace pm {

namespace {

Integer floor_of_inverse(const Rational& x) {
    // floor(1/|x|) for x != 0
    const Rational inv = 1 / abs(x);
    return floor(inv);
}

UnimodularMatrix partial_matrix(const Integer& a) { return UnimodularMatrix(a, 1, 1, 0); }

UnimodularMatrix period_matrix(const std::vector<Integer>& period) {
    UnimodularMatrix m;
    for (const auto& a : period) m = m * partial_matrix(a);
    return m;
}

std::vector<Integer> minimal_period(const std::vector<Integer>& period) {
    const std::size_t p = period.size();
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d) continue;
        bool repeats = true;
        for (std::size_t i = d; i < p && repeats; ++i) repeats = period[i] == period[i - d];
        if (repeats) return {period.begin(), period.begin() + static_cast<long>(d)};
    }
    return period;
}

}  // namespace

Rational gauss_shift(const Rational& x) {
    if (abs(x) > 1) throw std::domain_error("gauss_shift needs |x| <= 1");
    if (x == 0) return 0;
    const Rational inv = 1 / abs(x);
    return -sign(x) * (inv - Rational(floor(inv)));
}

ShiftStep generalized_shift(const Rational& x, std::size_t coset, const CosetTable& cosets) {
    if (x == 0) throw std::domain_error("the orbit has terminated");
    if (abs(x) > 1) throw std::domain_error("generalized_shift needs |x| <= 1");
    const Integer k = sign(x) * floor_of_inverse(x);
    const Rational next = k - 1 / x;
    const UnimodularMatrix step = UnimodularMatrix::sigma() * UnimodularMatrix::shift(k);
    return {next, cosets.right_multiply(coset, step).first, k};
}

UnimodularMatrix iterate_matrix(const Rational& x, std::size_t n) {
    UnimodularMatrix m;
    Rational current = x;
    for (std::size_t i = 0; i < n; ++i) {
        if (current == 0) throw std::domain_error("the orbit terminates before n steps");
        const Integer k = sign(current) * floor_of_inverse(current);
        m = m * UnimodularMatrix::sigma() * UnimodularMatrix::shift(k);
        current = k - 1 / current;
    }
    return m;
}

bool admissible(const ShiftLetter& a, const ShiftLetter& b, const CosetTable& cosets) {
    if (a.x == 0 || b.x == 0) throw std::invalid_argument("shift letters are nonzero");
    if (sgn(a.x) * sgn(b.x) >= 0) return false;
    return b.coset == cosets.right_multiply(a.coset, UnimodularMatrix::sigma() * UnimodularMatrix::shift(a.x)).first;
}

bool admissible_variant(const ShiftLetter& a, const ShiftLetter& b, const CosetTable& cosets) {
    if (a.x == 0 || b.x == 0) throw std::invalid_argument("shift letters are nonzero");
    if (sgn(a.x) * sgn(b.x) >= 0) return false;
    return a.coset == cosets.right_multiply(b.coset, UnimodularMatrix::sigma() * UnimodularMatrix::shift(b.x)).first;
}

int admissibility_product(const std::vector<ShiftLetter>& xs, const std::vector<ShiftLetter>& ys, const ShiftLetter& b,
                          const CosetTable& cosets) {
    for (const auto& x : xs)
        if (!admissible(x, b, cosets)) return 0;
    for (const auto& y : ys)
        if (admissible(y, b, cosets)) return 0;
    return 1;
}

PeriodicCF::PeriodicCF(std::vector<Integer> preperiod, std::vector<Integer> period) : pre_(std::move(preperiod)) {
    if (period.empty()) throw std::invalid_argument("the period must be non-empty");
    for (const auto& c : period)
        if (c < 1) throw std::invalid_argument("period terms must be >= 1");
    for (std::size_t i = 1; i < pre_.size(); ++i)
        if (pre_[i] < 1) throw std::invalid_argument("partial quotients after the first must be >= 1");
    period_ = minimal_period(period);
    // [.., x, (.., x)] = [.., (x, ..)]
    while (!pre_.empty() && pre_.back() == period_.back()) {
        pre_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

const Integer& PeriodicCF::term(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return period_[(i - pre_.size()) % period_.size()];
}

QuadraticSurd PeriodicCF::value() const {
    // y = [(c_0, ..., c_{p-1})] solves Q y^2 + (Q' - P) y - P' = 0 for (P, P'; Q, Q') = prod (c_i, 1; 1, 0)
    const UnimodularMatrix m = period_matrix(period_);
    const Integer P = m.a(), P1 = m.b(), Q = m.c(), Q1 = m.d();
    const Integer disc = (Q1 - P) * (Q1 - P) + 4 * Q * P1;
    const QuadraticSurd y(Rational(P - Q1) / Rational(2 * Q), Rational(1) / Rational(2 * Q), disc);
    UnimodularMatrix front;
    for (const auto& a : pre_) front = front * partial_matrix(a);
    return moebius(front, y);
}

PeriodicCF parse_periodic_cf(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.size() < 4 || s.front() != '[' || s.back() != ']') throw std::invalid_argument("expected [a0;a1,...,(c0,...)]");
    s = s.substr(1, s.size() - 2);
    const auto open = s.find('('), close = s.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != s.size())
        throw std::invalid_argument("the period goes in parentheses at the end");
    auto split = [](const std::string& part) {
        std::vector<Integer> out;
        std::size_t start = 0;
        while (start < part.size()) {
            std::size_t end = part.find(',', start);
            if (end == std::string::npos) end = part.size();
            const std::string item = part.substr(start, end - start);
            if (item.empty()) throw std::invalid_argument("empty partial quotient");
            try {
                out.emplace_back(item);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad partial quotient: " + item);
            }
            start = end + 1;
        }
        return out;
    };
    std::string head = s.substr(0, open);
    std::vector<Integer> pre;
    if (!head.empty()) {
        const auto semi = head.find(';');
        if (semi == std::string::npos) throw std::invalid_argument("the integer part ends with ';'");
        pre.emplace_back(head.substr(0, semi));
        std::string rest = head.substr(semi + 1);
        if (!rest.empty()) {
            if (rest.back() != ',') throw std::invalid_argument("expected ',' before the period");
            rest.pop_back();
            for (auto& a : split(rest)) pre.push_back(a);
        }
    }
    return PeriodicCF(std::move(pre), split(s.substr(open + 1, close - open - 1)));
}

std::string to_string(const PeriodicCF& cf) {
    std::string out = "[";
    const auto& pre = cf.preperiod();
    for (std::size_t i = 0; i < pre.size(); ++i) out += pre[i].get_str() + (i == 0 ? ";" : ",");
    out += "(";
    for (std::size_t i = 0; i < cf.period().size(); ++i) out += (i ? "," : "") + cf.period()[i].get_str();
    return out + ")]";
}

UnimodularMatrix convergent_step(std::size_t j, const Integer& next_partial) {
    const long s = j % 2 == 0 ? 1 : -1;  // (-1)^j
    return UnimodularMatrix(0, -s, s, -next_partial);
}

LyapunovExact lyapunov_exact(const PeriodicCF& theta) {
    const UnimodularMatrix m = period_matrix(theta.period());
    const Integer t = m.a() + m.d();
    const long delta = m.det();
    const QuadraticSurd rho(Rational(t) / 2, Rational(1, 2), t * t - 4 * delta);
    LyapunovExact out{rho, rho, Rational(2) / static_cast<long>(theta.period().size()), 0};
    // least root: rho = unit^m with unit = (t' + sqrt(t'^2 - 4 nu)) / 2, nu = +-1
    const long double log_rho = std::log(rho.to_long_double());
    const long double log_golden = std::log((1.0L + std::sqrt(5.0L)) / 2.0L);
    const long max_power = static_cast<long>(log_rho / log_golden + 1e-9L);
    for (long power = max_power; power >= 2; --power) {
        const long double root = std::exp(log_rho / static_cast<long double>(power));
        bool found = false;
        for (long nu : {1L, -1L}) {
            const long trace = std::lround(root + static_cast<long double>(nu) / root);
            if (trace < 1 || trace * trace - 4 * nu <= 0) continue;
            const QuadraticSurd unit(Rational(trace) / 2, Rational(1, 2), Integer(trace * trace - 4 * nu));
            if (unit.is_rational() || pow(unit, static_cast<unsigned>(power)) != rho) continue;
            out.unit = unit;
            out.coefficient *= power;
            found = true;
            break;
        }
        if (found) break;
    }
    out.value = static_cast<long double>(out.coefficient.get_d()) * std::log(out.unit.to_long_double());
    return out;
}

long double lyapunov_estimate(const PeriodicCF& theta, std::size_t n) {
    if (n == 0) throw std::invalid_argument("n >= 1");
    Integer q_prev = 0, q = 1;  // q_{-1}, q_0
    for (std::size_t i = 1; i <= n; ++i) {
        Integer next = theta.term(i) * q + q_prev;
        q_prev = q;
        q = next;
    }
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, q.get_mpz_t());
    const long double log_q = std::log(static_cast<long double>(mantissa)) + static_cast<long double>(exponent) * std::log(2.0L);
    return 2.0L * log_q / static_cast<long double>(n);
}

std::string to_string(const LyapunovExact& l) { return to_string(l.coefficient) + "*log(" + to_string(l.unit) + ")"; }

nlohmann::json to_json(const NumericLimit& r) {
    nlohmann::json value = nlohmann::json::array();
    for (long double v : r.value) value.push_back(static_cast<double>(v));
    nlohmann::json out{{"converged", r.converged},
                       {"lambda_approx", static_cast<double>(r.lambda)},
                       {"terms", r.terms},
                       {"value_approx", value},
                       {"gap_approx", static_cast<double>(r.gap)}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

}  // namespace pm
