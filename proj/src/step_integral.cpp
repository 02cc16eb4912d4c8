#include "pm/step_integral.hpp"

#include "pm/noncommutative.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pm {

namespace {

UniPoly primitive(const UniPoly& p) {
    std::vector<Rational> c(p.coeffs().size() + 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i + 1] = p.coeffs()[i] / static_cast<long>(i + 1);
    return UniPoly(c);
}

// Every breakpoint strictly inside (a, b), plus a and b.
std::vector<Rational> cells(const Rational& a, const Rational& b, const std::vector<StepForm>& forms) {
    std::set<Rational> cuts{a, b};
    for (const auto& f : forms)
        for (const auto& x : f.breaks)
            if (a < x && x < b) cuts.insert(x);
    return {cuts.begin(), cuts.end()};
}

}  // namespace

StepForm::StepForm(std::vector<Rational> b, std::vector<Rational> v) : breaks(std::move(b)), values(std::move(v)) {
    if (breaks.empty() ? !values.empty() : values.size() + 1 != breaks.size())
        throw std::invalid_argument("a step form needs one more break than values");
    if (!std::is_sorted(breaks.begin(), breaks.end()) || std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end())
        throw std::invalid_argument("breaks must increase strictly");
}

StepForm StepForm::indicator(const Rational& lo, const Rational& hi) { return StepForm({lo, hi}, {Rational(1)}); }

Rational StepForm::operator()(const Rational& x) const {
    if (breaks.empty() || x < breaks.front() || x >= breaks.back()) return 0;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return values[static_cast<std::size_t>(it - breaks.begin()) - 1];
}

nlohmann::json StepForm::to_json() const {
    nlohmann::json b = nlohmann::json::array(), v = nlohmann::json::array();
    for (const auto& x : breaks) b.push_back(pm::to_string(x));
    for (const auto& x : values) v.push_back(pm::to_string(x));
    return {{"breaks", b}, {"values", v}};
}

StepForm StepForm::from_json(const nlohmann::json& j) {
    std::vector<Rational> b, v;
    for (const auto& x : j.at("breaks")) b.push_back(parse_rational(x.get<std::string>()));
    for (const auto& x : j.at("values")) v.push_back(parse_rational(x.get<std::string>()));
    return StepForm(b, v);
}

Rational PiecewisePoly::operator()(const Rational& t) const {
    if (t < cuts.front() || t > cuts.back()) throw std::out_of_range("outside the domain");
    auto it = std::upper_bound(cuts.begin(), cuts.end(), t);
    std::size_t j = static_cast<std::size_t>(it - cuts.begin());
    j = j == 0 ? 0 : std::min(j - 1, pieces.size() - 1);
    return pieces[j](t);
}

PiecewisePoly iterated_primitive(const Rational& a, const Rational& b, const std::vector<StepForm>& forms) {
    if (!(a < b)) throw std::invalid_argument("need a < b");
    PiecewisePoly g{cells(a, b, forms), {}};
    g.pieces.assign(g.cuts.size() - 1, UniPoly({Rational(1)}));
    // innermost integrand first
    for (auto f = forms.rbegin(); f != forms.rend(); ++f) {
        std::vector<UniPoly> next;
        Rational start = 0;  // value of the new primitive at the left end of the cell
        for (std::size_t j = 0; j + 1 < g.cuts.size(); ++j) {
            const Rational& lo = g.cuts[j];
            const Rational mid = (lo + g.cuts[j + 1]) / 2;
            const UniPoly p = primitive(UniPoly({(*f)(mid)}) * g.pieces[j]);
            const UniPoly piece = p + UniPoly({start - p(lo)});
            start = piece(g.cuts[j + 1]);
            next.push_back(piece);
        }
        g.pieces = std::move(next);
    }
    return g;
}

Rational iterated_integral(const Rational& a, const Rational& b, const std::vector<StepForm>& forms) {
    if (a == b) return forms.empty() ? 1 : 0;
    return iterated_primitive(a, b, forms)(b);
}

Rational iterated_step_integral(const Rational& a, const Rational& b, const std::vector<std::pair<Rational, Rational>>& intervals) {
    std::vector<StepForm> forms;
    for (const auto& [lo, hi] : intervals) forms.push_back(StepForm::indicator(lo, hi));
    return iterated_integral(a, b, forms);
}

TruncatedTensor chen_series(const Rational& a, const Rational& b, const std::vector<StepForm>& forms, std::size_t order) {
    const std::size_t r = forms.size();
    TruncatedTensor total = TruncatedTensor::scalar(r, order, 1);
    if (!(a < b)) return total;
    const auto cuts = cells(a, b, forms);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        const Rational mid = (cuts[j] + cuts[j + 1]) / 2, length = cuts[j + 1] - cuts[j];
        TruncatedTensor step(r, order);
        if (order >= 1)
            for (std::size_t i = 0; i < r; ++i) step.degree(1)[i] = length * forms[i](mid);
        // later cells carry the larger variables, which sit to the left
        total = tensor_exp(step) * total;
    }
    return total;
}

NCPseudoMeasure<TensorGroup> iterated_measure(const std::vector<StepForm>& forms, std::size_t order) {
    if (forms.empty()) throw std::invalid_argument("need at least one form");
    Rational floor_point = 0;
    bool any = false;
    for (const auto& f : forms)
        if (!f.breaks.empty() && (!any || f.breaks.front() < floor_point)) {
            floor_point = f.breaks.front();
            any = true;
        }
    const TensorGroup group{forms.size(), order, {}};
    auto potential = [forms, order, floor_point](const Point& x) {
        if (x.is_infinite()) return TruncatedTensor::scalar(forms.size(), order, 1);
        return chen_series(floor_point, x.value(), forms, order);
    };
    return NCPseudoMeasure<TensorGroup>(group, [potential](const Segment& s) {
        return potential(s.to()) * potential(s.from()).inverse();
    });
}

}  // namespace pm
