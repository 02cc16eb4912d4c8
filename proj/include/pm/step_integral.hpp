#pragma once

#include "pm/arith.hpp"
#include "pm/linalg.hpp"
#include "pm/tensor.hpp"

#include <json.hpp>

#include <utility>
#include <vector>

namespace pm {

// Compactly supported step function: value values[i] on [breaks[i], breaks[i+1]), zero elsewhere.
struct StepForm {
    std::vector<Rational> breaks;
    std::vector<Rational> values;

    StepForm() = default;
    StepForm(std::vector<Rational> breaks, std::vector<Rational> values);
    static StepForm indicator(const Rational& lo, const Rational& hi);

    Rational operator()(const Rational& x) const;
    nlohmann::json to_json() const;
    static StepForm from_json(const nlohmann::json& j);
};

// A function on [a, b] that is polynomial between consecutive cut points.
struct PiecewisePoly {
    std::vector<Rational> cuts;  // a = cuts[0] < ... < cuts.back() = b
    std::vector<UniPoly> pieces;  // pieces[j] on [cuts[j], cuts[j+1]], in the variable t itself

    Rational operator()(const Rational& t) const;
};

// G_n on [a, b], where G_0 = 1 and G_k(t) = int_a^t f_{n-k+1}(z) G_{k-1}(z) dz; forms[0] is the
// outermost integrand.
PiecewisePoly iterated_primitive(const Rational& a, const Rational& b, const std::vector<StepForm>& forms);

// int over b > z_1 > ... > z_n > a of f_1(z_1) ... f_n(z_n).
Rational iterated_integral(const Rational& a, const Rational& b, const std::vector<StepForm>& forms);
// The same with indicator integrands.
Rational iterated_step_integral(const Rational& a, const Rational& b, const std::vector<std::pair<Rational, Rational>>& intervals);

// sum over words of the iterated integrals from a to b, as an element of order `order`, computed as
// the ordered product of exp(length * sum_i f_i e_i) over the cells where every form is constant.
TruncatedTensor chen_series(const Rational& a, const Rational& b, const std::vector<StepForm>& forms, std::size_t order);

}  // namespace pm
