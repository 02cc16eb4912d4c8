#pragma once

#include "pm/arith.hpp"
#include "pm/matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pm {

// x = k0 + 1/(k1 + 1/(k2 + ...)); the last partial is >= 2 when present.
struct ContinuedFraction {
    Integer k0;
    std::vector<Integer> partials;

    Rational value() const;
    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

ContinuedFraction cf_expand(const Rational& x);

// "[k0;k1,k2,...]"
std::string to_string(const ContinuedFraction& cf);
ContinuedFraction parse_cf(std::string_view text);

// inf = p_{-1}/q_{-1}, p_0/q_0, ..., p_n/q_n = x.
std::vector<ProjectiveRational> convergents(const Rational& x);

// g_k for k = -1..n-1; g_k maps (inf, 0) to (p_k/q_k, p_{k+1}/q_{k+1}).
std::vector<UnimodularMatrix> gk_matrices(const Rational& x);

}  // namespace pm
