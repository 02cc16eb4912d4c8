#include "pm/hecke.hpp"

#include <stdexcept>

namespace pm {

std::vector<RationalMatrix> hecke_representatives(long n) {
    if (n < 1) throw std::invalid_argument("Hecke index must be positive");
    std::vector<RationalMatrix> reps;
    for (long a = 1; a <= n; ++a) {
        if (n % a != 0) continue;
        const long d = n / a;
        for (long b = 1; b <= d; ++b) reps.emplace_back(Rational(a), Rational(b), Rational(0), Rational(d));
    }
    return reps;
}

Integer divisor_sigma(long n, int k) {
    Integer total = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        total += p;
    }
    return total;
}

HeckeReport hecke_report(int weight, long n) {
    HeckeReport r;
    r.n = n;
    r.weight = weight;
    const PolyGroup group{weight};
    r.basis = seed_space(group);
    r.raw = hecke_matrix(group, r.basis, n);
    r.normalized = r.raw;

    HomogeneousPoly eis = HomogeneousPoly::monomial(weight, 0) - HomogeneousPoly::monomial(weight, weight);
    if (!r.basis.empty() && is_seed(group, eis)) {
        HomogeneousPoly image = seed_of(hecke(from_seed(group, eis), n));
        // eigenvalue from any nonzero coefficient, then confirmed on all of them
        Rational lambda = image.coeffs.front() / eis.coeffs.front();
        r.eisenstein_is_eigenvector = image == lambda * eis;
        if (r.eisenstein_is_eigenvector && lambda != 0) {
            r.eisenstein_raw_eigenvalue = lambda;
            r.factor = Rational(divisor_sigma(n, weight + 1)) / lambda;
            Matrix scaled = r.raw;
            for (std::size_t i = 0; i < scaled.rows(); ++i)
                for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= *r.factor;
            r.normalized = scaled;
        }
    }
    r.normalized_charpoly = characteristic_polynomial(r.normalized);
    r.normalized_eigenvalues = rational_roots(r.normalized_charpoly);
    return r;
}

nlohmann::json to_json(const HeckeReport& r) {
    auto matrix_json = [](const Matrix& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
            rows.push_back(row);
        }
        return rows;
    };
    const PolyGroup group{r.weight};
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : r.basis) basis.push_back(group.to_json(b));
    nlohmann::json eigen = nlohmann::json::array();
    for (const auto& root : r.normalized_eigenvalues) eigen.push_back({{"value", to_string(root.value)}, {"multiplicity", root.multiplicity}});
    nlohmann::json charpoly = nlohmann::json::array();
    for (const auto& c : r.normalized_charpoly.coeffs()) charpoly.push_back(to_string(c));
    return {
        {"n", r.n},
        {"weight", r.weight},
        {"basis", basis},
        {"raw", matrix_json(r.raw)},
        {"normalization",
         {{"anchor", "X^w - Y^w"},
          {"anchor_is_eigenvector", r.eisenstein_is_eigenvector},
          {"anchor_raw_eigenvalue", r.eisenstein_raw_eigenvalue ? nlohmann::json(to_string(*r.eisenstein_raw_eigenvalue)) : nlohmann::json(nullptr)},
          {"target", to_string(Rational(divisor_sigma(r.n, r.weight + 1)))},
          {"factor", r.factor ? nlohmann::json(to_string(*r.factor)) : nlohmann::json(nullptr)}}},
        {"normalized", matrix_json(r.normalized)},
        {"normalized_charpoly", charpoly},
        {"normalized_rational_eigenvalues", eigen},
    };
}

}  // namespace pm
