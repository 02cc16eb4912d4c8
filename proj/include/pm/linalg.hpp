#pragma once

#include "pm/arith.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pm {

using Vector = std::vector<Rational>;

// Dense matrix over Q, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix identity(std::size_t n);
    // Columns given as vectors of equal length.
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;
    Matrix transposed() const;
    // Rows of `below` appended under this matrix.
    Matrix stacked(const Matrix& below) const;

    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Vector operator*(const Matrix& x, const Vector& v);
    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per free column, in reduced form.
std::vector<Vector> nullspace(const Matrix& m);
// Some x with m x = b, if one exists.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);
Rational determinant(Matrix m);

// Dense univariate polynomial over Q, coefficient of x^i at index i, trailing zeros trimmed.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly monomial(const Rational& c, std::size_t degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    Rational operator()(const Rational& x) const;

    friend UniPoly operator+(const UniPoly& x, const UniPoly& y);
    friend UniPoly operator-(const UniPoly& x, const UniPoly& y);
    friend UniPoly operator*(const UniPoly& x, const UniPoly& y);
    friend bool operator==(const UniPoly&, const UniPoly&) = default;
    // Quotient and remainder.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& x, const UniPoly& y);
    friend UniPoly gcd(UniPoly x, UniPoly y);  // monic, or zero

    UniPoly monic() const;
    UniPoly derivative() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

std::string to_string(const UniPoly& p, const std::string& var = "x");

// det(x I - m).
UniPoly characteristic_polynomial(const Matrix& m);

struct RationalRoot {
    Rational value;
    int multiplicity;
};
// All rational roots with multiplicity, increasing.
std::vector<RationalRoot> rational_roots(const UniPoly& p);

}  // namespace pm
