#include "pm/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::stacked(const Matrix& below) const {
    if (rows_ > 0 && below.rows_ > 0 && cols_ != below.cols_) throw std::invalid_argument("stacking width mismatch");
    Matrix out(rows_ + below.rows_, rows_ > 0 ? cols_ : below.cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
        for (std::size_t k = 0; k < x.cols_; ++k) {
            const Rational& a = x(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += a * y(k, j);
        }
    }
    return out;
}

Vector operator*(const Matrix& x, const Vector& v) {
    if (x.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(x.rows_);
    for (std::size_t i = 0; i < x.rows_; ++i)
        for (std::size_t j = 0; j < x.cols_; ++j) out[i] += x(i, j) * v[j];
    return out;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += y.data_[i];
    return out;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix out = x;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= y.data_[i];
    return out;
}

RowEchelon rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Rational det = 1;
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m(p, col) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly operator+(const UniPoly& x, const UniPoly& y) {
    std::vector<Rational> c(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coeff(i) + y.coeff(i);
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& x, const UniPoly& y) {
    std::vector<Rational> c(std::max(x.coeffs_.size(), y.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coeff(i) - y.coeff(i);
    return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& x, const UniPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<Rational> c(x.coeffs_.size() + y.coeffs_.size() - 1);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) c[i + j] += x.coeffs_[i] * y.coeffs_[j];
    return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& x, const UniPoly& y) {
    if (y.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = x.coeffs_;
    int dy = y.degree();
    if (x.degree() < dy) return {UniPoly(), x};
    std::vector<Rational> quo(static_cast<std::size_t>(x.degree() - dy + 1));
    const Rational& lead = y.coeffs_.back();
    for (int k = x.degree() - dy; k >= 0; --k) {
        Rational f = rem[static_cast<std::size_t>(k + dy)] / lead;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= dy; ++j) rem[static_cast<std::size_t>(k + j)] -= f * y.coeffs_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly x, UniPoly y) {
    while (!y.is_zero()) {
        UniPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = coeffs_;
    Rational lead = c.back();
    for (auto& v : c) v /= lead;
    return UniPoly(std::move(c));
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return UniPoly(std::move(c));
}

std::string to_string(const UniPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        bool unit = a == 1 && i > 0;
        if (!unit) out += a.get_den() == 1 ? a.get_num().get_str() : a.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

UniPoly characteristic_polynomial(const Matrix& m) {
    // Faddeev-LeVerrier over Q.
    if (m.rows() != m.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix aux(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = m * aux;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        aux = std::move(next);
        Matrix prod = m * aux;
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
        c[n - k] = -trace / static_cast<unsigned long>(k);
    }
    return UniPoly(std::move(c));
}

namespace {

// Prime factorisation by trial division; the last factor may be a large probable prime.
std::map<Integer, int> factorize(Integer n) {
    std::map<Integer, int> out;
    n = abs(n);
    if (n <= 1) return out;
    constexpr unsigned long kTrialLimit = 20'000'000;
    for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
        if (Integer(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    if (n > 1) {
        if (Integer(kTrialLimit) * kTrialLimit < n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw std::runtime_error("rational_roots: constant term too large to factor");
        ++out[n];
    }
    return out;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
    std::vector<RationalRoot> roots;
    UniPoly rest = p;
    int zero_mult = 0;
    while (rest.degree() > 0 && rest.coeff(0) == 0) {
        rest = divmod(rest, UniPoly({0, 1})).first;
        ++zero_mult;
    }
    if (zero_mult > 0) roots.push_back({0, zero_mult});
    if (rest.degree() <= 0) return roots;

    // Integer coefficients, then y = lead * x makes the polynomial monic.
    Integer common = 1;
    for (const auto& c : rest.coeffs()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> a;
    for (const auto& c : rest.coeffs()) a.push_back(Integer(c * common));
    int n = rest.degree();
    Integer lead = a.back();
    std::vector<Rational> monic(a.size());
    Integer lp = 1;  // lead^(n-1-i) built from the top down
    for (int i = n; i >= 0; --i) {
        if (i == n) {
            monic[static_cast<std::size_t>(i)] = 1;
            continue;
        }
        monic[static_cast<std::size_t>(i)] = Rational(a[static_cast<std::size_t>(i)] * lp);
        lp *= lead;
    }
    UniPoly shifted(monic);
    std::vector<Rational> candidates;
    for (const auto& d : divisors(Integer(shifted.coeff(0)))) {
        for (int s : {1, -1}) {
            Integer y = d * s;
            if (shifted(Rational(y)) == 0) {
                Rational x(y, lead);
                x.canonicalize();
                candidates.push_back(x);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        int mult = 0;
        UniPoly factor({-r, 1});
        while (rest.degree() > 0) {
            auto [q, rem] = divmod(rest, factor);
            if (!rem.is_zero()) break;
            rest = q;
            ++mult;
        }
        roots.push_back({r, mult});
    }
    std::sort(roots.begin(), roots.end(), [](const RationalRoot& x, const RationalRoot& y) { return x.value < y.value; });
    return roots;
}

}  // namespace pm
