#include "pm/tensor.hpp"

#include <stdexcept>

namespace pm {

namespace {

std::size_t power(std::size_t base, std::size_t k) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < k; ++i) out *= base;
    return out;
}

void require_same_shape(const TruncatedTensor& x, const TruncatedTensor& y) {
    if (x.letters() != y.letters() || x.order() != y.order()) throw std::invalid_argument("tensor shapes differ");
}

// Kronecker power A^{(x)k} as a dense matrix.
Matrix kronecker_power(const Matrix& a, std::size_t k) {
    Matrix out = Matrix::identity(1);
    for (std::size_t step = 0; step < k; ++step) {
        Matrix next(out.rows() * a.rows(), out.cols() * a.cols());
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j) {
                if (out(i, j) == 0) continue;
                for (std::size_t p = 0; p < a.rows(); ++p)
                    for (std::size_t q = 0; q < a.cols(); ++q) next(i * a.rows() + p, j * a.cols() + q) = out(i, j) * a(p, q);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

std::size_t word_index(const Word& w, std::size_t letters) {
    std::size_t index = 0;
    for (std::size_t l : w) {
        if (l >= letters) throw std::out_of_range("letter out of range");
        index = index * letters + l;
    }
    return index;
}

Word index_word(std::size_t index, std::size_t length, std::size_t letters) {
    Word w(length);
    for (std::size_t i = length; i-- > 0;) {
        w[i] = index % letters;
        index /= letters;
    }
    return w;
}

std::vector<Word> words_of_length(std::size_t length, std::size_t letters) {
    std::vector<Word> out;
    for (std::size_t i = 0; i < power(letters, length); ++i) out.push_back(index_word(i, length, letters));
    return out;
}

std::vector<Word> shuffle(const Word& a, const Word& b) {
    if (a.empty()) return {b};
    if (b.empty()) return {a};
    std::vector<Word> out;
    for (auto w : shuffle(Word(a.begin() + 1, a.end()), b)) {
        w.insert(w.begin(), a.front());
        out.push_back(std::move(w));
    }
    for (auto w : shuffle(a, Word(b.begin() + 1, b.end()))) {
        w.insert(w.begin(), b.front());
        out.push_back(std::move(w));
    }
    return out;
}

TruncatedTensor::TruncatedTensor(std::size_t letters, std::size_t order) : letters_(letters) {
    if (letters == 0) throw std::invalid_argument("need at least one letter");
    for (std::size_t k = 0; k <= order; ++k) parts_.emplace_back(power(letters, k));
}

TruncatedTensor TruncatedTensor::scalar(std::size_t letters, std::size_t order, const Rational& c) {
    TruncatedTensor t(letters, order);
    t.parts_[0][0] = c;
    return t;
}

TruncatedTensor TruncatedTensor::unit_plus(std::size_t letters, std::size_t order, const Vector& v) {
    TruncatedTensor t = scalar(letters, order, 1);
    if (order >= 1) {
        if (v.size() != letters) throw std::invalid_argument("degree-1 vector has the wrong size");
        t.parts_[1] = v;
    }
    return t;
}

Rational TruncatedTensor::coefficient(const Word& w) const {
    if (w.size() > order()) return 0;
    return parts_[w.size()][word_index(w, letters_)];
}

void TruncatedTensor::set(const Word& w, const Rational& c) {
    if (w.size() > order()) throw std::out_of_range("word longer than the truncation order");
    parts_[w.size()][word_index(w, letters_)] = c;
}

TruncatedTensor TruncatedTensor::below(std::size_t k) const {
    TruncatedTensor out(letters_, order());
    for (std::size_t d = 0; d < k && d <= order(); ++d) out.parts_[d] = parts_[d];
    return out;
}

TruncatedTensor operator+(const TruncatedTensor& x, const TruncatedTensor& y) {
    require_same_shape(x, y);
    TruncatedTensor out = x;
    for (std::size_t k = 0; k <= x.order(); ++k)
        for (std::size_t i = 0; i < out.parts_[k].size(); ++i) out.parts_[k][i] += y.parts_[k][i];
    return out;
}

TruncatedTensor operator-(const TruncatedTensor& x, const TruncatedTensor& y) { return x + Rational(-1) * y; }

TruncatedTensor operator*(const Rational& c, const TruncatedTensor& x) {
    TruncatedTensor out = x;
    for (auto& part : out.parts_)
        for (auto& v : part) v *= c;
    return out;
}

TruncatedTensor operator*(const TruncatedTensor& x, const TruncatedTensor& y) {
    require_same_shape(x, y);
    const std::size_t r = x.letters_;
    TruncatedTensor out(r, x.order());
    for (std::size_t i = 0; i <= x.order(); ++i)
        for (std::size_t j = 0; i + j <= x.order(); ++j) {
            const Vector& a = x.parts_[i];
            const Vector& b = y.parts_[j];
            Vector& target = out.parts_[i + j];
            const std::size_t stride = b.size();
            for (std::size_t p = 0; p < a.size(); ++p) {
                if (a[p] == 0) continue;
                for (std::size_t q = 0; q < b.size(); ++q)
                    if (b[q] != 0) target[p * stride + q] += a[p] * b[q];
            }
        }
    return out;
}

TruncatedTensor TruncatedTensor::inverse() const {
    const Rational c = parts_[0][0];
    if (c == 0) throw std::domain_error("constant term is zero");
    // u = c (1 + y), u^{-1} = c^{-1} sum (-y)^k
    TruncatedTensor y = (1 / c) * *this;
    y.parts_[0][0] = 0;
    const TruncatedTensor minus_y = Rational(-1) * y;
    TruncatedTensor term = scalar(letters_, order(), 1);
    TruncatedTensor total = term;
    for (std::size_t k = 1; k <= order(); ++k) {
        term = term * minus_y;
        total = total + term;
    }
    return (1 / c) * total;
}

TruncatedTensor tensor_exp(const TruncatedTensor& x) {
    if (x.degree(0)[0] != 0) throw std::domain_error("exp needs a zero constant term");
    TruncatedTensor term = TruncatedTensor::scalar(x.letters(), x.order(), 1);
    TruncatedTensor total = term;
    for (std::size_t k = 1; k <= x.order(); ++k) {
        term = Rational(1, static_cast<long>(k)) * (term * x);
        total = total + term;
    }
    return total;
}

TruncatedTensor tensor_log(const TruncatedTensor& u) {
    if (u.degree(0)[0] != 1) throw std::domain_error("log needs constant term 1");
    TruncatedTensor y = u;
    y.degree(0)[0] = 0;
    TruncatedTensor term = TruncatedTensor::scalar(u.letters(), u.order(), 1);
    TruncatedTensor total(u.letters(), u.order());
    for (std::size_t k = 1; k <= u.order(); ++k) {
        term = term * y;
        const Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
        total = total + c * term;
    }
    return total;
}

ShuffleReport shuffle_check(const TruncatedTensor& u) {
    ShuffleReport report;
    if (u.degree(0)[0] != 1) {
        report.passed = false;
        report.witness = "constant term is not 1";
        return report;
    }
    const std::size_t m = u.order(), r = u.letters();
    for (std::size_t la = 1; la <= m; ++la)
        for (std::size_t lb = la; la + lb <= m; ++lb)
            for (const Word& a : words_of_length(la, r))
                for (const Word& b : words_of_length(lb, r)) {
                    Rational total = 0;
                    for (const Word& w : shuffle(a, b)) total += u.coefficient(w);
                    ++report.checked;
                    if (total != u.coefficient(a) * u.coefficient(b)) {
                        report.passed = false;
                        report.witness = "shuffle fails for lengths " + std::to_string(la) + " and " + std::to_string(lb);
                        return report;
                    }
                }
    return report;
}

Vector act_on_degree(const Matrix& a, const Vector& part, std::size_t k) {
    const std::size_t r = a.rows();
    Vector current = part;
    // apply a on axis `axis` (0 = first letter)
    for (std::size_t axis = 0; axis < k; ++axis) {
        const std::size_t inner = power(r, k - axis - 1);
        const std::size_t outer = power(r, axis);
        Vector next(current.size());
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t in = 0; in < inner; ++in)
                for (std::size_t j = 0; j < r; ++j) {
                    const Rational& x = current[(o * r + j) * inner + in];
                    if (x == 0) continue;
                    for (std::size_t i = 0; i < r; ++i)
                        if (a(i, j) != 0) next[(o * r + i) * inner + in] += a(i, j) * x;
                }
        current = std::move(next);
    }
    return current;
}

TruncatedTensor TensorGroup::act(const UnimodularMatrix& g, const TruncatedTensor& x) const {
    if (!action) return x;
    const Matrix a = action(g);
    TruncatedTensor out = x;
    for (std::size_t k = 1; k <= x.order(); ++k) out.degree(k) = act_on_degree(a, x.degree(k), k);
    return out;
}

nlohmann::json TensorGroup::to_json(const TruncatedTensor& x) const {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t k = 0; k <= x.order(); ++k) {
        nlohmann::json part = nlohmann::json::array();
        for (const auto& v : x.degree(k)) part.push_back(pm::to_string(v));
        out.push_back(part);
    }
    return out;
}

std::optional<TruncatedTensor> nc_seed_lift(const TensorGroup& group, const Vector& omega) {
    if (!group.action) throw std::invalid_argument("seed lift needs a linear action");
    const std::size_t r = group.letters;
    const UnimodularMatrix s = UnimodularMatrix::sigma(), t = UnimodularMatrix::tau(), e = UnimodularMatrix::minus_identity();
    TruncatedTensor u = TruncatedTensor::unit_plus(r, group.order, omega);
    for (std::size_t k = 1; k <= group.order; ++k) {
        // with u' = u below degree k, the degree-k equations are linear in u_k
        const TruncatedTensor known = u.below(k);
        const Vector sigma_rhs = (group.act(s, known) * known).degree(k);
        const Vector tau_rhs = (group.act(t * t, known) * group.act(t, known) * known).degree(k);
        const std::size_t n = sigma_rhs.size();
        const Matrix id = Matrix::identity(n);
        const Matrix sk = kronecker_power(group.action(s), k), tk = kronecker_power(group.action(t), k),
                     ek = kronecker_power(group.action(e), k);
        const Matrix system = (id + sk).stacked(id + tk + tk * tk).stacked(id - ek);
        Vector rhs;
        for (const auto& v : sigma_rhs) rhs.push_back(-v);
        for (const auto& v : tau_rhs) rhs.push_back(-v);
        rhs.resize(3 * n, Rational(0));
        if (k == 1) {
            // omega itself must be a solution
            if (system * omega != rhs) return std::nullopt;
            continue;
        }
        auto solution = solve(system, rhs);
        if (!solution) return std::nullopt;
        u.degree(k) = *solution;
    }
    return u;
}

}  // namespace pm
