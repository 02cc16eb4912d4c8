#pragma once

#include "pm/arith.hpp"
#include "pm/linalg.hpp"
#include "pm/matrix.hpp"

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace pm {

using Word = std::vector<std::size_t>;

// Element of Q<<W>>/(W)^{order+1} for W = Q^letters. Degree k is stored densely, the word
// (i_1, ..., i_k) at index i_1 r^{k-1} + ... + i_k.
class TruncatedTensor {
public:
    TruncatedTensor(std::size_t letters, std::size_t order);
    static TruncatedTensor scalar(std::size_t letters, std::size_t order, const Rational& c);
    // 1 + v, v in degree 1.
    static TruncatedTensor unit_plus(std::size_t letters, std::size_t order, const Vector& v);

    std::size_t letters() const { return letters_; }
    std::size_t order() const { return parts_.size() - 1; }
    const Vector& degree(std::size_t k) const { return parts_.at(k); }
    Vector& degree(std::size_t k) { return parts_.at(k); }
    Rational coefficient(const Word& w) const;
    void set(const Word& w, const Rational& c);

    // Components of degree < k only.
    TruncatedTensor below(std::size_t k) const;

    friend TruncatedTensor operator+(const TruncatedTensor& x, const TruncatedTensor& y);
    friend TruncatedTensor operator-(const TruncatedTensor& x, const TruncatedTensor& y);
    friend TruncatedTensor operator*(const TruncatedTensor& x, const TruncatedTensor& y);
    friend TruncatedTensor operator*(const Rational& c, const TruncatedTensor& x);
    friend bool operator==(const TruncatedTensor&, const TruncatedTensor&) = default;

    // Requires an invertible constant term.
    TruncatedTensor inverse() const;

private:
    std::size_t letters_;
    std::vector<Vector> parts_;
};

std::size_t word_index(const Word& w, std::size_t letters);
Word index_word(std::size_t index, std::size_t length, std::size_t letters);
// All words of the given length, in index order.
std::vector<Word> words_of_length(std::size_t length, std::size_t letters);
// Shuffle product as a multiset of words.
std::vector<Word> shuffle(const Word& a, const Word& b);

// exp of an element with zero constant term.
TruncatedTensor tensor_exp(const TruncatedTensor& x);
// log of an element with constant term 1.
TruncatedTensor tensor_log(const TruncatedTensor& u);

struct ShuffleReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string witness;
};
// u_a u_b = sum over a sh b of u_w for |a| + |b| <= order, and u_() = 1.
ShuffleReport shuffle_check(const TruncatedTensor& u);

// The group of units, with a linear action on W extended to every tensor power.
struct TensorGroup {
    using value_type = TruncatedTensor;
    using LinearAction = std::function<Matrix(const UnimodularMatrix&)>;

    std::size_t letters = 1;
    std::size_t order = 1;
    LinearAction action;  // empty means trivial

    TruncatedTensor one() const { return TruncatedTensor::scalar(letters, order, 1); }
    TruncatedTensor mul(const TruncatedTensor& x, const TruncatedTensor& y) const { return x * y; }
    TruncatedTensor inverse(const TruncatedTensor& x) const { return x.inverse(); }
    bool equal(const TruncatedTensor& x, const TruncatedTensor& y) const { return x == y; }
    TruncatedTensor act(const UnimodularMatrix& g, const TruncatedTensor& x) const;
    nlohmann::json to_json(const TruncatedTensor& x) const;
};

// A^{(x)k} applied to a degree-k component, one tensor factor at a time.
Vector act_on_degree(const Matrix& a, const Vector& part, std::size_t k);

// A unit u with degree-1 part omega solving sigma[u] u = 1, tau^2[u] tau[u] u = 1 and
// (-id)[u] = u through the group's order, found degree by degree; nullopt when some degree
// has no solution.
std::optional<TruncatedTensor> nc_seed_lift(const TensorGroup& group, const Vector& omega);

}  // namespace pm
