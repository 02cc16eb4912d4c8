#pragma once

#include "pm/arith.hpp"
#include "pm/matrix.hpp"

#include <json.hpp>

#include <compare>
#include <string>
#include <vector>

namespace pm {

// One letter <alpha>^{+-1}.
struct FreeLetter {
    Point index;
    int exponent = 1;  // +1 or -1

    friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
    friend auto operator<=>(const FreeLetter& x, const FreeLetter& y) {
        if (auto c = x.index <=> y.index; c != 0) return c;
        return x.exponent <=> y.exponent;
    }
};

// Reduced word in the free group on generators <alpha>, alpha in Q. The generator <inf> is the
// identity, so that (inf, beta) -> <beta> is the universal measure.
class FreeGroupWord {
public:
    FreeGroupWord() = default;
    static FreeGroupWord generator(const Point& alpha);

    const std::vector<FreeLetter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    FreeGroupWord inverse() const;
    friend FreeGroupWord operator*(const FreeGroupWord& x, const FreeGroupWord& y);
    friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;

private:
    // Appends with free reduction.
    void push(const FreeLetter& l);
    std::vector<FreeLetter> letters_;
};

// "<1/2><3/7>^-1"; "1" for the identity.
std::string to_string(const FreeGroupWord& w);

struct FreeGroup {
    using value_type = FreeGroupWord;
    // Permutation action g<alpha> = <g alpha>; when false the action is trivial.
    bool permutation_action = false;

    FreeGroupWord one() const { return {}; }
    FreeGroupWord mul(const FreeGroupWord& x, const FreeGroupWord& y) const { return x * y; }
    FreeGroupWord inverse(const FreeGroupWord& x) const { return x.inverse(); }
    bool equal(const FreeGroupWord& x, const FreeGroupWord& y) const { return x == y; }
    FreeGroupWord act(const UnimodularMatrix& g, const FreeGroupWord& x) const;
    nlohmann::json to_json(const FreeGroupWord& x) const;
};

}  // namespace pm
