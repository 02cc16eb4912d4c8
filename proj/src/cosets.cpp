#include "pm/cosets.hpp"

#include <deque>
#include <stdexcept>

namespace pm {

namespace {

bool divisible(const Integer& x, long n) { return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(n)) != 0; }

}  // namespace

Subgroup Subgroup::full() {
    return {"PSL(2,Z)", [](const UnimodularMatrix&) { return true; }};
}

Subgroup Subgroup::gamma0(long n) {
    if (n < 1) throw std::invalid_argument("level must be positive");
    return {"Gamma0(" + std::to_string(n) + ")", [n](const UnimodularMatrix& g) { return divisible(g.c(), n); }};
}

Subgroup Subgroup::gamma_principal(long n) {
    if (n < 1) throw std::invalid_argument("level must be positive");
    return {"Gamma(" + std::to_string(n) + ")", [n](const UnimodularMatrix& g) {
                if (!divisible(g.b(), n) || !divisible(g.c(), n)) return false;
                // g = +-1 mod n
                return (divisible(g.a() - 1, n) && divisible(g.d() - 1, n)) || (divisible(g.a() + 1, n) && divisible(g.d() + 1, n));
            }};
}

CosetTable::CosetTable(Subgroup group, std::size_t max_index) : group_(std::move(group)) {
    reps_.push_back(UnimodularMatrix::identity());
    const std::array<UnimodularMatrix, 2> gens{UnimodularMatrix::sigma(), UnimodularMatrix::tau()};
    std::deque<std::size_t> queue{0};
    std::vector<std::array<std::size_t, 2>> table(1);
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < 2; ++k) {
            UnimodularMatrix next = reps_[s] * gens[k];
            std::size_t target = reps_.size();
            for (std::size_t r = 0; r < reps_.size(); ++r) {
                if (group_.contains(next * reps_[r].inverse())) {
                    target = r;
                    break;
                }
            }
            if (target == reps_.size()) {
                if (reps_.size() >= max_index) throw std::runtime_error("coset enumeration exceeded the index bound");
                reps_.push_back(next.psl_canonical());
                table.push_back({0, 0});
                queue.push_back(target);
            }
            table[s][k] = target;
        }
    }
    for (const auto& row : table) {
        sigma_.push_back(row[0]);
        tau_.push_back(row[1]);
    }
}

std::size_t CosetTable::coset_of(const UnimodularMatrix& g) const {
    for (std::size_t r = 0; r < reps_.size(); ++r)
        if (group_.contains(g * reps_[r].inverse())) return r;
    throw std::logic_error("coset table is not closed for " + group_.name);
}

std::pair<std::size_t, UnimodularMatrix> CosetTable::right_multiply(std::size_t s, const UnimodularMatrix& g) const {
    UnimodularMatrix product = reps_.at(s) * g;
    std::size_t target = coset_of(product);
    return {target, product * reps_[target].inverse()};
}

}  // namespace pm
