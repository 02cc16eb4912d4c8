#include "pm/free_group.hpp"

namespace pm {

FreeGroupWord FreeGroupWord::generator(const Point& alpha) {
    FreeGroupWord w;
    if (!alpha.is_infinite()) w.letters_.push_back({alpha, 1});
    return w;
}

void FreeGroupWord::push(const FreeLetter& l) {
    if (!letters_.empty() && letters_.back().index == l.index && letters_.back().exponent == -l.exponent) {
        letters_.pop_back();
        return;
    }
    letters_.push_back(l);
}

FreeGroupWord FreeGroupWord::inverse() const {
    FreeGroupWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back({it->index, -it->exponent});
    return out;
}

FreeGroupWord operator*(const FreeGroupWord& x, const FreeGroupWord& y) {
    FreeGroupWord out = x;
    for (const auto& l : y.letters_) out.push(l);
    return out;
}

std::string to_string(const FreeGroupWord& w) {
    if (w.is_identity()) return "1";
    std::string out;
    for (const auto& l : w.letters()) {
        out += "<" + to_string(l.index) + ">";
        if (l.exponent < 0) out += "^-1";
    }
    return out;
}

FreeGroupWord FreeGroup::act(const UnimodularMatrix& g, const FreeGroupWord& x) const {
    if (!permutation_action) return x;
    FreeGroupWord out;
    for (const auto& l : x.letters()) {
        FreeGroupWord gen = FreeGroupWord::generator(g(l.index));
        out = out * (l.exponent > 0 ? gen : gen.inverse());
    }
    return out;
}

nlohmann::json FreeGroup::to_json(const FreeGroupWord& x) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : x.letters()) out.push_back({{"generator", to_string(l.index)}, {"exponent", l.exponent}});
    return out;
}

}  // namespace pm
