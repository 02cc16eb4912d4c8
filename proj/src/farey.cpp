#include "pm/farey.hpp"

#include "pm/continued_fraction.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace pm {

bool is_primitive(const Point& a, const Point& b) {
    Integer c = cross(a, b);
    return c == 1 || c == -1;
}

Segment::Segment(Point from, Point to) : from_(std::move(from)), to_(std::move(to)) {
    if (!is_primitive(from_, to_)) {
        throw std::invalid_argument("not a primitive segment: (" + pm::to_string(from_) + ", " + pm::to_string(to_) + ")");
    }
}

std::string to_string(const Segment& s) { return "(" + to_string(s.from()) + ", " + to_string(s.to()) + ")"; }

UnimodularMatrix segment_matrix(const Segment& s) {
    Integer sgn = cross(s.from(), s.to());
    return UnimodularMatrix(s.from().num(), sgn * s.to().num(), s.from().den(), sgn * s.to().den()).psl_canonical();
}

Segment image(const UnimodularMatrix& g, const Segment& s) { return {g(s.from()), g(s.to())}; }

bool is_chain(const Chain& chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (chain[i].to() != chain[i + 1].from()) return false;
    }
    return true;
}

bool is_loop(const Chain& chain) {
    return is_chain(chain) && (chain.empty() || chain.front().from() == chain.back().to());
}

Chain convergent_chain(const Point& x) {
    Chain out;
    if (x.is_infinite()) return out;
    auto conv = convergents(x.value());
    for (std::size_t i = 0; i + 1 < conv.size(); ++i) out.emplace_back(conv[i], conv[i + 1]);
    return out;
}

Chain primitive_chain(const Point& a, const Point& b) {
    Chain out;
    if (a == b) return out;
    Chain to_a = convergent_chain(a);
    for (auto it = to_a.rbegin(); it != to_a.rend(); ++it) out.push_back(it->reversed());
    Chain to_b = convergent_chain(b);
    out.insert(out.end(), to_b.begin(), to_b.end());
    return out;
}

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::cancel_pair: return "cancel-pair";
        case MoveKind::insert_pair: return "insert-pair";
        case MoveKind::cancel_triangle: return "cancel-triangle";
        case MoveKind::insert_triangle: return "insert-triangle";
    }
    return "?";
}

namespace {

[[noreturn]] void bad_move(const Move& m, const std::string& why) {
    throw std::invalid_argument(to_string(m.kind) + " at " + std::to_string(m.position) + ": " + why);
}

void check_basepoint(const Chain& chain, const Move& m, const Point& start) {
    if (chain.empty()) return;
    if (m.position > chain.size()) bad_move(m, "position out of range");
    const Point& here = m.position < chain.size() ? chain[m.position].from() : chain.back().to();
    if (here != start) bad_move(m, "inserted loop is not based at the chain vertex");
}

}  // namespace

void apply_move(Chain& chain, const Move& m) {
    auto at = [&](std::size_t i) { return chain.begin() + static_cast<std::ptrdiff_t>(i); };
    switch (m.kind) {
        case MoveKind::cancel_pair:
            if (m.position + 1 >= chain.size()) bad_move(m, "position out of range");
            if (chain[m.position + 1] != chain[m.position].reversed()) bad_move(m, "segments are not mutually inverse");
            chain.erase(at(m.position), at(m.position + 2));
            return;
        case MoveKind::cancel_triangle:
            if (m.position + 2 >= chain.size()) bad_move(m, "position out of range");
            if (chain[m.position + 2].to() != chain[m.position].from()) bad_move(m, "segments do not close up");
            chain.erase(at(m.position), at(m.position + 3));
            return;
        case MoveKind::insert_pair:
            if (m.inserted.size() != 2 || m.inserted[1] != m.inserted[0].reversed()) bad_move(m, "expects (x,y),(y,x)");
            check_basepoint(chain, m, m.inserted[0].from());
            chain.insert(at(m.position), m.inserted.begin(), m.inserted.end());
            return;
        case MoveKind::insert_triangle:
            if (m.inserted.size() != 3 || !is_loop(m.inserted)) bad_move(m, "expects a closed triangle");
            check_basepoint(chain, m, m.inserted[0].from());
            chain.insert(at(m.position), m.inserted.begin(), m.inserted.end());
            return;
    }
}

namespace {

class LoopReducer {
public:
    explicit LoopReducer(Chain chain) : chain_(std::move(chain)) {}

    std::vector<Move> run() {
        reduce(0, chain_.size());
        return std::move(moves_);
    }

private:
    Chain chain_;
    std::vector<Move> moves_;

    void apply(Move m) {
        apply_move(chain_, m);
        moves_.push_back(std::move(m));
    }

    void reduce(std::size_t lo, std::size_t len) {
        while (len > 0) {
            if (len == 2) {
                apply({MoveKind::cancel_pair, lo, {}});
                return;
            }
            if (len == 3) {
                apply({MoveKind::cancel_triangle, lo, {}});
                return;
            }
            if (auto sub = innermost_subloop(lo, len)) {
                reduce(sub->first, sub->second);
                len -= sub->second;
                continue;
            }
            len = splice(lo, len);
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> innermost_subloop(std::size_t lo, std::size_t len) const {
        for (std::size_t l = 2; l < len; ++l) {
            for (std::size_t i = lo; i + l <= lo + len; ++i) {
                if (chain_[i].from() == chain_[i + l - 1].to()) return std::make_pair(i, l);
            }
        }
        return std::nullopt;
    }

    // Loop of length >= 4 with pairwise distinct vertices. In coordinates where it starts
    // with (inf, 0) and ends with (b, inf), splice in a triangle at inf and shorten.
    std::size_t splice(std::size_t lo, std::size_t len) {
        const UnimodularMatrix frame = segment_matrix(chain_[lo]);
        const UnimodularMatrix to_frame = frame.inverse();
        const Point b = to_frame(chain_[lo + len - 1].from());
        if (!b.is_integer() || b.num() == 0) throw std::logic_error("reduce_loop: unexpected loop shape");
        const Point inf = frame(Point::infinity());
        const Point a = frame(Point(0));
        const long step = b.num() > 0 ? 1 : -1;
        const Point next = frame(Point(step));

        if (b.num() == step) {
            apply({MoveKind::insert_pair, lo + 1, {Segment(a, next), Segment(next, a)}});
            reduce(lo + 2, len - 1);
            apply({MoveKind::cancel_triangle, lo, {}});
            return 0;
        }
        std::size_t hit = 0;
        for (std::size_t j = 1; j + 1 < len; ++j) {
            if (chain_[lo + j].to() == next) {
                hit = j;
                break;
            }
        }
        if (hit == 0) throw std::logic_error("reduce_loop: path misses an intermediate integer");
        if (hit == 1) {
            apply({MoveKind::insert_pair, lo + 2, {Segment(next, inf), Segment(inf, next)}});
            apply({MoveKind::cancel_triangle, lo, {}});
            return len - 1;
        }
        apply({MoveKind::insert_pair, lo + 1, {Segment(a, next), Segment(next, a)}});
        apply({MoveKind::insert_pair, lo + hit + 3, {Segment(next, inf), Segment(inf, next)}});
        reduce(lo + 2, hit + 1);
        apply({MoveKind::cancel_triangle, lo, {}});
        return len - hit;
    }
};

}  // namespace

std::vector<Move> reduce_loop(const Chain& loop) {
    if (!is_loop(loop)) throw std::invalid_argument("reduce_loop: input is not a closed primitive chain");
    return LoopReducer(loop).run();
}

Point farey_neighbour(const Point& x, const Integer& n) {
    if (x.is_infinite()) return Point(n, Integer(1));
    // Complete (p, r; q, s) with ps - rq = 1.
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    // p*s + q*t = 1, so r = -t.
    UnimodularMatrix m(x.num(), -t, x.den(), s);
    return m(Point(n, Integer(1)));
}

Chain randomize_chain(Chain chain, std::mt19937_64& rng, int insertions) {
    if (chain.empty()) return chain;
    for (int i = 0; i < insertions; ++i) {
        std::uniform_int_distribution<std::size_t> pos(0, chain.size());
        std::size_t k = pos(rng);
        Point base = k < chain.size() ? chain[k].from() : chain.back().to();
        std::uniform_int_distribution<int> offset(-3, 3);
        Integer n = offset(rng);
        Point d = farey_neighbour(base, n);
        if (rng() % 2 == 0) {
            apply_move(chain, {MoveKind::insert_pair, k, {Segment(base, d), Segment(d, base)}});
        } else {
            Point e = farey_neighbour(base, n + 1);
            apply_move(chain, {MoveKind::insert_triangle, k, {Segment(base, d), Segment(d, e), Segment(e, base)}});
        }
    }
    return chain;
}

namespace {

// Grow a loop by pair/triangle insertions until it reaches `length` exactly.
void pad_loop(Chain& loop, const Point& base, std::size_t length, std::mt19937_64& rng) {
    while (loop.size() < length) {
        std::size_t room = length - loop.size();
        bool triangle = room == 3 || (room >= 5 && rng() % 2 == 0);
        std::uniform_int_distribution<std::size_t> pos(0, loop.size());
        std::size_t k = loop.empty() ? 0 : pos(rng);
        Point at = loop.empty() ? base : (k < loop.size() ? loop[k].from() : loop.back().to());
        std::uniform_int_distribution<int> offset(-4, 4);
        Integer n = offset(rng);
        Point d = farey_neighbour(at, n);
        if (triangle) {
            Point e = farey_neighbour(at, n + 1);
            apply_move(loop, {MoveKind::insert_triangle, k, {Segment(at, d), Segment(d, e), Segment(e, at)}});
        } else {
            apply_move(loop, {MoveKind::insert_pair, k, {Segment(at, d), Segment(d, at)}});
        }
    }
}

}  // namespace

Chain random_loop(const Point& base, std::size_t length, std::mt19937_64& rng) {
    if (length < 2) throw std::invalid_argument("a non-empty loop has length >= 2");
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Random walk away from base, then come back along the canonical chain.
        Chain loop;
        Point here = base;
        std::uniform_int_distribution<std::size_t> steps_dist(1, length);
        std::size_t steps = steps_dist(rng);
        for (std::size_t s = 0; s < steps; ++s) {
            std::uniform_int_distribution<int> offset(-3, 3);
            Point next = farey_neighbour(here, offset(rng));
            loop.emplace_back(here, next);
            here = next;
        }
        Chain back = primitive_chain(here, base);
        loop.insert(loop.end(), back.begin(), back.end());
        if (loop.size() > length || loop.size() == length - 1) continue;
        pad_loop(loop, base, length, rng);
        return loop;
    }
    Chain loop;
    pad_loop(loop, base, length, rng);
    return loop;
}

Point random_point(std::mt19937_64& rng, int max_den, int max_abs_num) {
    if (rng() % 16 == 0) return Point::infinity();
    std::uniform_int_distribution<int> den(1, max_den);
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
    return Point(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace pm
