#pragma once

#include "pm/arith.hpp"
#include "pm/matrix.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pm {

bool is_primitive(const Point& a, const Point& b);

// Oriented primitive segment; the ordered pair (from, to).
class Segment {
public:
    Segment(Point from, Point to);

    const Point& from() const { return from_; }
    const Point& to() const { return to_; }
    Segment reversed() const { return {to_, from_}; }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment& x, const Segment& y) {
        if (auto c = x.from_ <=> y.from_; c != 0) return c;
        return x.to_ <=> y.to_;
    }

private:
    Point from_;
    Point to_;
};

std::string to_string(const Segment& s);

// The PSL(2,Z) element g with g(inf) = from, g(0) = to, in canonical form.
UnimodularMatrix segment_matrix(const Segment& s);
Segment image(const UnimodularMatrix& g, const Segment& s);

using Chain = std::vector<Segment>;

bool is_chain(const Chain& chain);
bool is_loop(const Chain& chain);

// Convergent chain from a to inf, reversed, followed by the one from inf to b.
Chain primitive_chain(const Point& a, const Point& b);
// Convergent chain inf -> x.
Chain convergent_chain(const Point& x);

enum class MoveKind { cancel_pair, insert_pair, cancel_triangle, insert_triangle };

struct Move {
    MoveKind kind;
    std::size_t position;
    std::vector<Segment> inserted;  // empty for cancellations
};

std::string to_string(MoveKind kind);

// Throws std::invalid_argument if the move does not apply at its position.
void apply_move(Chain& chain, const Move& move);

// Moves turning a loop into the empty loop. Throws on a non-loop.
std::vector<Move> reduce_loop(const Chain& loop);

// The Farey neighbours of x: g(n) for g = segment_matrix(x, *) and n in Z.
Point farey_neighbour(const Point& x, const Integer& n);

// Random insertions of pairs and triangles; endpoints are preserved.
Chain randomize_chain(Chain chain, std::mt19937_64& rng, int insertions);

// A random primitive loop of exactly `length` segments based at `base` (length >= 2).
Chain random_loop(const Point& base, std::size_t length, std::mt19937_64& rng);

Point random_point(std::mt19937_64& rng, int max_den, int max_abs_num);

}  // namespace pm
