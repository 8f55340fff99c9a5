#pragma once

#include <optional>
#include <span>
#include <vector>

#include "exact.hpp"
#include "instrument.hpp"

namespace hullkit {

struct PointR2 {
    Exact x, y;
    bool operator==(const PointR2&) const = default;
};

// Non-vertical line stored as the graph y = slope*x - offset.  The sign
// convention makes point/line duality an involution: the point (a,b) maps to
// the line y = a*x - b and back.
struct LineR2 {
    Exact slope, offset;
    bool operator==(const LineR2&) const = default;
};

struct VerticalLine {
    Exact x;
};

struct Direction {
    Exact dx, dy;
};

enum class Orientation { Right = -1, Collinear = 0, Left = 1 };

// Sign of the 2x2 determinant of (q-p, r-p): Left when r lies left of the
// directed line p->q.
inline Orientation orientation(const PointR2& p, const PointR2& q, const PointR2& r) {
    count_predicate();
    Exact det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    int s = sign(det);
    return s > 0 ? Orientation::Left : s < 0 ? Orientation::Right : Orientation::Collinear;
}

inline LineR2 dualize(const PointR2& p) { return LineR2{p.x, p.y}; }

inline PointR2 dualize(const LineR2& l) { return PointR2{l.slope, l.offset}; }

inline Exact eval(const LineR2& l, const Exact& x) { return l.slope * x - l.offset; }

inline LineR2 line_through(const PointR2& p, const PointR2& q) {
    if (p.x == q.x) throw DegenerateInput("line_through: points share an x-coordinate");
    Exact slope = (q.y - p.y) / (q.x - p.x);
    return LineR2{slope, slope * p.x - p.y};
}

inline PointR2 intersect(const LineR2& l1, const LineR2& l2) {
    count_predicate();
    if (l1.slope == l2.slope) throw DegenerateInput("intersect: parallel lines");
    Exact x = (l1.offset - l2.offset) / (l1.slope - l2.slope);
    return PointR2{x, eval(l1, x)};
}

inline PointR2 intersect(const LineR2& l, const VerticalLine& v) {
    count_predicate();
    return PointR2{v.x, eval(l, v.x)};
}

// +1 when p lies strictly above l, 0 on l, -1 strictly below.
inline int side_of_line(const LineR2& l, const PointR2& p) {
    count_predicate();
    return sign(p.y - eval(l, p.x));
}

// argmax of d*p over hull vertices; requires dy != 0, rejects ties.
inline PointR2 extreme_of_direction(std::span<const PointR2> pts, const Direction& d) {
    if (pts.empty()) throw ContractViolation("extreme_of_direction: empty set");
    if (sign(d.dy) == 0) throw DegenerateInput("extreme_of_direction: dy must be nonzero");
    std::size_t best = 0;
    bool tied = false;
    Exact best_dot = d.dx * pts[0].x + d.dy * pts[0].y;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        count_predicate();
        Exact dot = d.dx * pts[i].x + d.dy * pts[i].y;
        if (dot > best_dot) {
            best = i;
            best_dot = dot;
            tied = false;
        } else if (dot == best_dot) {
            tied = true;
        }
    }
    if (tied) throw DegenerateInput("extreme_of_direction: tie (general position violated)");
    return pts[best];
}

enum class ChainCheck { Ok, NotSorted, DuplicateX, Collinear, NotConvex };

// Validates a strictly x-sorted, strictly upper-convex vertex chain
// (slopes strictly decreasing left to right).
inline ChainCheck check_upper_chain(std::span<const PointR2> pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i - 1].x == pts[i].x) return ChainCheck::DuplicateX;
        if (pts[i - 1].x > pts[i].x) return ChainCheck::NotSorted;
    }
    for (std::size_t i = 2; i < pts.size(); ++i) {
        switch (orientation(pts[i - 2], pts[i - 1], pts[i])) {
            case Orientation::Collinear: return ChainCheck::Collinear;
            case Orientation::Left: return ChainCheck::NotConvex;  // bends upward
            case Orientation::Right: break;
        }
    }
    return ChainCheck::Ok;
}

} // namespace hullkit
