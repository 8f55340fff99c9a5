#pragma once

// Brute-force referees.  Everything here favors obviousness over speed: the
// dynamic structures are tested against these on every fuzz trace.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace hullkit {

// Andrew-style scan, upper hull only.  Input need not be sorted.  Rejects
// duplicate x-coordinates and collinear triples met on the hull path.
inline std::vector<PointR2> oracle_upper_hull(std::vector<PointR2> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const PointR2& a, const PointR2& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i - 1].x == pts[i].x)
            throw DegenerateInput("oracle_upper_hull: duplicate x-coordinate");
    std::vector<PointR2> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            Orientation o = orientation(h[h.size() - 2], h.back(), p);
            if (o == Orientation::Collinear)
                throw DegenerateInput("oracle_upper_hull: collinear triple");
            if (o == Orientation::Left)
                h.pop_back();  // middle vertex is below the chord: not on the upper hull
            else
                break;
        }
        h.push_back(p);
    }
    return h;
}

inline std::vector<PointR2> oracle_lower_hull(std::vector<PointR2> pts) {
    for (auto& p : pts) { p.y = -p.y; }
    auto h = oracle_upper_hull(std::move(pts));
    for (auto& p : h) { p.y = -p.y; }
    return h;
}

// Value of the upper hull boundary at abscissa x, if x is inside the hull's
// x-range.
inline std::optional<Exact> hull_value_at(std::span<const PointR2> upper, const Exact& x) {
    if (upper.empty() || x < upper.front().x || x > upper.back().x) return std::nullopt;
    for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
        if (x <= upper[i + 1].x) {
            if (x == upper[i].x) return upper[i].y;
            if (x == upper[i + 1].x) return upper[i + 1].y;
            return eval(line_through(upper[i], upper[i + 1]), x);
        }
    }
    return upper.back().y;
}

// Strictly inside the closed region below the upper hull (between walls).
inline bool below_upper_hull(std::span<const PointR2> upper, const PointR2& p) {
    auto v = hull_value_at(upper, p.x);
    return v && p.y < *v;
}

// ---------------------------------------------------------------------------
// Lower envelope of lines, brute force.

// min over lines at x; second result is the attaining line index; ties throw.
inline std::pair<Exact, std::size_t> oracle_envelope_min(std::span<const LineR2> lines,
                                                         const Exact& x) {
    if (lines.empty()) throw ContractViolation("oracle_envelope_min: empty set");
    Exact best = eval(lines[0], x);
    std::size_t arg = 0;
    bool tie = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        Exact v = eval(lines[i], x);
        if (v < best) {
            best = v;
            arg = i;
            tie = false;
        } else if (v == best) {
            tie = true;
        }
    }
    if (tie) throw DegenerateInput("oracle_envelope_min: tie at query abscissa");
    return {best, arg};
}

// One maximal piece of the k-th level (k-th smallest value) of a line
// arrangement; xl/xr are absent for the unbounded ends.
struct LevelSegment {
    LineR2 line;
    std::optional<Exact> xl, xr;
};

// O(n^2 log n) sweep over all crossing abscissae; evaluates the k-th lowest
// line inside every interval.
inline std::vector<LevelSegment> oracle_klevel(std::span<const LineR2> lines, std::size_t k) {
    if (k < 1 || k > lines.size()) throw ContractViolation("oracle_klevel: k out of range");
    std::vector<Exact> xs;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i].slope != lines[j].slope) xs.push_back(intersect(lines[i], lines[j]).x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto kth_at = [&](const Exact& x) -> std::size_t {
        std::vector<std::pair<Exact, std::size_t>> vals;
        vals.reserve(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) vals.emplace_back(eval(lines[i], x), i);
        std::nth_element(vals.begin(), vals.begin() + (k - 1), vals.end());
        return vals[k - 1].second;
    };

    // Representative abscissae: one per open interval between crossings.
    std::vector<Exact> reps;
    if (xs.empty()) {
        reps.push_back(Exact(0));
    } else {
        reps.push_back(xs.front() - 1);
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) reps.push_back((xs[i] + xs[i + 1]) / 2);
        reps.push_back(xs.back() + 1);
    }

    std::vector<LevelSegment> segs;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        std::size_t li = kth_at(reps[i]);
        if (!segs.empty() && segs.back().line == lines[li]) {
            segs.back().xr = (i < xs.size()) ? std::optional<Exact>(xs[i]) : std::nullopt;
        } else {
            LevelSegment s;
            s.line = lines[li];
            s.xl = (i > 0) ? std::optional<Exact>(xs[i - 1]) : std::nullopt;
            s.xr = (i < xs.size()) ? std::optional<Exact>(xs[i]) : std::nullopt;
            segs.push_back(std::move(s));
        }
    }
    return segs;
}

// ---------------------------------------------------------------------------
// Dynamic oracle over identified points: the referee for the hull facades.

struct TangentPair {
    PointR2 a, b;  // a.x < b.x
};

class OracleHull {
  public:
    void insert(long long id, PointR2 p) {
        if (by_id_.count(id)) throw ContractViolation("oracle insert: duplicate id");
        for (auto& [oid, q] : by_id_)
            if (q.x == p.x) throw DegenerateInput("oracle insert: duplicate x-coordinate");
        by_id_.emplace(id, std::move(p));
        dirty_ = true;
    }

    void erase(long long id) {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) throw ContractViolation("oracle erase: unknown id");
        by_id_.erase(it);
        dirty_ = true;
    }

    const PointR2& point(long long id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) throw ContractViolation("oracle: unknown id");
        return it->second;
    }

    bool contains(long long id) const { return by_id_.count(id) != 0; }
    std::size_t size() const { return by_id_.size(); }

    const std::vector<PointR2>& upper() const { refresh(); return upper_; }
    const std::vector<PointR2>& lower() const { refresh(); return lower_; }

    PointR2 extreme(const Direction& d) const {
        std::vector<PointR2> pts = all_points();
        return extreme_of_direction(pts, d);
    }

    // Both tangent points from an outside query point, left one first.
    // nullopt when q is inside (or on) the hull.
    std::optional<TangentPair> tangents(const PointR2& q) const {
        std::vector<PointR2> pts = all_points();
        if (pts.empty()) throw ContractViolation("oracle tangents: empty set");
        std::vector<PointR2> touch;
        for (const auto& p : pts) {
            if (p.x == q.x)
                throw DegenerateInput("oracle tangents: query shares x with a point");
            int above = 0, below = 0;
            for (const auto& r : pts) {
                if (r == p) continue;
                switch (orientation(q, p, r)) {
                    case Orientation::Left: ++above; break;
                    case Orientation::Right: ++below; break;
                    case Orientation::Collinear:
                        throw DegenerateInput("oracle tangents: collinear with query");
                }
            }
            if (above == 0 || below == 0) touch.push_back(p);
        }
        if (touch.empty()) return std::nullopt;  // inside
        if (touch.size() != 2 && pts.size() >= 2)
            throw InternalError("oracle tangents: contact count " + std::to_string(touch.size()));
        if (touch.size() == 1) return TangentPair{touch[0], touch[0]};
        if (touch[0].x > touch[1].x) std::swap(touch[0], touch[1]);
        return TangentPair{touch[0], touch[1]};
    }

    bool on_hull(long long id) const {
        const PointR2& p = point(id);
        refresh();
        auto on = [&](const std::vector<PointR2>& chain) {
            return std::find(chain.begin(), chain.end(), p) != chain.end();
        };
        return on(upper_) || on(lower_);
    }

    // Neighbors of a hull vertex along the full hull cycle, as positions on
    // the combined boundary (upper hull left->right, then lower right->left).
    std::pair<PointR2, PointR2> hull_neighbors(long long id) const {
        const PointR2& p = point(id);
        refresh();
        std::vector<PointR2> cycle = upper_;
        for (auto it = lower_.rbegin(); it != lower_.rend(); ++it)
            if (std::find(cycle.begin(), cycle.end(), *it) == cycle.end() || cycle.size() <= 1)
                cycle.push_back(*it);
        // Degenerate tiny cycles (1-2 points) wrap onto themselves.
        auto pos = std::find(cycle.begin(), cycle.end(), p);
        if (pos == cycle.end()) throw ContractViolation("oracle neighbors: point not on hull");
        std::size_t i = std::size_t(pos - cycle.begin());
        std::size_t n = cycle.size();
        return {cycle[(i + n - 1) % n], cycle[(i + 1) % n]};
    }

    std::vector<PointR2> all_points() const {
        std::vector<PointR2> pts;
        pts.reserve(by_id_.size());
        for (auto& [id, p] : by_id_) pts.push_back(p);
        return pts;
    }

  private:
    void refresh() const {
        if (!dirty_) return;
        auto pts = all_points();
        upper_ = pts.empty() ? std::vector<PointR2>{} : oracle_upper_hull(pts);
        lower_ = pts.empty() ? std::vector<PointR2>{} : oracle_lower_hull(pts);
        dirty_ = false;
    }

    std::map<long long, PointR2> by_id_;
    mutable std::vector<PointR2> upper_, lower_;
    mutable bool dirty_ = true;
};

} // namespace hullkit
