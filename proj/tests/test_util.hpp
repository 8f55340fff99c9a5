#pragma once

// Shared helpers for the test binaries: deterministic RNG and general-position
// point/line generators.  Every generator takes an explicit seed so failures
// reproduce.

#include <random>
#include <vector>

#include <hullkit/geometry.hpp>
#include <hullkit/oracles.hpp>

namespace hktest {

using namespace hullkit;

inline Exact random_rational(std::mt19937_64& rng, long num_range, long den_range = 1) {
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_range);
    return Exact(num(rng)) / Exact(den(rng));
}

// Distinct-x, no-three-collinear point set by rejection.  Keep n modest
// (collinearity check is cubic).
inline std::vector<PointR2> random_gp_points(std::size_t n, unsigned seed, long range = 1000,
                                             long den_range = 4) {
    std::mt19937_64 rng(seed);
    std::vector<PointR2> pts;
    while (pts.size() < n) {
        PointR2 p{random_rational(rng, range, den_range), random_rational(rng, range, den_range)};
        bool ok = true;
        for (const auto& q : pts)
            if (q.x == p.x) { ok = false; break; }
        for (std::size_t i = 0; ok && i < pts.size(); ++i)
            for (std::size_t j = i + 1; ok && j < pts.size(); ++j)
                if (orientation(pts[i], pts[j], p) == Orientation::Collinear) ok = false;
        if (ok) pts.push_back(std::move(p));
    }
    return pts;
}

// Pairwise non-parallel, no-three-concurrent lines (dual of the above).
inline std::vector<LineR2> random_gp_lines(std::size_t n, unsigned seed, long range = 1000,
                                           long den_range = 4) {
    auto pts = random_gp_points(n, seed, range, den_range);
    std::vector<LineR2> ls;
    ls.reserve(n);
    for (const auto& p : pts) ls.push_back(dualize(p));
    return ls;
}

} // namespace hktest
