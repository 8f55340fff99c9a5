#include <catch2/catch_amalgamated.hpp>

#include <hullkit/exact.hpp>
#include <hullkit/geometry.hpp>
#include <hullkit/oracles.hpp>

#include "test_util.hpp"

using namespace hullkit;
using hktest::random_gp_points;
using hktest::random_rational;

TEST_CASE("exact scalar parsing and formatting") {
    CHECK(parse_exact("42") == Exact(42));
    CHECK(parse_exact("-7") == Exact(-7));
    CHECK(parse_exact("3/4") == Exact(3) / 4);
    CHECK(parse_exact("-10/4") == Exact(-5) / 2);
    CHECK(parse_exact("-1.25") == Exact(-5) / 4);
    CHECK(parse_exact("0.5") == Exact(1) / 2);
    CHECK(format_exact(Exact(42)) == "42");
    CHECK(format_exact(Exact(-5) / 2) == "-5/2");
    CHECK_THROWS_AS(parse_exact("1/0"), ContractViolation);
    CHECK_THROWS_AS(parse_exact("abc"), ContractViolation);
    CHECK_THROWS_AS(parse_exact(""), ContractViolation);
}

TEST_CASE("orientation on fixed triples") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::Left);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == Orientation::Collinear);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::Right);
}

TEST_CASE("orientation properties under swap and translation") {
    std::mt19937_64 rng(20240901);
    for (int it = 0; it < 500; ++it) {
        PointR2 p{random_rational(rng, 50, 8), random_rational(rng, 50, 8)};
        PointR2 q{random_rational(rng, 50, 8), random_rational(rng, 50, 8)};
        PointR2 r{random_rational(rng, 50, 8), random_rational(rng, 50, 8)};
        Orientation o = orientation(p, q, r);
        // swapping two arguments flips the sign
        Orientation os = orientation(p, r, q);
        CHECK(int(o) == -int(os));
        // cyclic shift preserves it
        CHECK(orientation(q, r, p) == o);
        // translation invariance
        Exact tx = random_rational(rng, 1000, 3), ty = random_rational(rng, 1000, 3);
        auto sh = [&](const PointR2& a) { return PointR2{a.x + tx, a.y + ty}; };
        CHECK(orientation(sh(p), sh(q), sh(r)) == o);
    }
}

namespace {

// Quad-precision screen for the determinant sign.  Returns +1/-1/0 when the
// computation is provably on the right side of zero, nullopt when uncertain.
std::optional<int> filtered_orientation(const PointR2& p, const PointR2& q, const PointR2& r) {
    auto f = [](const Exact& v) -> __float128 {
        // Test inputs keep numerator/denominator small, so the two casts are
        // exact and the division costs at most half an ulp.
        return __float128(double(numerator(v).convert_to<long long>())) /
               __float128(double(denominator(v).convert_to<long long>()));
    };
    __float128 px = f(p.x), py = f(p.y), qx = f(q.x), qy = f(q.y), rx = f(r.x), ry = f(r.y);
    __float128 det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    auto mag = [](__float128 v) { return v < 0 ? -v : v; };
    __float128 m = (mag(qx) + mag(px)) * (mag(ry) + mag(py)) +
                   (mag(qy) + mag(py)) * (mag(rx) + mag(px));
    __float128 u = 1;
    for (int i = 0; i < 112; ++i) u /= 2;
    __float128 bound = 16 * u * m;
    if (det > bound) return 1;
    if (det < -bound) return -1;
    if (m == 0 || bound == 0) return 0;  // all terms exactly zero
    return std::nullopt;
}

} // namespace

TEST_CASE("exact orientation agrees with a certain quad-precision filter") {
    std::mt19937_64 rng(77001);
    int certain = 0, total = 0;
    for (int it = 0; it < 2000; ++it) {
        PointR2 p{random_rational(rng, 1 << 20, 16), random_rational(rng, 1 << 20, 16)};
        PointR2 q{random_rational(rng, 1 << 20, 16), random_rational(rng, 1 << 20, 16)};
        PointR2 r{random_rational(rng, 1 << 20, 16), random_rational(rng, 1 << 20, 16)};
        ++total;
        auto filt = filtered_orientation(p, q, r);
        if (!filt) continue;
        ++certain;
        CHECK(int(orientation(p, q, r)) == *filt);
    }
    // The screen must not be vacuous on generic inputs.
    CHECK(certain > total / 2);
    // And near-degenerate inputs still agree whenever the screen speaks.
    for (int it = 0; it < 500; ++it) {
        Exact x0 = random_rational(rng, 100, 4), step = random_rational(rng, 100, 4);
        PointR2 p{x0, x0 * 2 + 1};
        PointR2 q{x0 + step, (x0 + step) * 2 + 1};
        PointR2 r{x0 + step * 2, (x0 + step * 2) * 2 + 1 + random_rational(rng, 1, 1 << 20)};
        auto filt = filtered_orientation(p, q, r);
        if (filt) CHECK(int(orientation(p, q, r)) == *filt);
    }
}

TEST_CASE("point/line duality") {
    CHECK(dualize(PointR2{2, 3}) == LineR2{2, 3});      // y = 2x - 3
    CHECK(eval(LineR2{2, 3}, Exact(0)) == Exact(-3));
    CHECK(dualize(PointR2{0, 0}) == LineR2{0, 0});      // y = 0
    PointR2 p{Exact(-5), Exact(7) / 3};
    CHECK(dualize(dualize(p)) == p);
}

TEST_CASE("line intersection") {
    PointR2 a = intersect(LineR2{1, 0}, LineR2{-1, -2});  // y=x and y=-x+2
    CHECK(a == PointR2{1, 1});
    PointR2 b = intersect(LineR2{0, 0}, VerticalLine{4});
    CHECK(b == PointR2{4, 0});
    CHECK_THROWS_AS(intersect(LineR2{2, 3}, LineR2{2, 5}), DegenerateInput);
}

TEST_CASE("extreme point of a direction") {
    std::vector<PointR2> tri{{0, 0}, {1, 2}, {2, 0}};
    CHECK(extreme_of_direction(tri, Direction{0, 1}) == PointR2{1, 2});
    CHECK(extreme_of_direction(tri, Direction{1, 1}) == PointR2{1, 2});
    std::vector<PointR2> one{{5, 5}};
    CHECK(extreme_of_direction(one, Direction{-3, 7}) == PointR2{5, 5});
    std::vector<PointR2> flat{{0, 0}, {2, 0}};
    CHECK_THROWS_AS(extreme_of_direction(flat, Direction{0, 1}), DegenerateInput);
    CHECK_THROWS_AS(extreme_of_direction(tri, Direction{1, 0}), DegenerateInput);
    CHECK_THROWS_AS(extreme_of_direction(std::span<const PointR2>{}, Direction{0, 1}),
                    ContractViolation);
}

TEST_CASE("duality reverses hull/envelope order") {
    for (unsigned seed = 1; seed <= 24; ++seed) {
        std::size_t n = 3 + seed % 10;  // up to 12
        auto pts = random_gp_points(n, 9000 + seed, 60, 3);
        auto hull = oracle_upper_hull(pts);
        std::vector<LineR2> duals;
        for (const auto& p : pts) duals.push_back(dualize(p));
        auto env = oracle_klevel(duals, 1);
        REQUIRE(env.size() == hull.size());
        for (std::size_t i = 0; i < env.size(); ++i)
            CHECK(env[i].line == dualize(hull[hull.size() - 1 - i]));
    }
}

TEST_CASE("extreme query matches dual envelope evaluation") {
    std::mt19937_64 rng(5150);
    for (unsigned seed = 1; seed <= 20; ++seed) {
        auto pts = random_gp_points(6 + seed % 7, 1300 + seed, 80, 3);
        std::vector<LineR2> duals;
        for (const auto& p : pts) duals.push_back(dualize(p));
        for (int k = 0; k < 10; ++k) {
            Exact alpha = random_rational(rng, 40, 7);
            PointR2 ext;
            try {
                ext = extreme_of_direction(pts, Direction{-alpha, 1});
            } catch (const DegenerateInput&) {
                continue;  // tie: direction not admissible for this set
            }
            auto [val, idx] = oracle_envelope_min(duals, alpha);
            CHECK(duals[idx] == dualize(ext));
            CHECK(val == eval(dualize(ext), alpha));
        }
    }
}

TEST_CASE("upper chain checker") {
    using C = ChainCheck;
    std::vector<PointR2> ok{{0, 0}, {2, 3}, {4, 1}};
    CHECK(check_upper_chain(ok) == C::Ok);
    std::vector<PointR2> unsorted{{2, 3}, {0, 0}, {4, 1}};
    CHECK(check_upper_chain(unsorted) == C::NotSorted);
    std::vector<PointR2> dup{{0, 0}, {0, 3}, {4, 1}};
    CHECK(check_upper_chain(dup) == C::DuplicateX);
    std::vector<PointR2> coll{{0, 0}, {1, 1}, {2, 2}};
    CHECK(check_upper_chain(coll) == C::Collinear);
    std::vector<PointR2> refl{{0, 0}, {1, -2}, {2, 0}};
    CHECK(check_upper_chain(refl) == C::NotConvex);
    std::vector<PointR2> single{{1, 1}};
    CHECK(check_upper_chain(single) == C::Ok);
}
