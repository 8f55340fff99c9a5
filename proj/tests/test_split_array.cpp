#include <catch2/catch_amalgamated.hpp>

#include <hullkit/split_array.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace hullkit;
using SA = SplitArray<int>;

namespace {

std::vector<int> iota_vec(int n, int start = 1) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[std::size_t(i)] = start + i;
    return v;
}

std::vector<int> contents(SA s) {  // drains a copy
    std::vector<int> out;
    while (!s.empty()) out.push_back(s.delete_min());
    return out;
}

// Pinned from a brute-force sweep over every split position at
// n in {16, 64, 256, 1024, 4096, 65536}: max observed ratio 2.14 (n=256,
// t=32).  The bound below must hold for every split regardless of position.
constexpr double kSplitComparisonFactor = 3.5;

double split_budget(std::size_t left, std::size_t right) {
    double m = double(std::min(left, right) + 1);
    return kSplitComparisonFactor * (1.0 + std::log2(m + 1));
}

} // namespace

TEST_CASE("split array basics") {
    auto s = SA::build(iota_vec(3));
    CHECK(s.size() == 3);
    CHECK(s.min() == 1);
    CHECK(s.max() == 3);

    auto e = SA::build({});
    CHECK(e.empty());
    CHECK_THROWS_AS(e.min(), EmptyStructure);
    CHECK_THROWS_AS(e.delete_min(), EmptyStructure);
    CHECK_THROWS_AS(e.max(), EmptyStructure);
    CHECK_THROWS_AS(e.delete_max(), EmptyStructure);

    auto one = SA::build({5});
    CHECK(one.min() == 5);
    CHECK(one.max() == 5);
    CHECK(one.delete_max() == 5);
    CHECK(one.empty());

    CHECK_THROWS_AS(SA::build({1, 3, 2}), ContractViolation);
    CHECK_THROWS_AS(SA::build({1, 1, 2}), ContractViolation);
}

TEST_CASE("delete operations shrink the window") {
    auto s = SA::build({3, 7, 9});
    CHECK(s.min() == 3);
    CHECK(s.delete_max() == 9);
    CHECK(contents(s) == std::vector<int>{3, 7});
}

TEST_CASE("split semantics") {
    auto [s1, s2] = SA::build(iota_vec(8)).split(3);
    CHECK(contents(s1) == std::vector<int>{1, 2, 3});
    CHECK(contents(s2) == std::vector<int>{4, 5, 6, 7, 8});

    auto [t1, t2] = SA::build(iota_vec(8)).split(0);
    CHECK(t1.empty());
    CHECK(contents(t2) == iota_vec(8));

    auto [u1, u2] = SA::build(iota_vec(8)).split(100);
    CHECK(u1.size() == 8);
    CHECK(u2.empty());

    // element between stored values
    auto [v1, v2] = SA::build({10, 20, 30}).split(25);
    CHECK(contents(v1) == std::vector<int>{10, 20});
    CHECK(contents(v2) == std::vector<int>{30});

    auto consumed = SA::build(iota_vec(4));
    auto parts = consumed.split(2);
    CHECK_THROWS_AS(consumed.min(), ContractViolation);
    CHECK_THROWS_AS(consumed.split(1), ContractViolation);
}

TEST_CASE("split comparison count is logarithmic in the smaller side") {
    for (int n : {1024, 4096}) {
        for (int t = 0; t <= n; ++t) {
            auto s = SA::build(iota_vec(n));
            uint64_t before = g_steps.inspections;
            auto [s1, s2] = s.split(t);
            uint64_t used = g_steps.inspections - before;
            REQUIRE(s1.size() == std::size_t(t));
            REQUIRE(s2.size() == std::size_t(n - t));
            CHECK(double(used) <= split_budget(s1.size(), s2.size()));
        }
    }
    // the worked example: position 2 of 2^16 elements stays within the
    // budget of the 3-element side
    auto big = SA::build(iota_vec(1 << 16));
    uint64_t before = g_steps.inspections;
    auto [b1, b2] = big.split(2);
    uint64_t used = g_steps.inspections - before;
    CHECK(b1.size() == 2);
    CHECK(double(used) <= split_budget(2, (1 << 16) - 2));
}

TEST_CASE("split array matches a plain sorted list under random operations") {
    std::mt19937_64 rng(271828);
    for (int round = 0; round < 20; ++round) {
        int n = 1 + int(rng() % 10000);
        // model: list of (split-array, reference vector) pairs
        std::vector<std::pair<SA, std::vector<int>>> pool;
        pool.emplace_back(SA::build(iota_vec(n)), iota_vec(n));
        uint64_t before = g_steps.inspections;
        int ops_done = 0;
        for (int op = 0; op < 200 && !pool.empty(); ++op, ++ops_done) {
            std::size_t k = rng() % pool.size();
            auto& [sa, ref] = pool[k];
            switch (rng() % 4) {
                case 0: {  // split at random value
                    int t = int(rng() % std::size_t(n + 2)) - 1;
                    auto [a, b] = sa.split(t);
                    std::vector<int> ra, rb;
                    for (int x : ref) (x <= t ? ra : rb).push_back(x);
                    pool.erase(pool.begin() + std::ptrdiff_t(k));
                    if (!a.empty()) pool.emplace_back(std::move(a), std::move(ra));
                    if (!b.empty()) pool.emplace_back(std::move(b), std::move(rb));
                    break;
                }
                case 1: {
                    if (ref.empty()) break;
                    CHECK(sa.delete_min() == ref.front());
                    ref.erase(ref.begin());
                    break;
                }
                case 2: {
                    if (ref.empty()) break;
                    CHECK(sa.delete_max() == ref.back());
                    ref.pop_back();
                    break;
                }
                default: {
                    if (ref.empty()) break;
                    CHECK(sa.min() == ref.front());
                    CHECK(sa.max() == ref.back());
                    break;
                }
            }
            if (k < pool.size() && pool[k].second.empty()) {
                CHECK(pool[k].first.empty());
                pool.erase(pool.begin() + std::ptrdiff_t(k));
            }
        }
        // Amortized accounting: whole-session comparisons stay linear in
        // elements-built plus operations-performed.  Measured 0.884 per unit
        // on random in-range sessions at n up to 1e5; pinned with headroom.
        uint64_t total = g_steps.inspections - before;
        CHECK(double(total) <= 3.0 * double(n + ops_done) + 32.0);
    }
}
