#include "qnilp/weyl.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qnilp;

TEST_CASE("type validation") {
    CHECK_THROWS_AS(LieType::make('B', 1), std::invalid_argument);
    CHECK_THROWS_AS(LieType::make('E', 5), std::invalid_argument);
    CHECK_THROWS_AS(LieType::make('F', 5), std::invalid_argument);
    CHECK_THROWS_AS(LieType::make('G', 3), std::invalid_argument);
    CHECK_THROWS_AS(LieType::make('X', 2), std::invalid_argument);
    CHECK(LieType::make('D', 3) == LieType::make('A', 3));  // relabeled
    CHECK(LieType::parse("E6").name() == "E6");
}

TEST_CASE("positive root counts and cmax") {
    struct Row {
        const char* name;
        int count, cmax;
    };
    const Row rows[] = {{"A2", 3, 1},  {"A5", 15, 1}, {"B2", 4, 2},  {"B4", 16, 2}, {"C3", 9, 2},
                        {"D4", 12, 2}, {"D6", 30, 2}, {"G2", 6, 3},  {"F4", 24, 4}, {"E6", 36, 3},
                        {"E7", 63, 4}, {"E8", 120, 6}};
    for (const auto& r : rows) {
        const RootSystem rs = build_root_system(LieType::parse(r.name));
        CAPTURE(r.name);
        CHECK(rs.num_positive() == r.count);
        CHECK(rs.cmax == r.cmax);
        // theta is the coordinate-wise maximum
        for (int k = 1; k <= rs.num_positive(); ++k)
            for (int c = 0; c < rs.n; ++c)
                CHECK(rs.root(k)[static_cast<std::size_t>(c)] <= rs.theta[static_cast<std::size_t>(c)]);
        // positive height throughout; reflection closure is idempotent
        for (int k = 1; k <= rs.num_positive(); ++k) {
            CHECK(rs.height(k) >= 1);
            for (int i = 0; i < rs.n; ++i)
                CHECK(std::abs(rs.sref[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) <= rs.num_positive());
        }
    }
}

TEST_CASE("A2 has theta = a1 + a2") {
    const RootSystem rs = build_root_system(LieType::parse("A2"));
    CHECK(rs.theta == RootVec{1, 1});
}

TEST_CASE("pairing values") {
    const RootSystem a2 = build_root_system(LieType::parse("A2"));
    CHECK(pairing(a2, {1, 0}, {0, 1}) == -1);
    const RootSystem g2 = build_root_system(LieType::parse("G2"));
    CHECK(pairing(g2, {1, 0}, {0, 1}) == -3);
    CHECK(g2.d == std::vector<int>{1, 3});  // short, long
    CHECK_THROWS_AS(pairing(a2, {1, 0, 0}, {0, 1}), std::invalid_argument);

    // <theta, theta> = 2 * (long-root half-norm): brute force over roots
    for (const char* name : {"A3", "B3", "C3", "G2", "F4"}) {
        const RootSystem rs = build_root_system(LieType::parse(name));
        int maxnorm = 0;
        for (int k = 1; k <= rs.num_positive(); ++k) maxnorm = std::max(maxnorm, rs.pair_form(rs.root(k), rs.root(k)));
        CHECK(rs.pair_form(rs.theta, rs.theta) == maxnorm);
    }
}

TEST_CASE("pairing is W-invariant") {
    std::mt19937_64 rng(5);
    for (const char* name : {"A3", "B3", "G2", "F4"}) {
        const RootSystem rs = build_root_system(LieType::parse(name));
        for (int trial = 0; trial < 50; ++trial) {
            WeylElement w = WeylElement::identity(rs);
            for (int t = 0; t < 6; ++t) w = w.mul_simple_right(static_cast<int>(rng() % rs.n) + 1);
            const RootVec a = rs.root(static_cast<int>(rng() % rs.num_positive()) + 1);
            const RootVec b = rs.root(static_cast<int>(rng() % rs.num_positive()) + 1);
            CHECK(rs.pair_form(w.act(a), w.act(b)) == rs.pair_form(a, b));
        }
    }
}

TEST_CASE("nonnegative combination search") {
    // B3: epsilon-named roots as simple-root coordinates
    const RootVec e2e3{0, 1, 2};    // e2 + e3
    const RootVec e1e3{1, 1, 2};    // e1 + e3
    const RootVec e2{0, 1, 1};      // e2
    const RootVec e1_2e3{1, 1, 3};  // e1 + 2 e3 (not a root, just a goal)
    const RootVec e1e2e3{1, 2, 3};  // e1 + e2 + e3

    CHECK_FALSE(nonneg_combination_exists({}, e2e3));
    CHECK_FALSE(nonneg_combination_exists({e2e3}, e1_2e3));
    CHECK(nonneg_combination_exists({e2e3, e1e3, e2}, e1e2e3));
    CHECK(nonneg_combination_exists({e2}, RootVec{0, 0, 0}));  // empty sum
    CHECK_THROWS_AS(nonneg_combination_exists({e2}, RootVec{0, -1, 0}), std::invalid_argument);

    // cross-check against exhaustive search with small coefficient bounds
    std::mt19937_64 rng(17);
    const RootSystem rs = build_root_system(LieType::parse("B3"));
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<RootVec> pool;
        for (int t = 0; t < 4; ++t) pool.push_back(rs.root(static_cast<int>(rng() % rs.num_positive()) + 1));
        RootVec goal(3, 0);
        for (int c = 0; c < 3; ++c) goal[static_cast<std::size_t>(c)] = static_cast<int>(rng() % 5);
        bool brute = false;
        for (int m0 = 0; m0 <= 5 && !brute; ++m0)
            for (int m1 = 0; m1 <= 5 && !brute; ++m1)
                for (int m2 = 0; m2 <= 5 && !brute; ++m2)
                    for (int m3 = 0; m3 <= 5 && !brute; ++m3) {
                        RootVec sum(3, 0);
                        const int ms[] = {m0, m1, m2, m3};
                        for (int t = 0; t < 4; ++t)
                            for (int c = 0; c < 3; ++c) sum[static_cast<std::size_t>(c)] += ms[t] * pool[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
                        brute |= sum == goal;
                    }
        CHECK(nonneg_combination_exists(pool, goal) == brute);
    }
}
