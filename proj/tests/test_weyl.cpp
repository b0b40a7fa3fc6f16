#include "qnilp/weyl.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qnilp;

namespace {

std::vector<WeylElement> whole_group(const RootSystem& rs) {
    std::vector<WeylElement> out;
    std::unordered_set<std::uint64_t> seen;
    std::vector<WeylElement> frontier = {WeylElement::identity(rs)};
    seen.insert(frontier[0].key());
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const auto& w : frontier) {
            out.push_back(w);
            for (int i = 1; i <= rs.n; ++i) {
                WeylElement u = w.mul_simple_right(i);
                if (seen.insert(u.key()).second) next.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("group operations") {
    const RootSystem rs = build_root_system(LieType::parse("A2"));
    const WeylElement s1 = simple_reflection(rs, 1), s2 = simple_reflection(rs, 2);
    CHECK((s1 * s1).is_identity());
    CHECK((s1 * s2).inverse() == s2 * s1);
    // s1 s2 (a1) = a2
    CHECK((s1 * s2).act({1, 0}) == RootVec{0, 1});
    CHECK_THROWS_AS(simple_reflection(rs, 3), std::invalid_argument);

    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    CHECK(simple_reflection(b3, 3).act({0, 0, 1}) == RootVec{0, 0, -1});
    // matrix columns are the simple-root images
    const auto cols = (s1 * s2).matrix();
    CHECK(cols[0] == RootVec{0, 1});
}

TEST_CASE("length and descents") {
    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    CHECK(WeylElement::identity(b3).length() == 0);
    CHECK(WeylElement::identity(b3).left_descents().empty());
    const WeylElement w = from_word(b3, {3, 2, 1, 3, 2});
    CHECK(w.length() == 5);

    const RootSystem b2 = build_root_system(LieType::parse("B2"));
    const WeylElement v = build_bigrassmannian(b2, {0, 0, 1, 1, 0, 0});
    CHECK(v.length() == 2);
    CHECK(v.left_descents() == std::vector<int>{2});
    CHECK(v.right_descents() == std::vector<int>{1});

    // l(w s_i) = l(w) +/- 1 across a sample
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        WeylElement u = WeylElement::identity(b3);
        for (int t = 0; t < static_cast<int>(rng() % 9); ++t) u = u.mul_simple_right(static_cast<int>(rng() % 3) + 1);
        for (int i = 1; i <= 3; ++i) CHECK(std::abs(u.mul_simple_right(i).length() - u.length()) == 1);
    }
}

TEST_CASE("reduced words") {
    const RootSystem a2 = build_root_system(LieType::parse("A2"));
    CHECK(reduced_word(WeylElement::identity(a2)).empty());
    CHECK(reduced_word(longest_element(a2)) == Word{1, 2, 1});

    const RootSystem g2 = build_root_system(LieType::parse("G2"));
    CHECK(reduced_word(longest_element(g2)) == Word{1, 2, 1, 2, 1, 2});
    CHECK(longest_element(g2).length() == 6);

    CHECK(is_reduced(a2, {1, 2, 1}));
    CHECK_FALSE(is_reduced(a2, {1, 1}));
    // from_word(reduced_word(w)) == w over all of W(B3)
    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    for (const auto& w : whole_group(b3)) CHECK(from_word(b3, reduced_word(w)) == w);
}

TEST_CASE("weak orders") {
    const RootSystem b2 = build_root_system(LieType::parse("B2"));
    const auto all = whole_group(b2);
    CHECK(all.size() == 8);
    for (const auto& w : all) {
        CHECK(leq_L(WeylElement::identity(b2), w));
        // s_j <=_L w iff j is a right descent
        for (int j = 1; j <= 2; ++j) CHECK(leq_L(simple_reflection(b2, j), w) == w.right_descent(j));
        // w0(1,2) <=_L w iff both right descents present
        CHECK(leq_L(w0ab(b2, 1, 2), w) == (w.right_descent(1) && w.right_descent(2)));
    }
}

TEST_CASE("w0ab and longest element") {
    const RootSystem a2 = build_root_system(LieType::parse("A2"));
    CHECK(w0ab(a2, 1, 2) == from_word(a2, {1, 2, 1}));
    CHECK_THROWS_AS(w0ab(a2, 1, 1), std::invalid_argument);
    const RootSystem g2 = build_root_system(LieType::parse("G2"));
    CHECK(w0ab(g2, 1, 2) == longest_element(g2));
    const RootSystem f4 = build_root_system(LieType::parse("F4"));
    CHECK(longest_element(f4).length() == 24);
    for (const char* name : {"A3", "B4", "C4", "D4", "D5", "E6"}) {
        const RootSystem rs = build_root_system(LieType::parse(name));
        const Word w0w = standard_w0_word(rs);
        CHECK(is_reduced(rs, w0w));
        CHECK(from_word(rs, w0w) == longest_element(rs));
    }
}

TEST_CASE("radical roots") {
    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    CHECK(radical_roots(b3, {3}) == std::vector<RootVec>{{0, 0, 1}});
    // e3 < e2+e3 < e1+e3 < e2 < e1+e2
    CHECK(radical_roots(b3, {3, 2, 1, 3, 2}) ==
          std::vector<RootVec>{{0, 0, 1}, {0, 1, 2}, {1, 1, 2}, {0, 1, 1}, {1, 2, 2}});
    CHECK_THROWS_AS(radical_roots(b3, {3, 3}), std::invalid_argument);

    // multiset of radical roots only depends on the element; set equals
    // the positive roots sent negative by w^{-1}  (exhaustive over W(B2))
    const RootSystem b2 = build_root_system(LieType::parse("B2"));
    for (const auto& w : whole_group(b2)) {
        std::vector<Word> words;
        // enumerate all reduced words by DFS
        std::function<void(const WeylElement&, Word&)> dfs = [&](const WeylElement& u, Word& acc) {
            if (u.is_identity()) {
                Word rev(acc.rbegin(), acc.rend());
                words.push_back(rev);
                return;
            }
            for (int i = 1; i <= 2; ++i)
                if (u.right_descent(i)) {
                    acc.push_back(i);
                    dfs(u.mul_simple_right(i), acc);
                    acc.pop_back();
                }
        };
        Word acc;
        dfs(w, acc);
        std::set<std::multiset<RootVec>> seen;
        for (const auto& word : words) {
            auto betas = radical_roots(b2, word);
            seen.insert(std::multiset<RootVec>(betas.begin(), betas.end()));
        }
        CHECK(seen.size() <= 1);
        if (!words.empty()) {
            std::set<RootVec> expect;
            for (int k = 1; k <= b2.num_positive(); ++k)
                if (w.image_inv(k) < 0) expect.insert(b2.root(k));
            auto betas = radical_roots(b2, words[0]);
            CHECK(std::set<RootVec>(betas.begin(), betas.end()) == expect);
        }
    }
}

TEST_CASE("ws_j = s_k w iff w(alpha_j) = +/- alpha_k") {
    for (const char* name : {"B2", "G2"}) {
        const RootSystem rs = build_root_system(LieType::parse(name));
        for (const auto& w : whole_group(rs))
            for (int j = 1; j <= rs.n; ++j)
                for (int k = 1; k <= rs.n; ++k) {
                    const bool lhs = w.mul_simple_right(j) == w.mul_simple_left(k);
                    const int im = w.image(j);
                    CHECK(lhs == (std::abs(im) == k));
                }
    }
}

TEST_CASE("support and subdiagram classification") {
    const RootSystem a3 = build_root_system(LieType::parse("A3"));
    CHECK(support(from_word(a3, {1, 3})) == std::vector<int>{1, 3});

    const RootSystem f4 = build_root_system(LieType::parse("F4"));
    const SubdiagramType sub = subdiagram_type(f4, {2, 3});
    CHECK((sub.type == LieType{'B', 2} || sub.type == LieType{'C', 2}));
    CHECK(sub.sigma.size() == 2);
    CHECK_THROWS_AS(subdiagram_type(f4, {1, 3}), std::invalid_argument);  // disconnected

    const RootSystem e7 = build_root_system(LieType::parse("E7"));
    const WeylElement z43supp = from_word(e7, {1, 3, 4, 2, 5, 4, 3, 1});
    const auto sup = support(z43supp);
    CHECK(sup == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(subdiagram_type(e7, sup).type == LieType::parse("D5"));

    // relabeling preserves the Cartan pairing
    const RootSystem d5 = build_root_system(LieType::parse("D5"));
    const auto sigma = subdiagram_type(e7, sup).sigma;
    for (int a : sup)
        for (int b : sup)
            CHECK(e7.cartan[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] ==
                  d5.cartan[static_cast<std::size_t>(sigma.at(a) - 1)][static_cast<std::size_t>(sigma.at(b) - 1)]);
}

TEST_CASE("signed permutations round trip") {
    for (const char* name : {"B3", "D4", "A3", "C3"}) {
        const RootSystem rs = build_root_system(LieType::parse(name));
        for (const auto& w : whole_group(rs)) CHECK(from_signed_permutation(rs, to_signed_permutation(rs, w)) == w);
    }
}

TEST_CASE("bigrassmannian block matrices") {
    const RootSystem b2 = build_root_system(LieType::parse("B2"));
    CHECK(build_bigrassmannian(b2, {2, 0, 0, 0, 0, 0}).is_identity());
    const WeylElement w = build_bigrassmannian(b2, {0, 0, 1, 1, 0, 0});
    CHECK(w.length() == 2);
    CHECK(w.left_descents() == std::vector<int>{2});
    CHECK(w.right_descents() == std::vector<int>{1});

    // length formula and l(w^pm) = l(w) - j
    const RootSystem b5 = build_root_system(LieType::parse("B5"));
    const RootSystem d5 = build_root_system(LieType::parse("D5"));
    for (int i = 0; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 0; k <= 1; ++k) {
                const int m = 5 - i - j - k;
                if (m < 0) continue;
                const int expect = i * k + j * (2 * (i + k) + j + 1 + 4 * m) / 2;
                CHECK(build_bigrassmannian(b5, {0, i, j, k, m, 0}).length() == expect);
                CHECK(build_bigrassmannian(d5, {0, i, j, k, m, +1}).length() == expect - j);
                CHECK(build_bigrassmannian(d5, {0, i, j, k, m, -1}).length() == expect - j);
            }
    CHECK_THROWS_AS(build_bigrassmannian(b2, {0, 1, 1, 1, 0, 0}), std::invalid_argument);  // sum != n
}

TEST_CASE("bigrassmannian enumeration counts") {
    struct Row {
        const char* name;
        std::size_t full;
    };
    // n, n(n+1)(n+2)/6, (n-2)(n^2+8n-15)/6, and the exceptional counts
    const Row rows[] = {{"A2", 2},  {"A4", 4},  {"A6", 6},  {"B2", 4},  {"B4", 20}, {"B5", 35},
                        {"C3", 10}, {"C5", 35}, {"D4", 11}, {"D5", 25}, {"G2", 8},  {"F4", 76}};
    for (const auto& r : rows) {
        const RootSystem rs = build_root_system(LieType::parse(r.name));
        const auto got = enumerate_bigrassmannian(rs, true);
        CAPTURE(r.name);
        CHECK(got.size() == r.full);
        for (const auto& w : got) {
            CHECK(is_bigrassmannian(w));
            CHECK(static_cast<int>(support(w).size()) == rs.n);
        }
    }
    // brute-force oracle on a small group
    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    std::size_t brute = 0;
    for (const auto& w : whole_group(b3)) brute += is_bigrassmannian(w) && static_cast<int>(support(w).size()) == 3;
    CHECK(enumerate_bigrassmannian(b3, true).size() == brute);
}

TEST_CASE("E6 bigrassmannian count") {
    const RootSystem rs = build_root_system(LieType::parse("E6"));
    CHECK(enumerate_bigrassmannian(rs, true).size() == 119);
}

TEST_CASE("reflection-product decoding") {
    const RootSystem e6 = build_root_system(LieType::parse("E6"));
    const Word w0w = standard_w0_word(e6);
    // single index gives the first letter's reflection
    CHECK(decode_rho(e6, w0w, {1}) == simple_reflection(e6, w0w[0]));
    // nu_2 = rho_20 is bigrassmannian with full support
    const WeylElement nu2 = decode_rho(e6, w0w, {20});
    CHECK(is_bigrassmannian(nu2));
    CHECK(static_cast<int>(support(nu2).size()) == 6);
    // involution structure of the nu family: involutions exactly up to nu_10
    const std::vector<std::vector<int>> nus = {{8, 23, 24}, {20},         {2, 20},          {14},
                                               {15, 27},    {16, 28},     {9, 10},          {9, 10, 25},
                                               {3, 4, 20},  {5, 6, 13},   {1, 4, 8, 10, 23}, {3, 4, 16, 28},
                                               {1, 6, 9, 12, 14}, {1, 5, 10, 11, 14}, {1, 5, 6, 7, 13}};
    for (std::size_t k = 0; k < nus.size(); ++k) {
        const WeylElement nu = decode_rho(e6, w0w, nus[k]);
        CHECK((nu == nu.inverse()) == (k + 1 <= 10));
    }
    CHECK_THROWS_AS(decode_rho(e6, w0w, {37}), std::invalid_argument);
}
