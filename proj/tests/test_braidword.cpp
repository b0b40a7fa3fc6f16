#include "qnilp/braidword.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qnilp;

TEST_CASE("identity expands to a leaf") {
    const RootSystem rs = build_root_system(LieType::parse("A2"));
    const NestedPtr t = lusztig_expand(rs, WeylElement::identity(rs), 2);
    CHECK(t->is_leaf());
    CHECK(t->leaf == 2);
    CHECK(t->scale.is_one());
}

TEST_CASE("jantzen shortcut") {
    const RootSystem rs = build_root_system(LieType::parse("F4"));
    CHECK(jantzen_shortcut(rs, WeylElement::identity(rs), 3) == 3);
    // along the standard longest-element word, positions 1, 5, 20, 24 are the
    // Chevalley generators E_1, E_2, E_3, E_4
    const Word w0w = standard_w0_word(rs);
    WeylElement prefix = WeylElement::identity(rs);
    std::map<int, int> leaf_at;
    for (int k = 1; k <= static_cast<int>(w0w.size()); ++k) {
        const int letter = w0w[static_cast<std::size_t>(k - 1)];
        if (auto a = jantzen_shortcut(rs, prefix, letter)) leaf_at[k] = *a;
        prefix = prefix.mul_simple_right(letter);
    }
    CHECK(leaf_at == std::map<int, int>{{1, 1}, {5, 2}, {20, 3}, {24, 4}});
}

TEST_CASE("double-bond expansion in B3") {
    const RootSystem rs = build_root_system(LieType::parse("B3"));
    // T_{s_3}(E_2) = (1/[2]_q) [E_3, [E_3, E_2]]
    const NestedPtr t = lusztig_expand(rs, simple_reflection(rs, 3), 2);
    CHECK(t->scale == qint(2).inverse());
    CHECK(to_pretty(t, false) == "[E[3],E[3,2]]");
    CHECK(t->degree == RootVec{0, 1, 2});
}

TEST_CASE("F4 position nine") {
    const RootSystem rs = build_root_system(LieType::parse("F4"));
    const Word w0w = standard_w0_word(rs);
    WeylElement prefix = WeylElement::identity(rs);
    for (int k = 1; k < 9; ++k) prefix = prefix.mul_simple_right(w0w[static_cast<std::size_t>(k - 1)]);
    const NestedPtr x9 = lusztig_expand(rs, prefix, w0w[8]);
    CHECK(x9->scale == qint(2).inverse());
    CHECK(to_pretty(x9, false) == "E[1,2,3,3]");
}

TEST_CASE("E6 position seven is a generator") {
    const RootSystem rs = build_root_system(LieType::parse("E6"));
    const Word w0w = standard_w0_word(rs);
    WeylElement prefix = WeylElement::identity(rs);
    for (int k = 1; k < 7; ++k) prefix = prefix.mul_simple_right(w0w[static_cast<std::size_t>(k - 1)]);
    const NestedPtr x7 = lusztig_expand(rs, prefix, w0w[6]);
    CHECK(x7->is_leaf());
    CHECK(x7->leaf == 4);
}

TEST_CASE("G2 closed forms") {
    const RootSystem rs = build_root_system(LieType::parse("G2"));
    // T_{s_1}(E_2) with a_1 short: scale 1/[3]_q!
    const NestedPtr t = lusztig_expand(rs, simple_reflection(rs, 1), 2);
    CHECK(t->scale == qfact(3).inverse());
    // T_{s_2}(E_1) with a_2 long: E[2,1]
    const NestedPtr u = lusztig_expand(rs, simple_reflection(rs, 2), 1);
    CHECK(to_pretty(u) == "E[2,1]");
    // degree always w(alpha_j)
    for (const Word& ww : {Word{1, 2}, Word{2, 1}, Word{1, 2, 1}, Word{2, 1, 2, 1}}) {
        const WeylElement w = from_word(rs, ww);
        for (int j = 1; j <= 2; ++j) {
            if (w.image(j) < 0) continue;
            RootVec aj(2, 0);
            aj[static_cast<std::size_t>(j - 1)] = 1;
            CHECK(lusztig_expand(rs, w, j)->degree == w.act(aj));
        }
    }
    CHECK_THROWS_AS(lusztig_expand(rs, longest_element(rs), 1), std::invalid_argument);
}

TEST_CASE("free expansion") {
    const RootSystem rs = build_root_system(LieType::parse("A2"));
    const FreeElement e1 = to_free(rs, make_leaf(rs, 1));
    CHECK(e1.terms.size() == 1);
    CHECK(e1.terms.at({1}) == Scalar(1));

    // [E_1, E_2] = word(1,2) - q^{<a1,a2>} word(2,1) with <a1,a2> = -1
    const FreeElement br = to_free(rs, make_bracket(make_leaf(rs, 1), make_leaf(rs, 2)));
    CHECK(br.terms.size() == 2);
    CHECK(br.terms.at({1, 2}) == Scalar(1));
    CHECK(br.terms.at({2, 1}) == -qpow(-1));

    // (1/[2]_q)[E_3,[E_3,E_2]] expands to three words with that scale
    const RootSystem b3 = build_root_system(LieType::parse("B3"));
    const FreeElement x = to_free(b3, lusztig_expand(b3, simple_reflection(b3, 3), 2));
    CHECK(x.terms.size() == 3);
    CHECK(x.terms.count({3, 3, 2}) == 1);
    CHECK(x.terms.at({3, 3, 2}) == qint(2).inverse());
}

TEST_CASE("tree normalization is value preserving") {
    const RootSystem rs = build_root_system(LieType::parse("E6"));
    const Word w0w = standard_w0_word(rs);
    WeylElement prefix = WeylElement::identity(rs);
    for (int k = 1; k <= 20; ++k) {
        const int letter = w0w[static_cast<std::size_t>(k - 1)];
        const NestedPtr t = lusztig_expand(rs, prefix, letter);
        const NestedPtr n = normalize_tree(rs, t);
        CHECK(n->degree == t->degree);
        prefix = prefix.mul_simple_right(letter);
    }
}
