#include "qnilp/tables.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qnilp;

TEST_CASE("element spec parsing") {
    const ElementSpec w = parse_element_spec("1,2,1");
    CHECK(w.kind == ElementSpec::Kind::WordSpec);
    CHECK(w.numbers == std::vector<int>{1, 2, 1});
    const ElementSpec p = parse_element_spec("wparams 0,0,2,0,2,+");
    CHECK(p.kind == ElementSpec::Kind::Params);
    CHECK(p.sign == 1);
    CHECK(p.numbers == std::vector<int>{0, 0, 2, 0, 2});
    const ElementSpec r = parse_element_spec("rho 5,6,13");
    CHECK(r.kind == ElementSpec::Kind::Rho);
    const ElementSpec n = parse_element_spec("elt nu3");
    CHECK(n.kind == ElementSpec::Kind::Named);
    CHECK(n.name == "nu3");
    CHECK_THROWS_AS(parse_element_spec("wparams 1,2,3"), std::invalid_argument);
}

TEST_CASE("rank instantiation") {
    CHECK(instantiate_rank("wparams 0,0,2,0,n-2", 5) == "wparams 0,0,2,0,3");
    CHECK(instantiate_rank("wparams 0,1,2,1,n-4,+", 6) == "wparams 0,1,2,1,2,+");
    CHECK(instantiate_rank("word 1,2", 9) == "word 1,2");
}

TEST_CASE("element fixture files resolve") {
    const RootSystem& f4 = PresentationStore::instance().root_system(LieType::parse("F4"));
    const auto elems = load_elements_file(fixtures_dir() / "F4" / "elements.txt");
    REQUIRE(elems.size() == 34);
    for (const auto& [name, spec] : elems) {
        const WeylElement w = resolve_element(f4, spec);
        CAPTURE(name);
        CHECK(is_bigrassmannian(w));
        CHECK(static_cast<int>(support(w).size()) == 4);
        CHECK(orthogonality_holds(f4, w));
    }
    // the mirrored family really is the image under the diagram automorphism
    const WeylElement k1 = resolve_element(f4, elems.at("k1"));
    const WeylElement fk1 = resolve_element(f4, elems.at("fk1"));
    Word mirrored;
    for (int t : reduced_word(k1)) mirrored.push_back(5 - t);
    CHECK(from_word(f4, mirrored) == fk1);

    const RootSystem& e6 = PresentationStore::instance().root_system(LieType::parse("E6"));
    const auto nus = load_elements_file(fixtures_dir() / "E6" / "elements.txt");
    REQUIRE(nus.size() == 15);
    std::set<std::uint64_t> keys;
    for (const auto& [name, spec] : nus) {
        const WeylElement w = resolve_element(e6, spec);
        CAPTURE(name);
        CHECK(is_bigrassmannian(w));
        CHECK(static_cast<int>(support(w).size()) == 6);
        CHECK(orthogonality_holds(e6, w));
        keys.insert(w.key());
    }
    CHECK(keys.size() == 15);
    CHECK_THROWS_AS(resolve_element(e6, parse_element_spec("elt missing")), std::invalid_argument);
}

TEST_CASE("the nu family plus inverses exhausts the E6 orthogonal set") {
    const RootSystem& e6 = PresentationStore::instance().root_system(LieType::parse("E6"));
    const auto nus = load_elements_file(fixtures_dir() / "E6" / "elements.txt");
    std::set<std::uint64_t> family;
    for (const auto& [name, spec] : nus) {
        const WeylElement w = resolve_element(e6, spec);
        family.insert(w.key());
        family.insert(w.inverse().key());
    }
    const auto full = bigr_perp_full(e6);
    CHECK(full.size() == 20);
    std::set<std::uint64_t> enumerated;
    for (const auto& w : full) enumerated.insert(w.key());
    CHECK(family == enumerated);
}

TEST_CASE("table fixtures are well formed") {
    CHECK(load_table_file(fixtures_dir() / "tables" / "table1.txt").size() == 15);
    CHECK(load_table_file(fixtures_dir() / "tables" / "table2.txt").size() == 12);
    CHECK(load_table_file(fixtures_dir() / "tables" / "table3.txt").size() == 8);
    CHECK(load_table_file(fixtures_dir() / "tables" / "table4.txt").size() == 34);
    CHECK(load_table_file(fixtures_dir() / "tables" / "table5.txt").size() == 15);
    CHECK(load_table_file(fixtures_dir() / "tables" / "table6.txt").size() == 76);
    CHECK_THROWS_AS(load_table_file(fixtures_dir() / "tables" / "table99.txt"), std::invalid_argument);
}

TEST_CASE("verification machinery on the smallest table") {
    const VerificationReport rep = verify_table("table3");
    CHECK(rep.rows.size() == 8);
    CHECK(rep.all_match());
    VerifyOptions opts;
    opts.row_subset = std::vector<std::string>{"G2.8"};
    const VerificationReport sub = verify_table("table3", opts);
    CHECK(sub.rows.size() == 1);
    CHECK(sub.rows[0].computed_n == 4);
}

TEST_CASE("result table cache") {
    const auto dir = std::filesystem::temp_directory_path() / "qnilp-test-results";
    std::filesystem::remove_all(dir);
    const RootSystem& g2 = PresentationStore::instance().root_system(LieType::parse("G2"));
    const GammaTriple x = make_gamma(from_word(g2, {1, 2, 1, 2}), 1, 2);
    {
        ResultTable t(dir / "results.txt");
        CHECK_FALSE(t.lookup(g2, x).has_value());
        t.record(g2, x, 4);
        t.save();
    }
    {
        ResultTable t(dir / "results.txt");
        REQUIRE(t.lookup(g2, x).has_value());
        CHECK(*t.lookup(g2, x) == 4);
    }
    std::filesystem::remove_all(dir);
}
