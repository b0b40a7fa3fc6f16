// Command-line front end: root-system data, Weyl group queries,
// bigrassmannian enumeration, Gamma(W) cardinalities, reductions,
// presentations, nilpotency indices, and the table-verification harness.

#include "qnilp/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

namespace {

using namespace qnilp;
using nlohmann::json;

struct GlobalOptions {
    bool json_out = false;
    bool deep = false;
    bool recompute = false;
    std::string cache_dir;
    std::uint64_t budget = 1000000;

    std::filesystem::path cache_path() const {
        if (!cache_dir.empty()) return cache_dir;
        if (const char* env = std::getenv("QNILP_CACHE_DIR")) return env;
        if (const char* home = std::getenv("HOME")) return std::filesystem::path(home) / ".cache" / "qnilp";
        return std::filesystem::path(".qnilp-cache");
    }
};

std::string word_string(const Word& w) {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(w[static_cast<std::size_t>(k)]);
    }
    return out;
}

std::string vec_string(const RootVec& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(v[k]);
    }
    return out + ")";
}

// element arguments: either a comma word, or "wparams l,i,j,k,m[,+/-]",
// or "rho k1,...,km" (two tokens)
ElementSpec element_from_args(const std::vector<std::string>& args) {
    if (args.empty()) throw CLI::ValidationError("element expected");
    if (args[0] == "wparams" || args[0] == "rho" || args[0] == "word" || args[0] == "elt") {
        if (args.size() < 2) throw CLI::ValidationError("'" + args[0] + "' needs an argument");
        return parse_element_spec(args[0] + " " + args[1]);
    }
    return parse_element_spec(args[0]);
}

// trailing "<element...> <i> <j>" argument lists, parsed from the back
std::tuple<std::vector<std::string>, int, int> split_element_ij(std::vector<std::string> args) {
    if (args.size() < 3) throw CLI::ValidationError("expected: <element...> <i> <j>");
    const int j = std::stoi(args.back());
    args.pop_back();
    const int i = std::stoi(args.back());
    args.pop_back();
    return {std::move(args), i, j};
}

std::string pbw_string(const PBWElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : x.terms) {
        if (!first) out += " + ";
        out += "(" + c.to_string() + ")";
        for (const auto& [pos, e] : m) {
            out += " x" + std::to_string(pos);
            if (e > 1) out += "^" + std::to_string(e);
        }
        first = false;
    }
    return out;
}

int cmd_roots(const GlobalOptions& g, const std::string& type) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    if (g.json_out) {
        json j;
        j["type"] = rs.type.name();
        j["num_positive"] = rs.num_positive();
        j["cmax"] = rs.cmax;
        j["theta"] = rs.theta;
        j["d"] = rs.d;
        j["cartan"] = rs.cartan;
        json roots = json::array();
        for (int k = 1; k <= rs.num_positive(); ++k) roots.push_back(rs.root(k));
        j["positive_roots"] = roots;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "type " << rs.type.name() << ": " << rs.num_positive() << " positive roots, cmax " << rs.cmax
              << ", theta " << vec_string(rs.theta) << "\n";
    std::cout << "d =";
    for (int d : rs.d) std::cout << " " << d;
    std::cout << "\n";
    for (int k = 1; k <= rs.num_positive(); ++k)
        std::cout << "  beta_" << k << " = " << vec_string(rs.root(k)) << "  height " << rs.height(k) << "\n";
    return 0;
}

int cmd_weyl(const GlobalOptions& g, const std::string& type, const std::vector<std::string>& element) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    const WeylElement w = resolve_element(rs, element_from_args(element));
    const Word canon = reduced_word(w);
    if (g.json_out) {
        json j;
        j["type"] = rs.type.name();
        j["length"] = w.length();
        j["word"] = canon;
        j["left_descents"] = w.left_descents();
        j["right_descents"] = w.right_descents();
        j["support"] = support(w);
        j["bigrassmannian"] = is_bigrassmannian(w);
        if (is_bigrassmannian(w)) j["orthogonality"] = orthogonality_holds(rs, w);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "length " << w.length() << ", canonical word " << word_string(canon) << "\n";
    std::cout << "left descents {";
    for (int i : w.left_descents()) std::cout << " " << i;
    std::cout << " }, right descents {";
    for (int j : w.right_descents()) std::cout << " " << j;
    std::cout << " }\n";
    std::cout << "support {";
    for (int i : support(w)) std::cout << " " << i;
    std::cout << " }, bigrassmannian " << (is_bigrassmannian(w) ? "yes" : "no");
    if (is_bigrassmannian(w)) std::cout << ", orthogonality " << (orthogonality_holds(rs, w) ? "yes" : "no");
    std::cout << "\n";
    return 0;
}

int cmd_bigr(const GlobalOptions& g, const std::string& type, bool full_support, bool perp) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    if (rs.type == LieType{'E', 8} && !g.deep) {
        std::cerr << "bigr E8 walks roughly a million elements of the weak order; pass --deep to run it\n";
        return 1;
    }
    auto all = enumerate_bigrassmannian(rs, full_support);
    std::vector<WeylElement> kept;
    for (const auto& w : all)
        if (!perp || orthogonality_holds(rs, w)) kept.push_back(w);
    if (g.json_out) {
        json j;
        j["type"] = rs.type.name();
        j["count"] = kept.size();
        json words = json::array();
        for (const auto& w : kept) words.push_back(reduced_word(w));
        j["elements"] = words;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << kept.size() << (perp ? " orthogonality-satisfying" : "") << " bigrassmannian elements"
              << (full_support ? " of full support" : "") << " in " << rs.type.name() << "\n";
    for (const auto& w : kept) std::cout << "  " << word_string(reduced_word(w)) << "\n";
    return 0;
}

int cmd_gamma_card(const GlobalOptions& g, const std::string& type, bool brute) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    const std::uint64_t formula = gamma_cardinality(rs);
    std::optional<std::uint64_t> brute_count;
    if (brute) brute_count = enumerate_gamma(rs, g.budget).size();
    if (g.json_out) {
        json j;
        j["type"] = rs.type.name();
        j["formula"] = formula;
        if (brute_count) j["brute_force"] = *brute_count;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "|Gamma(W(" << rs.type.name() << "))| = " << formula << "\n";
        if (brute_count) std::cout << "brute force agrees: " << (*brute_count == formula ? "yes" : "NO") << "\n";
    }
    return brute_count && *brute_count != formula ? 2 : 0;
}

int cmd_reduce(const GlobalOptions& g, const std::string& type, const std::vector<std::string>& element, int i, int j) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    const WeylElement w = resolve_element(rs, element_from_args(element));
    GammaTriple x = make_gamma(w, i, j);
    auto [minimal, chain] = reduce_to_minimal(rs, x);
    std::vector<ReductionStep> chain2;
    GammaTriple terminal = minimal;
    if (is_bigrassmannian(minimal.w) && !as_dihedral_longest(rs, minimal.w)) {
        auto [t2, c2] = second_stage(rs, minimal);
        terminal = t2;
        chain2 = std::move(c2);
    }
    auto step_json = [&](const ReductionStep& s) {
        json o;
        o["kind"] = kind_name(s.kind);
        o["index"] = s.t_or_k;
        o["to"] = {{"word", reduced_word(s.to.w)}, {"i", s.to.i}, {"j", s.to.j}};
        return o;
    };
    if (g.json_out) {
        json jj;
        jj["type"] = rs.type.name();
        jj["from"] = {{"word", reduced_word(x.w)}, {"i", x.i}, {"j", x.j}};
        json steps = json::array();
        for (const auto& s : chain) steps.push_back(step_json(s));
        for (const auto& s : chain2) steps.push_back(step_json(s));
        jj["chain"] = steps;
        jj["terminal"] = {{"word", reduced_word(terminal.w)}, {"i", terminal.i}, {"j", terminal.j}};
        std::cout << jj.dump(2) << "\n";
        return 0;
    }
    std::cout << "(" << word_string(reduced_word(x.w)) << ", " << x.i << ", " << x.j << ")\n";
    for (const auto& s : chain)
        std::cout << "  --" << kind_name(s.kind) << "(" << s.t_or_k << ")--> (" << word_string(reduced_word(s.to.w))
                  << ", " << s.to.i << ", " << s.to.j << ")\n";
    for (const auto& s : chain2)
        std::cout << "  --" << kind_name(s.kind) << "(" << s.t_or_k << ")--> (" << word_string(reduced_word(s.to.w))
                  << ", " << s.to.i << ", " << s.to.j << ")\n";
    std::cout << "terminal: (" << word_string(reduced_word(terminal.w)) << ", " << terminal.i << ", " << terminal.j
              << ")\n";
    return 0;
}

int cmd_present(const GlobalOptions& g, const std::string& type, const std::vector<std::string>& element) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    const ElementSpec spec = element_from_args(element);
    if (spec.kind != ElementSpec::Kind::WordSpec) throw CLI::ValidationError("present expects a reduced word");
    const Word word(spec.numbers.begin(), spec.numbers.end());

    const std::filesystem::path cache =
        g.cache_path() / "presentations" / (rs.type.name() + "-" + word_string(word) + ".txt");
    std::optional<Presentation> p;
    if (!g.recompute && std::filesystem::exists(cache)) p.emplace(load_presentation(rs, cache));
    if (!p) {
        p.emplace(rs, word);
        complete_relations(*p, seeds_from_nested(*p));
        save_presentation(*p, cache);
    }
    if (g.json_out) {
        json j;
        j["type"] = rs.type.name();
        j["word"] = word;
        json rels = json::array();
        for (int b = 2; b <= p->size(); ++b)
            for (int a = 1; a < b; ++a) {
                json r;
                r["i"] = a;
                r["j"] = b;
                r["known"] = p->known(a, b);
                if (p->known(a, b)) r["rhs"] = pbw_string(p->relation(a, b));
                rels.push_back(std::move(r));
            }
        j["relations"] = rels;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "presentation of the cell algebra on the word " << word_string(word) << " (" << rs.type.name() << ")\n";
    for (int k = 1; k <= p->size(); ++k)
        std::cout << "  x" << k << " : beta = " << vec_string(p->beta(k)) << ", " << to_pretty(p->tree(k)) << "\n";
    for (int b = 2; b <= p->size(); ++b)
        for (int a = 1; a < b; ++a)
            std::cout << "  [x" << a << ", x" << b << "] = " << (p->known(a, b) ? pbw_string(p->relation(a, b)) : "?")
                      << "\n";
    const auto unknown = p->unknown_pairs();
    if (!unknown.empty()) std::cout << unknown.size() << " pairs left unknown\n";
    return 0;
}

int cmd_nil(const GlobalOptions& g, const std::string& type, const std::vector<std::string>& element, int i, int j) {
    const RootSystem& rs = PresentationStore::instance().root_system(LieType::parse(type));
    const WeylElement w = resolve_element(rs, element_from_args(element));
    GammaTriple x = make_gamma(w, i, j);

    ResultTable cache(g.cache_path() / "results.txt");
    std::optional<int> cached = g.recompute ? std::nullopt : cache.lookup(rs, x);
    NilpotencyResult res;
    if (cached) {
        res.n = *cached;
        res.chi_value = chi(rs, x);
        res.terminal = "cached";
    } else {
        res = nilpotency(rs, x);
        cache.record(rs, x, res.n);
        cache.save();
    }
    if (g.json_out) {
        json jj;
        jj["type"] = rs.type.name();
        jj["word"] = reduced_word(x.w);
        jj["i"] = x.i;
        jj["j"] = x.j;
        jj["chi"] = {res.chi_value.a, res.chi_value.b, res.chi_value.c};
        jj["n"] = res.n;
        json steps = json::array();
        for (const auto& s : res.chain)
            steps.push_back({{"kind", kind_name(s.kind)},
                             {"index", s.t_or_k},
                             {"to", {{"word", reduced_word(s.to.w)}, {"i", s.to.i}, {"j", s.to.j}}}});
        jj["chain"] = steps;
        std::cout << jj.dump(2) << "\n";
        return 0;
    }
    std::cout << res.n << "\n";
    return 0;
}

int cmd_verify(const GlobalOptions& g, const std::string& table_id, int subset) {
    if ((table_id == "table6" || table_id == "table7") && !g.deep) {
        std::cerr << table_id << " covers the largest exceptional types; expect up to a multi-hour budget.\n"
                  << "Pass --deep to run it" << (table_id == "table6" ? " (optionally with --subset N)" : "") << ".\n";
        return 1;
    }
    if (table_id == "table7") {
        std::cerr << "table7 fixtures (the eta family) are not shipped; see fixtures/tables/.\n";
        return 1;
    }
    VerifyOptions opts;
    if (subset > 0) {
        auto rows = load_table_file(fixtures_dir() / "tables" / (table_id + ".txt"));
        std::vector<std::string> ids;
        for (const auto& r : rows) ids.push_back(r.id);
        std::mt19937_64 rng(20240817);
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(std::min<std::size_t>(static_cast<std::size_t>(subset), ids.size()));
        opts.row_subset = ids;
    }
    const VerificationReport rep = verify_table(table_id, opts);
    if (g.json_out) {
        json j;
        j["table"] = rep.table_id;
        j["matches"] = rep.matches();
        j["rows"] = rep.rows.size();
        j["wall_seconds"] = rep.wall_seconds;
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"id", r.id},
                            {"detail", r.detail},
                            {"expected", {{"chi", {r.expected_chi.a, r.expected_chi.b, r.expected_chi.c}}, {"n", r.expected_n}}},
                            {"computed", {{"chi", {r.computed_chi.a, r.computed_chi.b, r.computed_chi.c}}, {"n", r.computed_n}}},
                            {"match", r.match}});
        j["detail_rows"] = rows;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : rep.rows)
            std::cout << (r.match ? "  ok   " : "  FAIL ") << r.id << "  " << r.detail << "  N=" << r.computed_n
                      << " (expected " << r.expected_n << ")\n";
        std::cout << rep.table_id << ": " << rep.matches() << "/" << rep.rows.size() << " rows match ("
                  << rep.wall_seconds << "s)\n";
    }
    return rep.all_match() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact presentations and q-adjoint nilpotency indices for quantum Schubert cell algebras"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_flag("--deep", g.deep, "allow the multi-hour exceptional-type computations");
    app.add_flag("--recompute", g.recompute, "ignore cached results");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default: QNILP_CACHE_DIR or ~/.cache/qnilp)");
    app.add_option("--budget", g.budget, "node budget for enumerations");

    std::string type, table_id;
    std::vector<std::string> element;
    int subset = 0;
    bool full_support = false, perp = false, brute = false;

    auto* roots = app.add_subcommand("roots", "root-system data for a type");
    roots->add_option("type", type)->required();

    auto* weyl = app.add_subcommand("weyl", "inspect a Weyl group element");
    weyl->add_option("type", type)->required();
    weyl->add_option("element", element, "word 1,2,1 | wparams l,i,j,k,m[,+/-] | rho k1,... | elt name")->required();

    auto* bigr = app.add_subcommand("bigr", "enumerate bigrassmannian elements (pruned weak-order BFS)");
    bigr->add_option("type", type)->required();
    bigr->add_flag("--full-support", full_support);
    bigr->add_flag("--perp", perp, "keep only elements satisfying the orthogonality condition");

    auto* gcard = app.add_subcommand("gamma-card", "cardinality of Gamma(W)");
    gcard->add_option("type", type)->required();
    gcard->add_flag("--brute", brute, "cross-check by exhaustive enumeration");

    auto* reduce = app.add_subcommand("reduce", "reduce a triple to its minimal form");
    reduce->add_option("type", type)->required();
    reduce->add_option("args", element, "<element...> <i> <j>")->required();

    auto* present = app.add_subcommand("present", "relation table of the cell algebra on a reduced word");
    present->add_option("type", type)->required();
    present->add_option("element", element)->required();

    auto* nil = app.add_subcommand("nil", "nilpotency index of a triple (w, i, j)");
    nil->add_option("type", type)->required();
    nil->add_option("args", element, "<element...> <i> <j>")->required();

    auto* verify = app.add_subcommand("verify", "recompute a data table and compare");
    verify->add_option("table", table_id, "table1..table6")->required();
    verify->add_option("--subset", subset, "verify a random subset of rows");

    try {
        app.parse(argc, argv);
        if (roots->parsed()) return cmd_roots(g, type);
        if (weyl->parsed()) return cmd_weyl(g, type, element);
        if (bigr->parsed()) return cmd_bigr(g, type, full_support, perp);
        if (gcard->parsed()) return cmd_gamma_card(g, type, brute);
        if (reduce->parsed()) {
            auto [elem, ii, jj] = split_element_ij(element);
            return cmd_reduce(g, type, elem, ii, jj);
        }
        if (present->parsed()) return cmd_present(g, type, element);
        if (nil->parsed()) {
            auto [elem, ii, jj] = split_element_ij(element);
            return cmd_nil(g, type, elem, ii, jj);
        }
        if (verify->parsed()) return cmd_verify(g, table_id, subset);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
