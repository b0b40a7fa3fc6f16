// Fixture files (named elements, data tables), the result-table cache, and
// the verification harness that recomputes every table row through the
// pipeline and compares.

#pragma once

#include "qnilp/gamma.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace qnilp {

// ---- element specifications --------------------------------------------------

// word 1,2,1 | wparams l,i,j,k,m[,+|-] | rho k1,...,km | a name from the
// type's elements file
struct ElementSpec {
    enum class Kind { WordSpec, Params, Rho, Named } kind = Kind::WordSpec;
    std::vector<int> numbers;
    int sign = 0;
    std::string name;

    static ElementSpec word(std::vector<int> letters) { return {Kind::WordSpec, std::move(letters), 0, {}}; }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ','))
        if (!strip(part).empty()) out.push_back(std::stoi(strip(part)));
    return out;
}

}  // namespace detail

// "kind payload", e.g. "word 1,2,1" / "wparams 0,0,2,1,0" /
// "wparams 0,0,2,0,2,+" / "rho 5,6,13" / "elt nu3"
inline ElementSpec parse_element_spec(const std::string& text) {
    const std::string t = detail::strip(text);
    const std::size_t sp = t.find(' ');
    const std::string head = t.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : detail::strip(t.substr(sp + 1));
    ElementSpec spec;
    if (head == "word") {
        spec.kind = ElementSpec::Kind::WordSpec;
        spec.numbers = detail::parse_ints(rest);
    } else if (head == "wparams") {
        spec.kind = ElementSpec::Kind::Params;
        auto parts = detail::split(rest, ',');
        if (parts.size() == 6) {
            const std::string sg = detail::strip(parts.back());
            spec.sign = sg == "+" ? +1 : sg == "-" ? -1 : throw std::invalid_argument("bad sign " + sg);
            parts.pop_back();
        }
        for (const auto& part : parts) spec.numbers.push_back(std::stoi(detail::strip(part)));
        if (spec.numbers.size() != 5) throw std::invalid_argument("wparams needs five entries");
    } else if (head == "rho") {
        spec.kind = ElementSpec::Kind::Rho;
        spec.numbers = detail::parse_ints(rest);
    } else if (head == "elt") {
        spec.kind = ElementSpec::Kind::Named;
        spec.name = rest;
    } else {
        // bare comma-separated letters are a word
        spec.kind = ElementSpec::Kind::WordSpec;
        spec.numbers = detail::parse_ints(t);
    }
    return spec;
}

// fixtures/<type>/elements.txt: lines "name := rho 1,2,3" or "name := word 1,2,3"
inline std::map<std::string, ElementSpec> load_elements_file(const std::filesystem::path& path) {
    std::map<std::string, ElementSpec> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (detail::strip(line).empty()) continue;
        const auto sep = line.find(":=");
        if (sep == std::string::npos) throw std::invalid_argument("elements file: missing ':=' in '" + line + "'");
        out[detail::strip(line.substr(0, sep))] = parse_element_spec(line.substr(sep + 2));
    }
    return out;
}

inline WeylElement resolve_element(const RootSystem& rs, const ElementSpec& spec) {
    switch (spec.kind) {
        case ElementSpec::Kind::WordSpec: {
            Word w(spec.numbers.begin(), spec.numbers.end());
            return from_word(rs, w);
        }
        case ElementSpec::Kind::Params: {
            BigrassmannianParams p;
            p.l = spec.numbers[0];
            p.i = spec.numbers[1];
            p.j = spec.numbers[2];
            p.k = spec.numbers[3];
            p.m = spec.numbers[4];
            p.sign = spec.sign;
            return build_bigrassmannian(rs, p);
        }
        case ElementSpec::Kind::Rho:
            return decode_rho(rs, standard_w0_word(rs), spec.numbers);
        case ElementSpec::Kind::Named: {
            const auto table = load_elements_file(fixtures_dir() / rs.type.name() / "elements.txt");
            auto it = table.find(spec.name);
            if (it == table.end())
                throw std::invalid_argument("element '" + spec.name + "' not found in " + rs.type.name() + " fixtures");
            return resolve_element(rs, it->second);
        }
    }
    throw std::logic_error("unreachable");
}

// ---- data-table fixtures -------------------------------------------------------

// One table row. For family-generic rows (table 2) the type is a family
// letter and the wparams may contain "n-k" entries; verification
// instantiates them over a rank range.
struct TableRow {
    std::string id;
    std::string type_label;  // "B3" or a bare family letter "B"
    std::string element;     // element-spec text, possibly with n-expressions
    int min_rank = 0;
    Chi expected_chi;
    int expected_n = 0;
};

inline std::vector<TableRow> load_table_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table fixture " + path.string());
    std::vector<TableRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (detail::strip(line).empty()) continue;
        std::istringstream ss(line);
        TableRow row;
        std::string tok;
        ss >> row.id >> row.type_label;
        std::string element;
        while (ss >> tok) {
            if (tok == "chi") {
                std::string chis;
                ss >> chis;
                auto v = detail::parse_ints(chis);
                row.expected_chi = Chi{v.at(0), v.at(1), v.at(2)};
            } else if (tok == "N") {
                ss >> row.expected_n;
            } else if (tok == "minn") {
                ss >> row.min_rank;
            } else {
                if (!element.empty()) element += ' ';
                element += tok;
            }
        }
        row.element = element;
        rows.push_back(std::move(row));
    }
    return rows;
}

// substitute "n-k" / "n" entries for a concrete rank
inline std::string instantiate_rank(const std::string& element, int n) {
    std::string out;
    for (std::size_t k = 0; k < element.size();) {
        if (element[k] == 'n' && (k + 1 == element.size() || !std::isalpha(static_cast<unsigned char>(element[k + 1])))) {
            int value = n;
            std::size_t t = k + 1;
            if (t < element.size() && (element[t] == '-' || element[t] == '+')) {
                const int sgn = element[t] == '-' ? -1 : 1;
                ++t;
                std::string digits;
                while (t < element.size() && std::isdigit(static_cast<unsigned char>(element[t]))) digits += element[t++];
                value += sgn * std::stoi(digits);
            }
            out += std::to_string(value);
            k = t;
        } else {
            out += element[k++];
        }
    }
    return out;
}

// ---- verification ----------------------------------------------------------------

struct VerificationRow {
    std::string id;
    std::string detail;
    Chi expected_chi, computed_chi;
    int expected_n = 0, computed_n = 0;
    bool match = false;
};

struct VerificationReport {
    std::string table_id;
    std::vector<VerificationRow> rows;
    double wall_seconds = 0;

    bool all_match() const {
        return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.match; });
    }
    std::size_t matches() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.match; }));
    }
};

struct VerifyOptions {
    int bc_max_rank = 6;  // table 2 instantiation ranges
    int d_max_rank = 7;
    std::optional<std::vector<std::string>> row_subset;  // restrict to these row ids
};

inline VerificationReport verify_table(const std::string& table_id, const VerifyOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport report;
    report.table_id = table_id;
    const auto rows = load_table_file(fixtures_dir() / "tables" / (table_id + ".txt"));
    for (const auto& row : rows) {
        if (opts.row_subset &&
            std::find(opts.row_subset->begin(), opts.row_subset->end(), row.id) == opts.row_subset->end())
            continue;
        std::vector<std::pair<LieType, std::string>> instances;
        if (row.type_label.size() == 1) {
            const char fam = row.type_label[0];
            const int lo = std::max(row.min_rank, 4);
            const int hi = fam == 'D' ? opts.d_max_rank : opts.bc_max_rank;
            for (int n = lo; n <= hi; ++n) instances.emplace_back(LieType::make(fam, n), instantiate_rank(row.element, n));
        } else {
            instances.emplace_back(LieType::parse(row.type_label), row.element);
        }
        for (const auto& [type, element] : instances) {
            VerificationRow out;
            out.id = row.id;
            out.detail = type.name() + " " + element;
            out.expected_chi = row.expected_chi;
            out.expected_n = row.expected_n;
            const RootSystem& rs = PresentationStore::instance().root_system(type);
            const WeylElement w = resolve_element(rs, parse_element_spec(element));
            const GammaTriple x = bracket_triple(w);
            out.computed_chi = chi(rs, x);
            out.computed_n = nilpotency(rs, x).n;
            out.match = out.computed_chi == out.expected_chi && out.computed_n == out.expected_n;
            report.rows.push_back(std::move(out));
        }
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---- result-table cache ------------------------------------------------------------

// Rows "type | canonical word | i | j | chi | N" in a stable order; the
// pipeline records computed indices here and looks them up unless asked to
// recompute.
class ResultTable {
public:
    explicit ResultTable(std::filesystem::path path) : path_(std::move(path)) { load(); }

    std::optional<int> lookup(const RootSystem& rs, const GammaTriple& x) const {
        auto it = data_.find(key(rs, x));
        if (it == data_.end()) return std::nullopt;
        return it->second;
    }

    void record(const RootSystem& rs, const GammaTriple& x, int n) {
        data_[key(rs, x)] = n;
        dirty_ = true;
    }

    void save() {
        if (!dirty_) return;
        std::filesystem::create_directories(path_.parent_path());
        std::ofstream out(path_, std::ios::trunc);
        for (const auto& [k, n] : data_) out << k << " | " << n << "\n";
        dirty_ = false;
    }

    std::size_t size() const { return data_.size(); }

private:
    static std::string key(const RootSystem& rs, const GammaTriple& x) {
        std::string k = rs.type.name() + " |";
        for (int letter : reduced_word(x.w)) k += " " + std::to_string(letter);
        Chi c = chi(rs, x);
        k += " | " + std::to_string(x.i) + " " + std::to_string(x.j);
        k += " | " + std::to_string(c.a) + "," + std::to_string(c.b) + "," + std::to_string(c.c);
        return k;
    }

    void load() {
        std::ifstream in(path_);
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            const auto sep = line.rfind(" | ");
            if (sep == std::string::npos) continue;
            data_[line.substr(0, sep)] = std::stoi(line.substr(sep + 3));
        }
    }

    std::filesystem::path path_;
    std::map<std::string, int> data_;
    bool dirty_ = false;
};

// ---- relation-table cache -----------------------------------------------------------

inline void save_presentation(const Presentation& p, const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    out << "qnilp-relation-table v1\n";
    out << "type " << p.root_system().type.name() << "\n";
    out << "word";
    for (int letter : p.word()) out << " " << letter;
    out << "\n";
    for (int j = 2; j <= p.size(); ++j)
        for (int i = 1; i < j; ++i) {
            if (!p.known(i, j)) continue;
            out << i << " " << j << " :";
            const auto& rhs = p.relation(i, j);
            bool first = true;
            for (const auto& [m, c] : rhs.terms) {
                out << (first ? " " : "; ");
                if (m.empty()) out << "1";
                for (std::size_t t = 0; t < m.size(); ++t) {
                    if (t) out << ".";
                    out << m[t].first << "^" << m[t].second;
                }
                out << ":" << c.to_string();
                first = false;
            }
            if (rhs.terms.empty()) out << " 0";
            out << "\n";
        }
}

inline Presentation load_presentation(const RootSystem& rs, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open relation table " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "qnilp-relation-table v1") throw std::invalid_argument("bad relation-table header");
    std::getline(in, line);
    if (detail::strip(line.substr(5)) != rs.type.name()) throw std::invalid_argument("relation table type mismatch");
    std::getline(in, line);
    std::istringstream ws(line.substr(5));
    Word word;
    for (int letter; ws >> letter;) word.push_back(letter);
    Presentation p(rs, word);
    while (std::getline(in, line)) {
        if (detail::strip(line).empty()) continue;
        std::istringstream ss(line);
        int i, j;
        char colon;
        ss >> i >> j >> colon;
        std::string rest;
        std::getline(ss, rest);
        rest = detail::strip(rest);
        PBWElement rhs;
        if (rest != "0") {
            for (const auto& term : detail::split(rest, ';')) {
                const std::string t = detail::strip(term);
                const auto last_colon = t.rfind(':');
                const std::string monos = detail::strip(t.substr(0, last_colon));
                const Scalar c = Scalar::parse(t.substr(last_colon + 1));
                Mono m;
                if (monos != "1")
                    for (const auto& factor : detail::split(monos, '.')) {
                        const auto caret = factor.find('^');
                        m.emplace_back(std::stoi(detail::strip(factor.substr(0, caret))),
                                       std::stoi(detail::strip(factor.substr(caret + 1))));
                    }
                rhs.add_term(m, c);
            }
        }
        if (!p.known(i, j)) p.set_relation(i, j, std::move(rhs), Presentation::Provenance::Seed);
    }
    return p;
}

}  // namespace qnilp
