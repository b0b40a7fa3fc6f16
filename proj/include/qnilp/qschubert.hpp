// The PBW engine: presentations of quantum Schubert cell algebras as
// relation tables over ordered monomials, the bootstrapping steps that
// derive a relation from a known bracket identity, straightening
// multiplication, q-adjoint powers and nilpotency indices.

#pragma once

#include "qnilp/braidword.hpp"
#include "qnilp/qserre_oracle.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <variant>

namespace qnilp {

// ---- sparse ordered monomials ----------------------------------------------

// sorted (position, exponent) pairs, positions strictly increasing, exps > 0
using Mono = std::vector<std::pair<int, int>>;

struct PBWElement {
    std::map<Mono, Scalar> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const Mono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend PBWElement operator+(const PBWElement& a, const PBWElement& b) {
        PBWElement r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, c);
        return r;
    }
    friend PBWElement operator-(const PBWElement& a, const PBWElement& b) {
        PBWElement r = a;
        for (const auto& [m, c] : b.terms) r.add_term(m, -c);
        return r;
    }
    friend PBWElement operator*(const Scalar& c, const PBWElement& a) {
        PBWElement r;
        if (c.is_zero()) return r;
        for (const auto& [m, k] : a.terms) r.terms[m] = c * k;
        return r;
    }
    friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.terms == b.terms; }

    // single monomial c * X_m when the element has exactly that shape
    std::optional<std::pair<int, Scalar>> as_single_variable() const {
        if (terms.size() != 1) return std::nullopt;
        const auto& [m, c] = *terms.begin();
        if (m.size() != 1 || m[0].second != 1) return std::nullopt;
        return std::make_pair(m[0].first, c);
    }
};

struct RelationUnknown : std::runtime_error {
    int i, j;
    RelationUnknown(int i_, int j_)
        : std::runtime_error("relation unknown for pair (" + std::to_string(i_) + ", " + std::to_string(j_) + ")"),
          i(i_),
          j(j_) {}
};

struct StepCapExceeded : std::runtime_error {
    StepCapExceeded() : std::runtime_error("straightening step cap exceeded") {}
};

// X_{beta_m} = c * [X_{beta_r}, X_{beta_s}], r < s
struct SeedRelation {
    int m = 0, r = 0, s = 0;
    Scalar c = Scalar(1);
};

// ---- presentation -----------------------------------------------------------

class Presentation {
public:
    enum class RelStatus : char { Unknown, Known };
    enum class Provenance : char { None, Trivial, Seed, Bootstrap, Transport, Ambient };

    Presentation(const RootSystem& rs, Word word) : rs_(&rs), word_(std::move(word)) {
        if (!is_reduced(*rs_, word_)) throw std::invalid_argument("presentation: word is not reduced");
        betas_ = radical_roots(*rs_, word_);
        const int N = size();
        beta_idx_.resize(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) beta_idx_[static_cast<std::size_t>(k)] = rs_->root_index.at(betas_[static_cast<std::size_t>(k)]);
        pairf_.assign(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N), 0));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                pairf_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    rs_->pair_form(betas_[static_cast<std::size_t>(a)], betas_[static_cast<std::size_t>(b)]);
        entries_.assign(static_cast<std::size_t>(N) * static_cast<std::size_t>(N - 1) / 2, Entry{});
        period_ = 0;
        const int t = rs_->n;
        if (N > t) {
            bool per = true;
            for (int k = 0; k + t < N; ++k)
                if (word_[static_cast<std::size_t>(k)] != word_[static_cast<std::size_t>(k + t)]) per = false;
            if (per) period_ = t;
        }
        init_trivial_pairs();
    }

    const RootSystem& root_system() const { return *rs_; }
    const Word& word() const { return word_; }
    int size() const { return static_cast<int>(word_.size()); }
    const RootVec& beta(int pos) const { return betas_[static_cast<std::size_t>(pos - 1)]; }
    int beta_index(int pos) const { return beta_idx_[static_cast<std::size_t>(pos - 1)]; }
    int pair_form(int a, int b) const { return pairf_[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]; }
    int period() const { return period_; }

    long step_cap = 10000000;

    bool known(int i, int j) const { return entry(i, j).status == RelStatus::Known; }
    const PBWElement& relation(int i, int j) const {
        const Entry& e = entry(i, j);
        if (e.status != RelStatus::Known) throw RelationUnknown(i, j);
        return e.rhs;
    }
    Provenance provenance(int i, int j) const { return entry(i, j).prov; }

    std::vector<std::pair<int, int>> unknown_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int j = 2; j <= size(); ++j)
            for (int i = 1; i < j; ++i)
                if (!known(i, j)) out.emplace_back(i, j);
        return out;
    }

    // Stores the expansion of [X_i, X_j]; enforces the straightening
    // invariants: support strictly inside (i, j) and degree beta_i + beta_j.
    void set_relation(int i, int j, PBWElement rhs, Provenance prov) {
        RootVec target = beta(i);
        for (int k = 0; k < rs_->n; ++k) target[static_cast<std::size_t>(k)] += beta(j)[static_cast<std::size_t>(k)];
        for (const auto& [m, c] : rhs.terms) {
            RootVec deg(static_cast<std::size_t>(rs_->n), 0);
            for (const auto& [pos, e] : m) {
                if (pos <= i || pos >= j)
                    throw std::logic_error("relation for (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") escapes the interval subalgebra");
                for (int k = 0; k < rs_->n; ++k) deg[static_cast<std::size_t>(k)] += e * beta(pos)[static_cast<std::size_t>(k)];
            }
            if (deg != target) throw std::logic_error("relation is not homogeneous of degree beta_i + beta_j");
        }
        Entry& e = entry(i, j);
        e.status = RelStatus::Known;
        e.rhs = std::move(rhs);
        e.prov = prov;
    }

    PBWElement X(int pos, int power = 1) const {
        PBWElement e;
        if (power == 0) {
            e.terms[{}] = Scalar(1);
            return e;
        }
        e.terms[{{pos, power}}] = Scalar(1);
        return e;
    }

    RootVec degree_of(const Mono& m) const {
        RootVec d(static_cast<std::size_t>(rs_->n), 0);
        for (const auto& [pos, e] : m)
            for (int k = 0; k < rs_->n; ++k) d[static_cast<std::size_t>(k)] += e * beta(pos)[static_cast<std::size_t>(k)];
        return d;
    }

    RootVec degree_of(const PBWElement& x) const {
        if (x.is_zero()) throw std::invalid_argument("degree of zero element");
        RootVec d = degree_of(x.terms.begin()->first);
        for (const auto& [m, c] : x.terms)
            if (degree_of(m) != d) throw std::invalid_argument("element is not homogeneous");
        return d;
    }

    // Rewrites an arbitrary product of the generators (given as a position
    // sequence) into the ordered-monomial basis, moving the leftmost
    // out-of-order adjacent pair via
    //   X_b X_a = q^{-<beta_a,beta_b>} (X_a X_b - R_ab),   a < b.
    PBWElement straighten(const std::vector<int>& positions, const Scalar& coeff = Scalar(1)) const {
        PBWElement out;
        std::vector<std::pair<std::vector<int>, Scalar>> stack{{positions, coeff}};
        long steps = 0;
        while (!stack.empty()) {
            auto [seq, c] = std::move(stack.back());
            stack.pop_back();
            std::size_t p = 0;
            while (p + 1 < seq.size() && seq[p] <= seq[p + 1]) ++p;
            if (p + 1 >= seq.size()) {
                Mono m;
                for (int pos : seq) {
                    if (!m.empty() && m.back().first == pos)
                        ++m.back().second;
                    else
                        m.emplace_back(pos, 1);
                }
                out.add_term(m, c);
                continue;
            }
            if (++steps > step_cap) throw StepCapExceeded();
            const int b = seq[p], a = seq[p + 1];
            const PBWElement& rab = relation(a, b);  // throws RelationUnknown when missing
            const Scalar qf = qpow(-pair_form(a, b));
            std::vector<int> swapped = seq;
            std::swap(swapped[p], swapped[p + 1]);
            stack.emplace_back(std::move(swapped), c * qf);
            for (const auto& [m, cm] : rab.terms) {
                std::vector<int> repl(seq.begin(), seq.begin() + static_cast<long>(p));
                for (const auto& [pos, e] : m) repl.insert(repl.end(), static_cast<std::size_t>(e), pos);
                repl.insert(repl.end(), seq.begin() + static_cast<long>(p) + 2, seq.end());
                stack.emplace_back(std::move(repl), -(c * qf * cm));
            }
        }
        return out;
    }

    PBWElement multiply(const PBWElement& x, const PBWElement& y) const {
        PBWElement out;
        for (const auto& [mx, cx] : x.terms)
            for (const auto& [my, cy] : y.terms) {
                std::vector<int> seq;
                for (const auto& [pos, e] : mx) seq.insert(seq.end(), static_cast<std::size_t>(e), pos);
                for (const auto& [pos, e] : my) seq.insert(seq.end(), static_cast<std::size_t>(e), pos);
                out = out + straighten(seq, cx * cy);
            }
        return out;
    }

    // [x, y] = xy - q^{<deg x, deg y>} yx for homogeneous x, y
    PBWElement q_commutator(const PBWElement& x, const PBWElement& y) const {
        if (x.is_zero() || y.is_zero()) return {};
        const int f = rs_->pair_form(degree_of(x), degree_of(y));
        return multiply(x, y) - qpow(f) * multiply(y, x);
    }

    // nested tree evaluated on the generators of this presentation; leaves
    // E_a map to the position with beta = alpha_a
    PBWElement eval_nested(const NestedPtr& tree) const {
        std::function<PBWElement(const NestedExpr&)> go = [&](const NestedExpr& t) -> PBWElement {
            PBWElement r;
            if (t.is_leaf()) {
                const int pos = position_of_simple(t.leaf);
                if (pos == 0) throw std::invalid_argument("eval_nested: alpha_" + std::to_string(t.leaf) +
                                                          " is not among the radical roots");
                r = X(pos);
            } else {
                r = q_commutator(go(*t.left), go(*t.right));
            }
            return t.scale.is_one() ? r : t.scale * r;
        };
        return go(*tree);
    }

    // position whose radical root is alpha_a (0 when absent)
    int position_of_simple(int a) const {
        for (int pos = 1; pos <= size(); ++pos)
            if (beta_index(pos) == a) return pos;
        return 0;
    }

    // nested q-commutator expression of the generator X_pos
    NestedPtr tree(int pos) const {
        if (trees_.empty()) {
            trees_.resize(static_cast<std::size_t>(size()));
            WeylElement prefix = WeylElement::identity(*rs_);
            for (int k = 1; k <= size(); ++k) {
                trees_[static_cast<std::size_t>(k - 1)] = lusztig_expand(*rs_, prefix, word_[static_cast<std::size_t>(k - 1)]);
                prefix = prefix.mul_simple_right(word_[static_cast<std::size_t>(k - 1)]);
            }
        }
        return trees_[static_cast<std::size_t>(pos - 1)];
    }

private:
    struct Entry {
        RelStatus status = RelStatus::Unknown;
        Provenance prov = Provenance::None;
        PBWElement rhs;
    };

    Entry& entry(int i, int j) {
        return entries_[static_cast<std::size_t>((j - 1) * (j - 2) / 2 + (i - 1))];
    }
    const Entry& entry(int i, int j) const {
        return entries_[static_cast<std::size_t>((j - 1) * (j - 2) / 2 + (i - 1))];
    }

    // Pairs whose bracket vanishes outright: no nonnegative integral
    // combination of the strictly intermediate radical roots reaches
    // beta_i + beta_j.
    void init_trivial_pairs() {
        for (int j = 2; j <= size(); ++j)
            for (int i = 1; i < j; ++i) {
                std::vector<RootVec> mid(betas_.begin() + i, betas_.begin() + (j - 1));
                RootVec goal = beta(i);
                for (int k = 0; k < rs_->n; ++k) goal[static_cast<std::size_t>(k)] += beta(j)[static_cast<std::size_t>(k)];
                if (!nonneg_combination_exists(mid, goal)) set_relation(i, j, PBWElement{}, Provenance::Trivial);
            }
    }

    const RootSystem* rs_;
    Word word_;
    std::vector<RootVec> betas_;
    std::vector<int> beta_idx_;
    std::vector<std::vector<int>> pairf_;
    std::vector<Entry> entries_;
    int period_;
    mutable std::vector<NestedPtr> trees_;
};

inline Presentation new_presentation(const RootSystem& rs, const Word& word) { return Presentation(rs, word); }

// ---- the bootstrapping steps ------------------------------------------------

// Derives [X_i, X_j] from a known identity X_{beta_j} = c [X_r, X_s]:
// substitute, expand with the q-Jacobi identity, replace the two inner
// brackets by their known expansions and reorder. Returns nullopt (blocked)
// when a needed relation is still unknown.
inline std::optional<PBWElement> run_R(const Presentation& p, int i, int j, int r, int s, const Scalar& c) {
    RootVec sum = p.beta(r);
    for (int k = 0; k < p.root_system().n; ++k) sum[static_cast<std::size_t>(k)] += p.beta(s)[static_cast<std::size_t>(k)];
    if (r >= s || sum != p.beta(j)) throw std::invalid_argument("run_R: seed does not target position j");
    try {
        const Scalar qrs = qpow(p.pair_form(r, s));
        const PBWElement t1 = p.q_commutator(p.q_commutator(p.X(i), p.X(r)), p.X(s));
        const PBWElement xis = p.q_commutator(p.X(i), p.X(s));
        const PBWElement t2 = p.q_commutator(xis, p.X(r));
        const PBWElement t3 = p.multiply(xis, p.X(r));
        return c * (t1 - qrs.inverse() * t2 - (qrs - qrs.inverse()) * t3);
    } catch (const RelationUnknown&) {
        return std::nullopt;
    }
}

// Mirror step from a known identity X_{beta_i} = c [X_r, X_s].
inline std::optional<PBWElement> run_L(const Presentation& p, int i, int j, int r, int s, const Scalar& c) {
    RootVec sum = p.beta(r);
    for (int k = 0; k < p.root_system().n; ++k) sum[static_cast<std::size_t>(k)] += p.beta(s)[static_cast<std::size_t>(k)];
    if (r >= s || sum != p.beta(i)) throw std::invalid_argument("run_L: seed does not target position i");
    try {
        const Scalar qsj = qpow(p.pair_form(s, j));
        const PBWElement xrj = p.q_commutator(p.X(r), p.X(j));
        const PBWElement t1 = p.q_commutator(p.X(r), p.q_commutator(p.X(s), p.X(j)));
        const PBWElement t2 = p.q_commutator(xrj, p.X(s));
        const PBWElement t3 = p.multiply(xrj, p.X(s));
        return c * (t1 + qsj.inverse() * t2 + (qsj - qsj.inverse()) * t3);
    } catch (const RelationUnknown&) {
        return std::nullopt;
    }
}

// ---- seed mining ------------------------------------------------------------

// Positions whose nested expansion is a bracket of two other positions'
// expansions, up to scalars and the letterwise-commuting normal form, give
// identities X_m = (c_m / (c_r c_s)) [X_r, X_s]. Every degree-compatible
// pair (r, s) is tried against the position carrying beta_r + beta_s.
inline std::vector<SeedRelation> seeds_from_nested(const Presentation& p) {
    std::vector<SeedRelation> seeds;
    const RootSystem& rs = p.root_system();
    const int N = p.size();
    std::vector<NestedPtr> shape(static_cast<std::size_t>(N));
    std::vector<Scalar> scale(static_cast<std::size_t>(N));
    std::vector<std::string> key(static_cast<std::size_t>(N));
    std::map<RootVec, int> pos_of_degree;
    for (int m = 1; m <= N; ++m) {
        NestedPtr t = normalize_tree(rs, p.tree(m));
        scale[static_cast<std::size_t>(m - 1)] = t->scale;
        shape[static_cast<std::size_t>(m - 1)] = scaled(t, t->scale.inverse());
        key[static_cast<std::size_t>(m - 1)] = shape_key(t);
        pos_of_degree.emplace(p.beta(m), m);
    }
    for (int r = 1; r <= N; ++r)
        for (int s = r + 1; s <= N; ++s) {
            RootVec sum = p.beta(r);
            for (int t = 0; t < rs.n; ++t) sum[static_cast<std::size_t>(t)] += p.beta(s)[static_cast<std::size_t>(t)];
            const auto it = pos_of_degree.find(sum);
            if (it == pos_of_degree.end()) continue;
            const int m = it->second;
            if (!(r < m && m < s)) continue;
            const NestedPtr cand = normalize_tree(
                rs, make_bracket(shape[static_cast<std::size_t>(r - 1)], shape[static_cast<std::size_t>(s - 1)]));
            if (shape_key(cand) != key[static_cast<std::size_t>(m - 1)]) continue;
            SeedRelation seed;
            seed.m = m;
            seed.r = r;
            seed.s = s;
            seed.c = (scale[static_cast<std::size_t>(m - 1)] / cand->scale) /
                     (scale[static_cast<std::size_t>(r - 1)] * scale[static_cast<std::size_t>(s - 1)]);
            seeds.push_back(std::move(seed));
        }
    return seeds;
}

// ---- fixtures directory -----------------------------------------------------

inline std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("QNILP_FIXTURES")) return env;
#ifdef QNILP_FIXTURES_DEFAULT
    return QNILP_FIXTURES_DEFAULT;
#else
    return "fixtures";
#endif
}

// Seed files: lines "X<m> = (c) * [X<r>, X<s>]", '#' comments.
inline std::vector<SeedRelation> parse_seed_file(const std::filesystem::path& path) {
    std::vector<SeedRelation> seeds;
    std::ifstream in(path);
    if (!in) return seeds;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        SeedRelation s;
        std::size_t pos = line.find('X');
        auto read_int = [&](std::size_t at, int& out) {
            std::size_t end = at;
            while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
            out = std::stoi(line.substr(at, end - at));
            return end;
        };
        pos = read_int(pos + 1, s.m);
        const std::size_t eq = line.find('=', pos);
        const std::size_t lpar = line.find('(', eq);
        const std::size_t rpar = line.rfind(')', line.find('*', lpar));
        s.c = Scalar::parse(line.substr(lpar + 1, rpar - lpar - 1));
        std::size_t xr = line.find('X', line.find('[', rpar));
        xr = read_int(xr + 1, s.r);
        std::size_t xs = line.find('X', xr);
        read_int(xs + 1, s.s);
        seeds.push_back(std::move(s));
    }
    return seeds;
}

// ---- completion -------------------------------------------------------------

struct CompletionOptions {
    bool use_file_seeds = true;      // merge fixtures/<type>/seeds.txt when the word matches the standard w0 word
    bool use_ambient_fallback = true;  // finish stuck pairs inside the support type's w0 presentation
    bool verify_seeds = true;        // recompute every used seed after completion
};

struct CompletionReport {
    std::vector<SeedRelation> seeds_used;
    std::vector<std::pair<int, int>> ambient_pairs;  // pairs finished by the fallback
    std::vector<std::pair<int, int>> unknown;        // pairs left unknown (empty on success)
    int rounds = 0;
};

class PresentationStore;  // forward; completion may consult w0 presentations

CompletionReport complete_relations(Presentation& p, std::vector<SeedRelation> seeds, const CompletionOptions& opts = {});

// ---- presentation store -----------------------------------------------------

// Built-once, process-wide completed presentations of U_q^+[w0] per type,
// plus stable RootSystem storage for them.
class PresentationStore {
public:
    static PresentationStore& instance() {
        static PresentationStore store;
        return store;
    }

    const RootSystem& root_system(const LieType& t) {
        std::lock_guard<std::mutex> lock(mu_);
        return root_system_locked(t);
    }

    std::shared_ptr<const Presentation> w0_presentation(const LieType& t) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = w0_.find(LieType::make(t.family, t.rank).name());
            if (it != w0_.end()) return it->second;
        }
        // build outside the lock; completion may recursively fetch smaller types
        const RootSystem& rs = root_system(t);
        auto p = std::make_shared<Presentation>(rs, standard_w0_word(rs));
        CompletionOptions opts;
        opts.use_ambient_fallback = false;  // nothing bigger to fall back to
        CompletionReport rep = complete_relations(*p, seeds_from_nested(*p), opts);
        if (!rep.unknown.empty()) {
            std::string what = "w0 presentation of " + rs.type.name() + " left pairs unknown:";
            for (auto [i, j] : rep.unknown) what += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
            throw std::runtime_error(what);
        }
        std::lock_guard<std::mutex> lock(mu_);
        return w0_.emplace(rs.type.name(), std::move(p)).first->second;
    }

private:
    PresentationStore() = default;

    const RootSystem& root_system_locked(const LieType& t) {
        const std::string name = LieType::make(t.family, t.rank).name();
        auto it = systems_.find(name);
        if (it == systems_.end())
            it = systems_.emplace(name, std::make_unique<RootSystem>(build_root_system(LieType::parse(name)))).first;
        return *it->second;
    }

    std::mutex mu_;
    std::map<std::string, std::unique_ptr<RootSystem>> systems_;
    std::map<std::string, std::shared_ptr<const Presentation>> w0_;
};

namespace detail {

// Solve sum_k c_k V_k = Z over the scalar field; the V_k are linearly
// independent. Returns nullopt when Z is outside the span.
inline std::optional<std::vector<Scalar>> solve_linear(const std::vector<PBWElement>& V, const PBWElement& Z) {
    std::map<Mono, std::size_t> coords;
    auto touch = [&](const PBWElement& e) {
        for (const auto& [m, c] : e.terms) coords.emplace(m, coords.size());
    };
    for (const auto& v : V) touch(v);
    touch(Z);
    const std::size_t rows = coords.size(), cols = V.size();
    std::vector<std::vector<Scalar>> A(rows, std::vector<Scalar>(cols + 1));
    for (std::size_t k = 0; k < cols; ++k)
        for (const auto& [m, c] : V[k].terms) A[coords[m]][k] = c;
    for (const auto& [m, c] : Z.terms) A[coords[m]][cols] = c;
    std::vector<std::optional<std::size_t>> pivot_of_col(cols);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && A[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[rank]);
        const Scalar inv = A[rank][col].inverse();
        for (std::size_t c2 = col; c2 <= cols; ++c2) A[rank][c2] *= inv;
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank || A[r2][col].is_zero()) continue;
            const Scalar f = A[r2][col];
            for (std::size_t c2 = col; c2 <= cols; ++c2) A[r2][c2] -= f * A[rank][c2];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (std::size_t r2 = rank; r2 < rows; ++r2)
        if (!A[r2][cols].is_zero()) return std::nullopt;
    std::vector<Scalar> x(cols);
    for (std::size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col]) x[col] = A[*pivot_of_col[col]][cols];
    return x;
}

// ordered monomials in positions (lo, hi) exclusive with prescribed degree
inline std::vector<Mono> monomials_of_degree(const Presentation& p, int lo, int hi, const RootVec& degree) {
    std::vector<Mono> out;
    Mono cur;
    std::function<void(int, RootVec)> go = [&](int pos, RootVec rem) {
        bool zero = true;
        for (int c : rem) {
            if (c < 0) return;
            zero &= c == 0;
        }
        if (zero) {
            out.push_back(cur);
            return;
        }
        if (pos >= hi) return;
        go(pos + 1, rem);
        RootVec next = rem;
        for (int e = 1;; ++e) {
            bool ok = true;
            for (int k = 0; k < p.root_system().n; ++k) {
                next[static_cast<std::size_t>(k)] -= p.beta(pos)[static_cast<std::size_t>(k)];
                if (next[static_cast<std::size_t>(k)] < 0) ok = false;
            }
            if (!ok) break;
            cur.emplace_back(pos, e);
            go(pos + 1, next);
            cur.pop_back();
        }
    };
    go(lo + 1, degree);
    return out;
}

// Finish a stuck pair by computing [X_i, X_j] in the w0 presentation of the
// word's support type and matching it against the candidate monomials.
struct AmbientContext {
    const Presentation* host;
    std::shared_ptr<const Presentation> w0;
    std::map<int, int> sigma;              // host letters -> w0 letters
    std::vector<PBWElement> gen_images;    // per host position

    explicit AmbientContext(const Presentation& p) : host(&p) {
        std::set<int> letters(p.word().begin(), p.word().end());
        const SubdiagramType sub = subdiagram_type(p.root_system(), std::vector<int>(letters.begin(), letters.end()));
        sigma = sub.sigma;
        w0 = PresentationStore::instance().w0_presentation(sub.type);
        gen_images.resize(static_cast<std::size_t>(p.size()));
    }

    NestedPtr relabel(const NestedPtr& t) const {
        if (t->is_leaf()) {
            NestedPtr leaf = make_leaf(w0->root_system(), sigma.at(t->leaf));
            return t->scale.is_one() ? leaf : scaled(leaf, t->scale);
        }
        return make_bracket(relabel(t->left), relabel(t->right), t->scale);
    }

    const PBWElement& image(int pos) {
        PBWElement& slot = gen_images[static_cast<std::size_t>(pos - 1)];
        if (slot.is_zero()) slot = w0->eval_nested(relabel(host->tree(pos)));
        return slot;
    }

    PBWElement bracket(int i, int j) { return w0->q_commutator(image(i), image(j)); }

    std::optional<PBWElement> expand(int i, int j) {
        RootVec degree = host->beta(i);
        for (int k = 0; k < host->root_system().n; ++k) degree[static_cast<std::size_t>(k)] += host->beta(j)[static_cast<std::size_t>(k)];
        const std::vector<Mono> cands = monomials_of_degree(*host, i, j, degree);
        std::vector<PBWElement> V;
        V.reserve(cands.size());
        for (const auto& m : cands) {
            PBWElement prod;
            prod.terms[{}] = Scalar(1);
            for (const auto& [pos, e] : m)
                for (int k = 0; k < e; ++k) prod = w0->multiply(prod, image(pos));
            V.push_back(std::move(prod));
        }
        auto sol = solve_linear(V, bracket(i, j));
        if (!sol) return std::nullopt;
        PBWElement out;
        for (std::size_t k = 0; k < cands.size(); ++k) out.add_term(cands[k], (*sol)[k]);
        return out;
    }
};

}  // namespace detail

inline CompletionReport complete_relations(Presentation& p, std::vector<SeedRelation> seeds, const CompletionOptions& opts) {
    CompletionReport rep;
    const int N = p.size();

    if (opts.use_file_seeds) {
        const RootSystem& rs = p.root_system();
        if (p.word() == standard_w0_word(rs)) {
            auto file = parse_seed_file(fixtures_dir() / rs.type.name() / "seeds.txt");
            seeds.insert(seeds.end(), file.begin(), file.end());
        }
    }

    auto seed_known = [&](const SeedRelation& s) {
        for (const auto& t : seeds)
            if (t.m == s.m && t.r == s.r && t.s == s.s) return true;
        return false;
    };

    // a seed X_m = c [X_r, X_s] is itself the relation for the pair (r, s)
    auto register_seed = [&](const SeedRelation& s) {
        RootVec sum = p.beta(s.r);
        for (int k = 0; k < p.root_system().n; ++k) sum[static_cast<std::size_t>(k)] += p.beta(s.s)[static_cast<std::size_t>(k)];
        if (s.r >= s.s || sum != p.beta(s.m) || s.c.is_zero())
            throw std::invalid_argument("invalid seed X" + std::to_string(s.m) + " = c [X" + std::to_string(s.r) + ", X" +
                                        std::to_string(s.s) + "]");
        if (!p.known(s.r, s.s)) {
            PBWElement rhs;
            rhs.add_term({{s.m, 1}}, s.c.inverse());
            p.set_relation(s.r, s.s, std::move(rhs), Presentation::Provenance::Seed);
        }
    };
    for (const auto& s : seeds) register_seed(s);

    auto shift_mono = [](const Mono& m, int by) {
        Mono out = m;
        for (auto& [pos, e] : out) pos += by;
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        ++rep.rounds;
        // (a) transport along the periodic symmetry, both directions
        if (const int t = p.period()) {
            for (int j = 2; j <= N; ++j)
                for (int i = 1; i < j; ++i) {
                    if (!p.known(i, j)) continue;
                    const PBWElement& rhs = p.relation(i, j);
                    if (j + t <= N && !p.known(i + t, j + t)) {
                        PBWElement shifted;
                        for (const auto& [m, c] : rhs.terms) shifted.add_term(shift_mono(m, t), c);
                        p.set_relation(i + t, j + t, std::move(shifted), Presentation::Provenance::Transport);
                        changed = true;
                    }
                    if (i - t >= 1 && !p.known(i - t, j - t)) {
                        PBWElement shifted;
                        for (const auto& [m, c] : rhs.terms) shifted.add_term(shift_mono(m, -t), c);
                        p.set_relation(i - t, j - t, std::move(shifted), Presentation::Provenance::Transport);
                        changed = true;
                    }
                }
        }
        // (b) bootstrap every unknown pair from every applicable seed
        for (int j = 2; j <= N; ++j)
            for (int i = 1; i < j; ++i) {
                if (p.known(i, j)) continue;
                for (const auto& s : seeds) {
                    std::optional<PBWElement> rhs;
                    if (s.m == j && s.r != i && s.s != i)
                        rhs = run_R(p, i, j, s.r, s.s, s.c);
                    else if (s.m == i && s.r != j && s.s != j)
                        rhs = run_L(p, i, j, s.r, s.s, s.c);
                    if (rhs) {
                        p.set_relation(i, j, std::move(*rhs), Presentation::Provenance::Bootstrap);
                        changed = true;
                        break;
                    }
                }
            }
        // (c) harvest: a known single-monomial relation [X_i, X_j] = c X_m
        //     registers the seed X_m = (1/c) [X_i, X_j]
        for (int j = 2; j <= N; ++j)
            for (int i = 1; i < j; ++i) {
                if (!p.known(i, j)) continue;
                if (auto single = p.relation(i, j).as_single_variable()) {
                    SeedRelation s;
                    s.m = single->first;
                    s.r = i;
                    s.s = j;
                    s.c = single->second.inverse();
                    if (!seed_known(s)) {
                        seeds.push_back(s);
                        changed = true;
                    }
                }
            }
    }

    if (opts.use_ambient_fallback && !p.unknown_pairs().empty()) {
        detail::AmbientContext ctx(p);
        // repeatedly sweep; later pairs may need earlier ones for verification
        for (auto [i, j] : p.unknown_pairs()) {
            auto rhs = ctx.expand(i, j);
            if (!rhs) throw std::logic_error("ambient completion failed for pair (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
            p.set_relation(i, j, std::move(*rhs), Presentation::Provenance::Ambient);
            rep.ambient_pairs.emplace_back(i, j);
        }
    }

    rep.unknown = p.unknown_pairs();
    rep.seeds_used = seeds;

    if (opts.verify_seeds && rep.unknown.empty()) {
        for (const auto& s : seeds) {
            const PBWElement lhs = p.q_commutator(p.X(s.r), p.X(s.s));
            PBWElement want;
            want.add_term({{s.m, 1}}, s.c.inverse());
            if (!(lhs == want))
                throw std::logic_error("seed verification failed for X" + std::to_string(s.m) + " = c [X" +
                                       std::to_string(s.r) + ", X" + std::to_string(s.s) + "]");
        }
    }
    return rep;
}

// ---- q-adjoint powers and nilpotency ----------------------------------------

inline PBWElement adq_power(const Presentation& p, int a_pos, PBWElement y, int k) {
    for (int t = 0; t < k; ++t) y = p.q_commutator(p.X(a_pos), y);
    return y;
}

// Smallest p with (ad_q X_a)^p (X_b) = 0, using the combinatorial cutoff
// (no nonnegative combination of intermediate radical roots reaches
// k beta_a + beta_b) before touching the algebra at each power.
inline int nilpotency_pair(const Presentation& p, int a_pos, int b_pos) {
    if (a_pos >= b_pos) throw std::invalid_argument("nilpotency_pair: need a < b");
    std::vector<RootVec> mid;
    for (int k = a_pos + 1; k < b_pos; ++k) mid.push_back(p.beta(k));
    PBWElement y = p.X(b_pos);
    const int bound = p.root_system().cmax + 1;
    for (int k = 1; k <= bound; ++k) {
        RootVec goal = p.beta(b_pos);
        for (int t = 0; t < p.root_system().n; ++t)
            goal[static_cast<std::size_t>(t)] += k * p.beta(a_pos)[static_cast<std::size_t>(t)];
        if (!nonneg_combination_exists(mid, goal)) return k;
        y = p.q_commutator(p.X(a_pos), y);
        if (y.is_zero()) return k;
    }
    throw std::logic_error("nilpotency_pair: exceeded cmax + 1 powers");
}

namespace detail {

// min p with (ad_q E_i)^p (T_{w s_j}(E_j)) = 0, evaluated inside the
// w0 presentation of the ambient type (all letters must be in 1..n of rs).
inline int nilpotency_in_w0(const RootSystem& rs, const WeylElement& w, int i, int j) {
    auto p0 = PresentationStore::instance().w0_presentation(rs.type);
    const RootSystem& rs0 = p0->root_system();
    // transfer w to the store-owned root system
    WeylElement w0rs = WeylElement::identity(rs0);
    for (int letter : reduced_word(w)) w0rs = w0rs.mul_simple_right(letter);
    const NestedPtr tree = lusztig_expand(rs0, w0rs.mul_simple_right(j), j);
    PBWElement y = p0->eval_nested(tree);
    const int xi = p0->position_of_simple(i);
    const int bound = rs0.cmax + 1;
    for (int k = 1; k <= bound; ++k) {
        y = p0->q_commutator(p0->X(xi), y);
        if (y.is_zero()) return k;
    }
    throw std::logic_error("nilpotency_in_w0: exceeded cmax + 1 powers");
}

}  // namespace detail

// Nilpotency index of the triple (w, i, j) with l(s_i w s_j) = l(w) - 2:
// builds the reduced word i ++ rw(s_i w s_j) ++ j, the presentation on it,
// and evaluates the pair (1, N). Shortcut cases (support drops) return 1 or 2
// without algebra.
inline int nilpotency_index(const RootSystem& rs, const WeylElement& w, int i, int j) {
    if (!w.right_descent(j) || !w.mul_simple_right(j).left_descent(i))
        throw std::invalid_argument("nilpotency_index: l(s_i w s_j) != l(w) - 2");
    const WeylElement siwsj = w.mul_simple_right(j).mul_simple_left(i);
    {
        // support shortcuts
        auto contains = [](const std::vector<int>& v, int x) {
            return std::find(v.begin(), v.end(), x) != v.end();
        };
        const std::vector<int> siw = support(w.mul_simple_left(i));
        const std::vector<int> wsj = support(w.mul_simple_right(j));
        if (!contains(siw, i) || !contains(wsj, j)) return 1;
        if (i == j && !contains(support(siwsj), i)) return 2;
    }
    Word word;
    word.push_back(i);
    for (int t : reduced_word(siwsj)) word.push_back(t);
    word.push_back(j);
    Presentation p(rs, word);
    CompletionReport rep = complete_relations(p, seeds_from_nested(p));
    if (rep.unknown.empty()) return nilpotency_pair(p, 1, p.size());
    return detail::nilpotency_in_w0(rs, w, i, j);
}

}  // namespace qnilp
