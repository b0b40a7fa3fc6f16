// The Gamma(W) layer: triples (w, i, j) with l(s_i w s_j) = l(w) - 2,
// their cardinality, duality and chi, the elementary reduction moves and
// the two-stage reduction to bigrassmannian elements satisfying the
// orthogonality condition, equivalence-class exploration, and the full
// nilpotency pipeline dispatching into the PBW engine.

#pragma once

#include "qnilp/qschubert.hpp"

#include <cstdint>
#include <deque>

namespace qnilp {

struct GammaTriple {
    WeylElement w;
    int i = 0, j = 0;

    friend bool operator==(const GammaTriple& a, const GammaTriple& b) {
        return a.i == b.i && a.j == b.j && a.w == b.w;
    }
};

struct GammaTripleHash {
    std::size_t operator()(const GammaTriple& x) const {
        return WeylHash()(x.w) * 1000003u + static_cast<std::size_t>(x.i * 37 + x.j);
    }
};

inline bool in_gamma(const WeylElement& w, int i, int j) {
    return w.right_descent(j) && w.mul_simple_right(j).left_descent(i);
}

inline GammaTriple make_gamma(const WeylElement& w, int i, int j) {
    if (!in_gamma(w, i, j)) throw std::invalid_argument("not a Gamma(W) triple");
    return GammaTriple{w, i, j};
}

// bigrassmannian w determines its triple
inline GammaTriple bracket_triple(const WeylElement& w) {
    const auto dl = w.left_descents(), dr = w.right_descents();
    if (dl.size() != 1 || dr.size() != 1) throw std::invalid_argument("bracket_triple: element is not bigrassmannian");
    return make_gamma(w, dl[0], dr[0]);
}

inline GammaTriple dual(const GammaTriple& x) { return GammaTriple{x.w.inverse(), x.j, x.i}; }

struct Chi {
    int a = 0, b = 0, c = 0;
    friend bool operator==(const Chi& l, const Chi& r) { return l.a == r.a && l.b == r.b && l.c == r.c; }
};

inline Chi chi(const RootSystem& rs, const GammaTriple& x) {
    RootVec ai(static_cast<std::size_t>(rs.n), 0), aj(static_cast<std::size_t>(rs.n), 0);
    ai[static_cast<std::size_t>(x.i - 1)] = 1;
    aj[static_cast<std::size_t>(x.j - 1)] = 1;
    Chi out;
    out.a = rs.pair_form(ai, ai);
    out.b = rs.pair_form(aj, aj);
    out.c = rs.pair_form(ai, x.w.mul_simple_right(x.j).act(aj));
    return out;
}

// ---- cardinalities -----------------------------------------------------------

inline std::uint64_t weyl_group_order(const LieType& t_in) {
    const LieType t = LieType::make(t_in.family, t_in.rank);
    const int n = t.rank;
    auto fact = [](int k) {
        std::uint64_t f = 1;
        for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    };
    switch (t.family) {
        case 'A': return fact(n + 1);
        case 'B':
        case 'C': return fact(n) << n;
        case 'D': return fact(n) << (n - 1);
        case 'G': return 12;
        case 'F': return 1152;
        case 'E': return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
        default: throw std::logic_error("unreachable family");
    }
}

// |Gamma(W)| by the orbit-counting formula: summed over (i, j), the count is
// |W|/4 when the simple roots have different lengths and |W|/4 - |W|/(2 K_j)
// when equal, K_j = number of roots of that length.
inline std::uint64_t gamma_cardinality(const RootSystem& rs) {
    const std::uint64_t order = weyl_group_order(rs.type);
    int n_short = 0, n_long = 0, roots_short = 0, roots_long = 0;
    const int dmin = *std::min_element(rs.d.begin(), rs.d.end());
    for (int i = 0; i < rs.n; ++i) (rs.d[static_cast<std::size_t>(i)] == dmin ? n_short : n_long) += 1;
    for (int k = 1; k <= rs.num_positive(); ++k) {
        const int norm = rs.pair_form(rs.root(k), rs.root(k));
        (norm == 2 * dmin ? roots_short : roots_long) += 2;  // both signs
    }
    std::uint64_t total = 0;
    for (int i = 1; i <= rs.n; ++i)
        for (int j = 1; j <= rs.n; ++j) {
            const bool same = rs.d[static_cast<std::size_t>(i - 1)] == rs.d[static_cast<std::size_t>(j - 1)];
            const std::uint64_t kj = static_cast<std::uint64_t>(rs.d[static_cast<std::size_t>(j - 1)] == dmin ? roots_short : roots_long);
            if (same) {
                // |W|/4 - |W|/(2 K_j) = |W| (K_j - 2) / (4 K_j), always integral
                total += order * (kj - 2) / (4 * kj);
            } else {
                total += order / 4;
            }
        }
    return total;
}

// Exhaustive enumeration (brute force over W); |W| must stay under the cap.
inline std::vector<GammaTriple> enumerate_gamma(const RootSystem& rs, std::uint64_t cap = 1000000) {
    if (weyl_group_order(rs.type) > cap) throw std::invalid_argument("enumerate_gamma: group too large for the cap");
    std::vector<GammaTriple> out;
    std::unordered_set<std::uint64_t> seen;
    std::deque<WeylElement> queue;
    WeylElement id = WeylElement::identity(rs);
    seen.insert(id.key());
    queue.push_back(id);
    while (!queue.empty()) {
        WeylElement w = queue.front();
        queue.pop_front();
        for (int j = 1; j <= rs.n; ++j) {
            if (w.right_descent(j))
                for (int i = 1; i <= rs.n; ++i)
                    if (w.mul_simple_right(j).left_descent(i)) out.push_back(GammaTriple{w, i, j});
            WeylElement next = w.mul_simple_right(j);
            if (seen.insert(next.key()).second) queue.push_back(next);
        }
    }
    return out;
}

// ---- reduction moves ---------------------------------------------------------

struct ReductionStep {
    enum class Kind : char { L, R, kL, kR };
    Kind kind = Kind::L;
    int t_or_k = 0;
    GammaTriple from, to;
};

inline const char* kind_name(ReductionStep::Kind k) {
    switch (k) {
        case ReductionStep::Kind::L: return "L";
        case ReductionStep::Kind::R: return "R";
        case ReductionStep::Kind::kL: return "kL";
        case ReductionStep::Kind::kR: return "kR";
    }
    return "?";
}

// the defining conditions of the four reduction relations
inline bool is_L_relation(const RootSystem& rs, const GammaTriple& x, const GammaTriple& y) {
    if (!in_gamma(x.w, x.i, x.j) || !in_gamma(y.w, y.i, y.j) || x.j != y.j) return false;
    RootVec ai(static_cast<std::size_t>(rs.n), 0), ai2(static_cast<std::size_t>(rs.n), 0);
    ai[static_cast<std::size_t>(x.i - 1)] = 1;
    ai2[static_cast<std::size_t>(y.i - 1)] = 1;
    return leq_L(y.w, x.w) && x.w.inverse().act(ai) == y.w.inverse().act(ai2);
}

inline bool is_R_relation(const RootSystem& rs, const GammaTriple& x, const GammaTriple& y) {
    if (!in_gamma(x.w, x.i, x.j) || !in_gamma(y.w, y.i, y.j) || x.i != y.i) return false;
    RootVec aj(static_cast<std::size_t>(rs.n), 0), aj2(static_cast<std::size_t>(rs.n), 0);
    aj[static_cast<std::size_t>(x.j - 1)] = 1;
    aj2[static_cast<std::size_t>(y.j - 1)] = 1;
    return leq_R(y.w, x.w) && x.w.act(aj) == y.w.act(aj2);
}

inline bool is_kR_reduction(const RootSystem& rs, const GammaTriple& x, int k, const GammaTriple& y) {
    if (y.w.length() >= x.w.length()) return false;
    const GammaTriple up{x.w.mul_simple_left(k), x.i, x.j};
    if (!in_gamma(up.w, up.i, up.j)) return false;
    return is_L_relation(rs, up, x) && is_R_relation(rs, up, y) && leq_R(y.w, x.w);
}

inline bool is_kL_reduction(const RootSystem& rs, const GammaTriple& x, int k, const GammaTriple& y) {
    if (y.w.length() >= x.w.length()) return false;
    const GammaTriple up{x.w.mul_simple_right(k), x.i, x.j};
    if (!in_gamma(up.w, up.i, up.j)) return false;
    return is_R_relation(rs, up, x) && is_L_relation(rs, up, y) && leq_L(y.w, x.w);
}

namespace detail {

inline void check_L_step(const RootSystem& rs, const GammaTriple& x, const GammaTriple& y) {
    RootVec ai(static_cast<std::size_t>(rs.n), 0), ai2(static_cast<std::size_t>(rs.n), 0);
    ai[static_cast<std::size_t>(x.i - 1)] = 1;
    ai2[static_cast<std::size_t>(y.i - 1)] = 1;
    if (!(leq_L(y.w, x.w) && x.w.inverse().act(ai) == y.w.inverse().act(ai2) && x.j == y.j))
        throw std::logic_error("invalid L reduction step");
}

inline void check_R_step(const RootSystem& rs, const GammaTriple& x, const GammaTriple& y) {
    RootVec aj(static_cast<std::size_t>(rs.n), 0), aj2(static_cast<std::size_t>(rs.n), 0);
    aj[static_cast<std::size_t>(x.j - 1)] = 1;
    aj2[static_cast<std::size_t>(y.j - 1)] = 1;
    if (!(leq_R(y.w, x.w) && x.w.act(aj) == y.w.act(aj2) && x.i == y.i))
        throw std::logic_error("invalid R reduction step");
}

}  // namespace detail

// Elementary (covering) moves: for t != i with w0(i, t) <=_R w s_j,
//   (w, i, j) -> (w0(i, t) s_i w, i', j),  i' = t when the braid order is 3.
inline std::vector<ReductionStep> covers_L(const RootSystem& rs, const GammaTriple& x) {
    std::vector<ReductionStep> out;
    const WeylElement wsj = x.w.mul_simple_right(x.j);
    for (int t = 1; t <= rs.n; ++t) {
        if (t == x.i) continue;
        const WeylElement u = w0ab(rs, x.i, t);
        if (!leq_R(u, wsj)) continue;
        const int i2 = dihedral_order(rs, x.i, t) == 3 ? t : x.i;
        ReductionStep step;
        step.kind = ReductionStep::Kind::L;
        step.t_or_k = t;
        step.from = x;
        step.to = make_gamma(u * x.w.mul_simple_left(x.i), i2, x.j);
        detail::check_L_step(rs, step.from, step.to);
        out.push_back(std::move(step));
    }
    return out;
}

inline std::vector<ReductionStep> covers_R(const RootSystem& rs, const GammaTriple& x) {
    std::vector<ReductionStep> out;
    const WeylElement siw = x.w.mul_simple_left(x.i);
    for (int t = 1; t <= rs.n; ++t) {
        if (t == x.j) continue;
        const WeylElement u = w0ab(rs, x.j, t);
        if (!leq_L(u, siw)) continue;
        const int j2 = dihedral_order(rs, x.j, t) == 3 ? t : x.j;
        ReductionStep step;
        step.kind = ReductionStep::Kind::R;
        step.t_or_k = t;
        step.from = x;
        step.to = make_gamma(x.w.mul_simple_right(x.j) * u, x.i, j2);
        detail::check_R_step(rs, step.from, step.to);
        out.push_back(std::move(step));
    }
    return out;
}

// Repeated elementary moves: L-covers until w s_j has a single left descent,
// then R-covers until s_i w has a single right descent. The terminal triple
// is either a bigrassmannian bracket or (w0(p, k), p, p').
inline std::pair<GammaTriple, std::vector<ReductionStep>> reduce_to_minimal(const RootSystem& rs, GammaTriple x) {
    std::vector<ReductionStep> chain;
    for (;;) {
        auto ls = covers_L(rs, x);
        if (!ls.empty()) {
            x = ls.front().to;
            chain.push_back(std::move(ls.front()));
            continue;
        }
        auto rsteps = covers_R(rs, x);
        if (!rsteps.empty()) {
            x = rsteps.front().to;
            chain.push_back(std::move(rsteps.front()));
            continue;
        }
        break;
    }
    return {std::move(x), std::move(chain)};
}

// the terminal dihedral case: w == w0(a, b) for its two descents
inline std::optional<std::pair<int, int>> as_dihedral_longest(const RootSystem& rs, const WeylElement& w) {
    const auto dr = w.right_descents();
    if (dr.size() != 2 || w.left_descents().size() != 2) return std::nullopt;
    if (w == w0ab(rs, dr[0], dr[1])) return std::make_pair(dr[0], dr[1]);
    return std::nullopt;
}

// ---- orthogonality and the second stage ---------------------------------------

// For every simple alpha: (<alpha, alpha_j> = 0 and w(alpha) simple) implies
// <w(alpha), alpha_i> = 0, and the mirrored condition through w^{-1}.
inline bool orthogonality_holds(const RootSystem& rs, const WeylElement& w) {
    const auto dl = w.left_descents(), dr = w.right_descents();
    if (dl.size() != 1 || dr.size() != 1) throw std::invalid_argument("orthogonality: element is not bigrassmannian");
    const int i = dl[0], j = dr[0];
    for (int k = 1; k <= rs.n; ++k) {
        const int fkj = rs.form[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
        const int fki = rs.form[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)];
        if (fkj == 0) {
            const int p = w.image(k);
            if (p >= 1 && p <= rs.n && rs.form[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(i - 1)] != 0)
                return false;
        }
        if (fki == 0) {
            const int p = w.image_inv(k);
            if (p >= 1 && p <= rs.n && rs.form[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(j - 1)] != 0)
                return false;
        }
    }
    return true;
}

namespace detail {

// One (k, R) move: requires s_k s_i = s_i s_k, w^{-1}(alpha_k) = alpha_p with
// s_j s_p not commuting. Target (w s_j x^{-1} s_{j'}, i, j').
inline ReductionStep move_kR(const RootSystem& rs, const GammaTriple& x, int k, int p) {
    const int m = dihedral_order(rs, x.j, p);
    WeylElement xe = WeylElement::identity(rs);
    if (m == 3)
        xe = simple_reflection(rs, p);
    else if (m == 4)
        xe = simple_reflection(rs, x.j) * simple_reflection(rs, p);
    else
        xe = from_word(rs, {x.j, p, x.j, p});
    const int j2 = m == 3 ? p : x.j;
    ReductionStep step;
    step.kind = ReductionStep::Kind::kR;
    step.t_or_k = k;
    step.from = x;
    step.to = make_gamma(x.w.mul_simple_right(x.j) * xe.inverse() * simple_reflection(rs, j2), x.i, j2);
    // validate against the definition: (s_k w, i, j) ->L (w, i, j) and
    // (s_k w, i, j) ->R (to), with to.w <=_R w and shorter
    const GammaTriple up = make_gamma(x.w.mul_simple_left(k), x.i, x.j);
    check_L_step(rs, up, x);
    check_R_step(rs, up, step.to);
    if (!(leq_R(step.to.w, x.w) && step.to.w.length() < x.w.length())) throw std::logic_error("invalid (k,R) move");
    return step;
}

}  // namespace detail

// Searches the violating index k in increasing order; condition-1 violations
// give a (k, L) move (performed through duality), condition-2 violations a
// (k, R) move. Returns the move, or nothing when the orthogonality holds.
inline std::optional<ReductionStep> second_stage_move(const RootSystem& rs, const GammaTriple& x) {
    const auto dl = x.w.left_descents(), dr = x.w.right_descents();
    if (dl.size() != 1 || dr.size() != 1) throw std::invalid_argument("second_stage: element is not bigrassmannian");
    const int i = dl[0], j = dr[0];
    for (int k = 1; k <= rs.n; ++k) {
        const int fkj = rs.form[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
        const int fki = rs.form[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i - 1)];
        if (fkj == 0) {
            const int p = x.w.image(k);
            if (p >= 1 && p <= rs.n && rs.form[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(i - 1)] != 0) {
                // (k, L): dualize, run the (k, R) construction, dualize back
                ReductionStep dual_step = detail::move_kR(rs, dual(x), k, p);
                ReductionStep step;
                step.kind = ReductionStep::Kind::kL;
                step.t_or_k = k;
                step.from = x;
                step.to = dual(dual_step.to);
                return step;
            }
        }
        if (fki == 0) {
            const int p = x.w.image_inv(k);
            if (p >= 1 && p <= rs.n && rs.form[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(j - 1)] != 0)
                return detail::move_kR(rs, x, k, p);
        }
    }
    return std::nullopt;
}

// Repeatedly applies second-stage moves (re-running the elementary reduction
// whenever a move leaves the bigrassmannian locus) until the orthogonality
// condition holds or the dihedral-longest terminal appears.
inline std::pair<GammaTriple, std::vector<ReductionStep>> second_stage(const RootSystem& rs, GammaTriple x) {
    if (!is_bigrassmannian(x.w)) throw std::invalid_argument("second_stage: element is not bigrassmannian");
    std::vector<ReductionStep> chain;
    for (;;) {
        if (as_dihedral_longest(rs, x.w)) break;
        if (!is_bigrassmannian(x.w)) {
            auto [y, steps] = reduce_to_minimal(rs, x);
            x = std::move(y);
            chain.insert(chain.end(), steps.begin(), steps.end());
            continue;
        }
        auto move = second_stage_move(rs, x);
        if (!move) break;
        x = move->to;
        chain.push_back(std::move(*move));
    }
    return {std::move(x), std::move(chain)};
}

// ---- equivalence classes -------------------------------------------------------

struct EquivalenceClass {
    std::vector<GammaTriple> members;
    bool truncated = false;
};

// Closure of x under elementary moves in both directions (covers of x and
// elements covering x), breadth first with a node budget.
inline EquivalenceClass equivalence_class(const RootSystem& rs, const GammaTriple& x0, std::size_t node_budget = 1000000) {
    EquivalenceClass out;
    std::unordered_set<GammaTriple, GammaTripleHash> seen;
    std::deque<GammaTriple> queue;
    seen.insert(x0);
    queue.push_back(x0);
    auto push = [&](const GammaTriple& y) {
        if (seen.size() >= node_budget) {
            out.truncated = true;
            return;
        }
        if (seen.insert(y).second) queue.push_back(y);
    };
    while (!queue.empty()) {
        GammaTriple x = queue.front();
        queue.pop_front();
        out.members.push_back(x);
        for (const auto& s : covers_L(rs, x)) push(s.to);
        for (const auto& s : covers_R(rs, x)) push(s.to);
        // elements covering x: invert the elementary move shapes
        for (int a = 1; a <= rs.n; ++a)
            for (int t = 1; t <= rs.n; ++t) {
                if (t == a) continue;
                const int ord = dihedral_order(rs, a, t);
                const int lands = ord == 3 ? t : a;
                // an L move with parameters (i = a, t) lands on first index `lands`
                if (lands == x.i) {
                    WeylElement parent = simple_reflection(rs, a) * w0ab(rs, a, t) * x.w;
                    if (parent.length() == x.w.length() + ord - 1 && in_gamma(parent, a, x.j)) {
                        GammaTriple cand{parent, a, x.j};
                        for (const auto& s : covers_L(rs, cand))
                            if (s.t_or_k == t && s.to == x) push(cand);
                    }
                }
                // an R move with parameters (j = a, t) lands on second index `lands`
                if (lands == x.j) {
                    WeylElement parent = x.w * w0ab(rs, a, t) * simple_reflection(rs, a);
                    if (parent.length() == x.w.length() + ord - 1 && in_gamma(parent, x.i, a)) {
                        GammaTriple cand{parent, x.i, a};
                        for (const auto& s : covers_R(rs, cand))
                            if (s.t_or_k == t && s.to == x) push(cand);
                    }
                }
            }
    }
    return out;
}

// ---- the nilpotency pipeline ----------------------------------------------------

struct NilpotencyResult {
    int n = 0;
    Chi chi_value;
    std::vector<ReductionStep> chain;  // reductions actually used
    std::string terminal;              // description of the terminal case
};

namespace detail {

inline bool support_contains(const std::vector<int>& sup, int x) {
    return std::find(sup.begin(), sup.end(), x) != sup.end();
}

}  // namespace detail

// Full pipeline: support shortcuts, elementary reduction to a minimal triple,
// the dihedral closed form, and for bigrassmannian terminals the support
// relabeling, second stage and engine evaluation inside the support type's
// longest-element presentation.
inline NilpotencyResult nilpotency(const RootSystem& rs, const GammaTriple& x0) {
    NilpotencyResult res;
    res.chi_value = chi(rs, x0);

    // shortcuts: a generator that occurs once commutes past everything
    const WeylElement siw = x0.w.mul_simple_left(x0.i);
    const WeylElement wsj = x0.w.mul_simple_right(x0.j);
    if (!detail::support_contains(support(siw), x0.i) || !detail::support_contains(support(wsj), x0.j)) {
        res.n = 1;
        res.terminal = "vanishing bracket (support shortcut)";
        return res;
    }
    if (x0.i == x0.j && !detail::support_contains(support(siw.mul_simple_right(x0.i)), x0.i)) {
        res.n = 2;
        res.terminal = "square shortcut";
        return res;
    }

    auto [x1, chain1] = reduce_to_minimal(rs, x0);
    res.chain = std::move(chain1);

    GammaTriple x = std::move(x1);
    for (;;) {
        if (auto ab = as_dihedral_longest(rs, x.w)) {
            // (w0(p,k), p, p'): N = 1 - <alpha_k, alpha_p^v>
            const int p = x.i;
            const int k = ab->first == p ? ab->second : ab->first;
            res.n = 1 - rs.cartan[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(k - 1)];
            res.terminal = "dihedral longest element w0(" + std::to_string(p) + "," + std::to_string(k) + ")";
            return res;
        }
        if (!is_bigrassmannian(x.w)) throw std::logic_error("pipeline: minimal triple is neither case");
        auto move = second_stage_move(rs, x);
        if (!move) break;
        x = move->to;
        res.chain.push_back(std::move(*move));
        if (!is_bigrassmannian(x.w) && !as_dihedral_longest(rs, x.w)) {
            auto [y, steps] = reduce_to_minimal(rs, x);
            x = std::move(y);
            for (auto& s : steps) res.chain.push_back(std::move(s));
        }
    }

    // bigrassmannian satisfying the orthogonality condition: relabel to full
    // support and evaluate in the support type's w0 presentation
    const std::vector<int> sup = support(x.w);
    const SubdiagramType sub = subdiagram_type(rs, sup);
    const RootSystem& rs2 = PresentationStore::instance().root_system(sub.type);
    WeylElement w2 = WeylElement::identity(rs2);
    for (int letter : reduced_word(x.w)) w2 = w2.mul_simple_right(sub.sigma.at(letter));
    res.n = detail::nilpotency_in_w0(rs2, w2, sub.sigma.at(x.i), sub.sigma.at(x.j));
    res.terminal = "bigrassmannian in " + sub.type.name();
    return res;
}

// ---- full-support orthogonal bigrassmannian sets --------------------------------

inline std::vector<WeylElement> bigr_perp_full(const RootSystem& rs) {
    std::vector<WeylElement> out;
    for (const auto& w : enumerate_bigrassmannian(rs, true))
        if (orthogonality_holds(rs, w)) out.push_back(w);
    return out;
}

}  // namespace qnilp
