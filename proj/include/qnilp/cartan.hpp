// Root-system and Cartan data for the finite types A-G: simple roots,
// symmetric form normalized so short roots have squared length 2, positive
// roots, highest root and its largest coefficient, and the nonnegative
// integral combination test used by the straightening shortcuts.

#pragma once

#include "qnilp/qscalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnilp {

using RootVec = std::vector<int>;  // coordinates in the simple-root basis

struct LieType {
    char family = 'A';  // one of A,B,C,D,E,F,G
    int rank = 1;

    // Validates the (family, rank) combination. D3 is accepted and relabeled
    // to A3 (the two diagrams agree up to the standard relabeling).
    static LieType make(char family, int rank) {
        family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
        auto bad = [&] {
            throw std::invalid_argument(std::string("invalid Lie type ") + family + std::to_string(rank));
        };
        switch (family) {
            case 'A':
                if (rank < 1) bad();
                break;
            case 'B':
            case 'C':
                if (rank < 2) bad();
                break;
            case 'D':
                if (rank < 3) bad();
                if (rank == 3) return LieType{'A', 3};
                break;
            case 'E':
                if (rank < 6 || rank > 8) bad();
                break;
            case 'F':
                if (rank != 4) bad();
                break;
            case 'G':
                if (rank != 2) bad();
                break;
            default:
                bad();
        }
        return LieType{family, rank};
    }

    static LieType parse(const std::string& name) {
        if (name.size() < 2) throw std::invalid_argument("invalid Lie type '" + name + "'");
        return make(name[0], std::stoi(name.substr(1)));
    }

    std::string name() const { return std::string(1, family) + std::to_string(rank); }

    friend bool operator==(const LieType& a, const LieType& b) {
        return a.family == b.family && a.rank == b.rank;
    }
};

struct RootSystem {
    LieType type;
    int n = 0;                                // rank
    std::vector<std::vector<int>> cartan;     // c[i][j] = 2<a_i,a_j>/<a_i,a_i>, 0-based
    std::vector<int> d;                       // d_i = <a_i,a_i>/2 in {1,2,3}
    std::vector<std::vector<int>> form;       // <a_i,a_j> = d_i c[i][j]
    std::vector<RootVec> positive;            // positive[k-1] = coordinates of root k
    std::map<RootVec, int> root_index;        // coordinates -> index in 1..N
    RootVec theta;                            // highest root
    int cmax = 0;                             // max coordinate of theta
    std::vector<std::vector<int16_t>> sref;   // sref[i][k] = signed index of s_i(root k), k in 1..N

    int num_positive() const { return static_cast<int>(positive.size()); }

    const RootVec& root(int k) const { return positive[static_cast<std::size_t>(k - 1)]; }

    // Signed index of a coordinate vector, 0 when it is not a root.
    int index_of(const RootVec& v) const {
        auto it = root_index.find(v);
        if (it != root_index.end()) return it->second;
        RootVec neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        it = root_index.find(neg);
        if (it != root_index.end()) return -it->second;
        return 0;
    }

    bool is_root(const RootVec& v) const { return index_of(v) != 0; }

    int simple_index(int k) const {  // root index of alpha_k (simples come first)
        return k;
    }

    int height(int k) const {
        int h = 0;
        for (int c : root(k)) h += c;
        return h;
    }

    int pair_form(const RootVec& a, const RootVec& b) const {
        if (a.size() != static_cast<std::size_t>(n) || b.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("pairing: dimension mismatch");
        int s = 0;
        for (int i = 0; i < n; ++i) {
            if (a[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < n; ++j)
                s += a[static_cast<std::size_t>(i)] * form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                     b[static_cast<std::size_t>(j)];
        }
        return s;
    }

    Scalar q_form(const RootVec& a, const RootVec& b) const { return qpow(pair_form(a, b)); }
};

namespace detail {

// Symmetrized Cartan data per family, Humphreys-style labeling:
//   A_n, B_n, C_n: path 1-2-...-n (B_n: a_n short; C_n: a_n long)
//   D_n: path 1-...-(n-2) with both n-1 and n attached to n-2
//   E_n: chain 1-3-4-5-6(-7-8), node 2 attached to 4
//   F_4: path with a_1,a_2 long, a_3,a_4 short;  G_2: a_1 short, a_2 long
inline void diagram_data(const LieType& t, std::vector<int>& d, std::vector<std::pair<int, int>>& edges,
                         std::vector<int>& bond) {
    const int n = t.rank;
    d.assign(static_cast<std::size_t>(n), 1);
    edges.clear();
    bond.clear();
    auto path = [&](int from, int to) {
        for (int i = from; i < to; ++i) {
            edges.emplace_back(i, i + 1);
            bond.push_back(1);
        }
    };
    switch (t.family) {
        case 'A':
            path(1, n);
            break;
        case 'B':
            path(1, n);
            for (int i = 0; i < n - 1; ++i) d[static_cast<std::size_t>(i)] = 2;
            break;
        case 'C':
            path(1, n);
            d[static_cast<std::size_t>(n - 1)] = 2;
            break;
        case 'D':
            path(1, n - 2);
            edges.emplace_back(n - 2, n - 1);
            bond.push_back(1);
            edges.emplace_back(n - 2, n);
            bond.push_back(1);
            break;
        case 'E':
            edges = {{1, 3}, {3, 4}, {4, 5}, {2, 4}};
            for (int i = 5; i < n; ++i) edges.emplace_back(i, i + 1);
            bond.assign(edges.size(), 1);
            break;
        case 'F':
            path(1, 4);
            d[0] = d[1] = 2;
            break;
        case 'G':
            path(1, 2);
            d[1] = 3;
            break;
        default:
            throw std::logic_error("unreachable family");
    }
}

}  // namespace detail

inline RootSystem build_root_system(const LieType& type_in) {
    const LieType type = LieType::make(type_in.family, type_in.rank);
    RootSystem rs;
    rs.type = type;
    rs.n = type.rank;
    const int n = rs.n;

    std::vector<std::pair<int, int>> edges;
    std::vector<int> bond;
    detail::diagram_data(type, rs.d, edges, bond);

    // Symmetric form on simple roots. For an edge {i,j}: <a_i,a_j> = -max(d_i, d_j).
    rs.form.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) rs.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2 * rs.d[static_cast<std::size_t>(i)];
    for (const auto& [a, b] : edges) {
        const int v = -std::max(rs.d[static_cast<std::size_t>(a - 1)], rs.d[static_cast<std::size_t>(b - 1)]);
        rs.form[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = v;
        rs.form[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = v;
    }
    rs.cartan.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int num = 2 * rs.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const int den = rs.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            if (num % den != 0) throw std::logic_error("non-integral Cartan entry");
            rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num / den;
        }

    // Positive roots: close the simple roots under the simple reflections
    // s_i(v) = v - (sum_j c_ij v_j) a_i.
    std::set<RootVec> pos;
    std::vector<RootVec> frontier;
    for (int i = 0; i < n; ++i) {
        RootVec a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i)] = 1;
        pos.insert(a);
        frontier.push_back(a);
    }
    auto reflect = [&](int i, const RootVec& v) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
        RootVec r = v;
        r[static_cast<std::size_t>(i)] -= s;
        return r;
    };
    while (!frontier.empty()) {
        std::vector<RootVec> next;
        for (const auto& v : frontier)
            for (int i = 0; i < n; ++i) {
                RootVec r = reflect(i, v);
                bool nonneg = true;
                for (int c : r)
                    if (c < 0) nonneg = false;
                if (nonneg && pos.insert(r).second) next.push_back(r);
            }
        frontier = std::move(next);
    }

    // Order: height first, then reverse-lexicographic, so the simple roots
    // occupy indices 1..n in label order.
    rs.positive.assign(pos.begin(), pos.end());
    auto ht = [](const RootVec& v) {
        int h = 0;
        for (int c : v) h += c;
        return h;
    };
    std::sort(rs.positive.begin(), rs.positive.end(), [&](const RootVec& a, const RootVec& b) {
        const int ha = ht(a), hb = ht(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    for (std::size_t k = 0; k < rs.positive.size(); ++k) rs.root_index[rs.positive[k]] = static_cast<int>(k) + 1;

    rs.theta = rs.positive.back();
    rs.cmax = *std::max_element(rs.theta.begin(), rs.theta.end());

    const int N = rs.num_positive();
    rs.sref.assign(static_cast<std::size_t>(n), std::vector<int16_t>(static_cast<std::size_t>(N) + 1, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= N; ++k) {
            const int idx = rs.index_of(reflect(i, rs.root(k)));
            if (idx == 0) throw std::logic_error("reflection left the root set");
            rs.sref[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = static_cast<int16_t>(idx);
        }
    return rs;
}

inline int pairing(const RootSystem& rs, const RootVec& a, const RootVec& b) { return rs.pair_form(a, b); }

// True iff goal is a nonnegative integral combination of the given roots.
// Memoized depth-first search with coordinate-wise pruning; instances here
// are tiny, so completeness beats asymptotics.
inline bool nonneg_combination_exists(const std::vector<RootVec>& roots, const RootVec& goal) {
    for (int c : goal)
        if (c < 0) throw std::invalid_argument("nonneg_combination_exists: negative goal coordinate");
    std::set<std::pair<std::size_t, RootVec>> failed;

    auto all_zero = [](const RootVec& v) {
        return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
    };

    std::function<bool(std::size_t, const RootVec&)> go = [&](std::size_t idx, const RootVec& rem) -> bool {
        if (all_zero(rem)) return true;
        if (idx == roots.size()) return false;
        if (failed.count({idx, rem})) return false;
        const RootVec& r = roots[idx];
        // max multiple of r that fits under rem, coordinate-wise
        int bound = -1;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            if (r[i] == 0) continue;
            if (r[i] < 0) {
                bound = 0;
                break;
            }
            const int q = rem[i] / r[i];
            bound = bound < 0 ? q : std::min(bound, q);
        }
        if (bound < 0) bound = 0;  // zero vector in the list contributes nothing
        RootVec next = rem;
        for (int m = 0; m <= bound; ++m) {
            if (go(idx + 1, next)) return true;
            if (m < bound)
                for (std::size_t i = 0; i < next.size(); ++i) next[i] -= r[i];
        }
        failed.insert({idx, rem});
        return false;
    };
    return go(0, goal);
}

}  // namespace qnilp
