// Nested q-commutator trees over the Chevalley generators E_i, and the
// recursive expansion of T_w(E_j) (for w(alpha_j) > 0) as such a tree.
//
// The recursion follows the inductive construction case by case: when w s_j
// has a second right descent the problem is transported to a shorter element
// through the dihedral subgroup; otherwise the smallest right descent k of w
// is split off, with the bond <alpha_k^v, alpha_j> deciding the bracket
// pattern. The eight dihedral-of-order-6 configurations are closed-form.
// Tie-breaks (smallest p, smallest k) make the output deterministic.

#pragma once

#include "qnilp/freealg.hpp"
#include "qnilp/weyl.hpp"

#include <memory>
#include <optional>
#include <unordered_map>

namespace qnilp {

struct NestedExpr;
using NestedPtr = std::shared_ptr<const NestedExpr>;

// A leaf E_i or a bracket [left, right], with an overall nonzero scale.
// Expansions keep every inner scale equal to 1 and pull scalars to the root.
struct NestedExpr {
    Scalar scale = Scalar(1);
    int leaf = 0;  // generator index when > 0
    NestedPtr left, right;
    RootVec degree;

    bool is_leaf() const { return leaf > 0; }
};

inline NestedPtr make_leaf(const RootSystem& rs, int i) {
    auto e = std::make_shared<NestedExpr>();
    e->leaf = i;
    e->degree.assign(static_cast<std::size_t>(rs.n), 0);
    e->degree[static_cast<std::size_t>(i - 1)] = 1;
    return e;
}

inline NestedPtr make_bracket(NestedPtr l, NestedPtr r, Scalar scale = Scalar(1)) {
    auto e = std::make_shared<NestedExpr>();
    e->scale = std::move(scale) * l->scale * r->scale;
    e->degree.resize(l->degree.size());
    for (std::size_t i = 0; i < e->degree.size(); ++i) e->degree[i] = l->degree[i] + r->degree[i];
    if (!l->scale.is_one() || !r->scale.is_one()) {
        auto strip = [](const NestedPtr& p) {
            if (p->scale.is_one()) return p;
            auto q = std::make_shared<NestedExpr>(*p);
            q->scale = Scalar(1);
            return NestedPtr(q);
        };
        e->left = strip(l);
        e->right = strip(r);
    } else {
        e->left = std::move(l);
        e->right = std::move(r);
    }
    return e;
}

inline NestedPtr scaled(const NestedPtr& p, const Scalar& c) {
    if (c.is_one()) return p;
    auto q = std::make_shared<NestedExpr>(*p);
    q->scale = q->scale * c;
    return q;
}

// Left-nested chain [[..[E_{i1}, E_{i2}], ...], E_{im}].
inline NestedPtr nested_chain(const RootSystem& rs, const std::vector<int>& letters) {
    NestedPtr e = make_leaf(rs, letters.at(0));
    for (std::size_t k = 1; k < letters.size(); ++k) e = make_bracket(e, make_leaf(rs, letters[k]));
    return e;
}

// E[i1,...,im] for left-nested chains, explicit brackets otherwise.
inline std::string to_pretty(const NestedPtr& e, bool with_scale = true) {
    std::function<bool(const NestedExpr&, std::vector<int>&)> chain = [&](const NestedExpr& x, std::vector<int>& out) {
        if (x.is_leaf()) {
            out.push_back(x.leaf);
            return true;
        }
        if (!x.right->is_leaf()) return false;
        if (!chain(*x.left, out)) return false;
        out.push_back(x.right->leaf);
        return true;
    };
    std::function<std::string(const NestedExpr&)> go = [&](const NestedExpr& x) -> std::string {
        std::vector<int> letters;
        if (chain(x, letters)) {
            std::string s = "E[";
            for (std::size_t k = 0; k < letters.size(); ++k) {
                if (k) s += ",";
                s += std::to_string(letters[k]);
            }
            return s + "]";
        }
        return "[" + go(*x.left) + "," + go(*x.right) + "]";
    };
    std::string body = go(*e);
    if (with_scale && !e->scale.is_one()) return "(" + e->scale.to_string() + ")*" + body;
    return body;
}

inline FreeElement to_free(const RootSystem& rs, const NestedPtr& e) {
    std::function<FreeElement(const NestedExpr&)> go = [&](const NestedExpr& x) -> FreeElement {
        FreeElement r = x.is_leaf() ? FreeElement::generator(x.leaf) : q_commutator(rs, go(*x.left), go(*x.right));
        return x.scale.is_one() ? r : x.scale * r;
    };
    return go(*e);
}

// w(alpha_j) = alpha_k for some simple k: T_w(E_j) = E_k.
inline std::optional<int> jantzen_shortcut(const RootSystem& rs, const WeylElement& w, int j) {
    const int im = w.image(j);
    if (im >= 1 && im <= rs.n) return im;
    return std::nullopt;
}

namespace detail {

struct ExpandKey {
    std::uint64_t wkey;
    int j;
    bool operator==(const ExpandKey& o) const { return wkey == o.wkey && j == o.j; }
};
struct ExpandKeyHash {
    std::size_t operator()(const ExpandKey& k) const {
        return std::hash<std::uint64_t>()(k.wkey * 31 + static_cast<std::uint64_t>(k.j));
    }
};

using ExpandCache = std::unordered_map<ExpandKey, NestedPtr, ExpandKeyHash>;

inline NestedPtr expand_rec(const RootSystem& rs, const WeylElement& w, int j, ExpandCache& cache);

// The four order-6 dihedral configurations, both orientations.
inline NestedPtr expand_dihedral6(const RootSystem& rs, const WeylElement& w, int j, int k) {
    const Scalar inv2 = qint(2).inverse();
    const Scalar inv6 = qfact(3).inverse();
    auto E = [&](std::initializer_list<int> ls) { return nested_chain(rs, std::vector<int>(ls)); };
    const WeylElement sk = simple_reflection(rs, k);
    const WeylElement sj = simple_reflection(rs, j);
    const int ckj = rs.cartan[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
    if (ckj == -1) {
        // alpha_k long, alpha_j short
        if (w == sk) return E({k, j});
        if (w == sj * sk) return make_bracket(E({j}), E({j, k}), inv2);
        if (w == sk * sj * sk) return scaled(E({k, j, j}), inv2);
        if (w == sj * sk * sj * sk) return E({j, k});
    } else {
        // alpha_k short, alpha_j long
        if (w == sk) return make_bracket(E({k}), make_bracket(E({k}), E({k, j})), inv6);
        if (w == sj * sk) return make_bracket(E({j, k}), E({j, k, k}), inv6);
        if (w == sk * sj * sk) return make_bracket(make_bracket(E({k}), E({k, j})), E({k, j}), inv6);
        if (w == sj * sk * sj * sk) return scaled(E({j, k, k, k}), inv6);
    }
    throw std::logic_error("expand: unexpected dihedral-of-order-6 configuration");
}

inline NestedPtr expand_rec(const RootSystem& rs, const WeylElement& w, int j, ExpandCache& cache) {
    if (auto k = jantzen_shortcut(rs, w, j)) return make_leaf(rs, *k);
    if (w.image(j) < 0) throw std::invalid_argument("expand: w(alpha_j) must be positive");

    const ExpandKey key{w.key(), j};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const WeylElement wsj = w.mul_simple_right(j);
    // is j' a right descent of w s_j besides j itself?
    int p = 0;
    for (int t = 1; t <= rs.n; ++t)
        if (t != j && wsj.right_descent(t)) {
            p = t;
            break;
        }
    NestedPtr out;
    if (p != 0) {
        // second right descent of w s_j: pass through the dihedral subgroup
        const WeylElement u = w0ab(rs, j, p);
        const int k = u.mul_simple_right(j).image(j);  // u s_j (alpha_j) is simple
        if (k < 1 || k > rs.n) throw std::logic_error("expand: dihedral image is not simple");
        out = expand_rec(rs, wsj * u, k, cache);
    } else {
        // the only right descent of w s_j is j; split off the smallest right
        // descent k of w
        int k = 0;
        for (int t = 1; t <= rs.n; ++t)
            if (w.right_descent(t)) {
                k = t;
                break;
            }
        if (k == 0) throw std::logic_error("expand: element of positive length without right descent");
        const int ckj = rs.cartan[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
        const WeylElement wsk = w.mul_simple_right(k);
        switch (ckj) {
            case -1: {
                if (!wsk.right_descent(j)) {
                    out = make_bracket(expand_rec(rs, wsk, k, cache), expand_rec(rs, wsk, j, cache));
                } else {
                    const int order = dihedral_order(rs, j, k);
                    if (order == 4) {
                        const WeylElement v = wsk.mul_simple_right(j);
                        out = make_bracket(expand_rec(rs, v, j, cache), expand_rec(rs, v, k, cache));
                    } else {  // order 6
                        out = expand_dihedral6(rs, w, j, k);
                    }
                }
                break;
            }
            case -2: {
                const Scalar inv2 = qint(2).inverse();
                if (!wsk.right_descent(j)) {
                    NestedPtr xk = expand_rec(rs, wsk, k, cache);
                    out = make_bracket(xk, make_bracket(xk, expand_rec(rs, wsk, j, cache)), inv2);
                } else {
                    const WeylElement v = wsk.mul_simple_right(j);
                    NestedPtr xk = expand_rec(rs, v, k, cache);
                    out = make_bracket(make_bracket(expand_rec(rs, v, j, cache), xk), xk, inv2);
                }
                break;
            }
            case -3:
                out = expand_dihedral6(rs, w, j, k);
                break;
            default:
                throw std::logic_error("expand: smallest right descent is orthogonal to j");
        }
    }
    if (out->degree != w.act([&] {
            RootVec a(static_cast<std::size_t>(rs.n), 0);
            a[static_cast<std::size_t>(j - 1)] = 1;
            return a;
        }()))
        throw std::logic_error("expand: degree mismatch");
    cache.emplace(key, out);
    return out;
}

}  // namespace detail

// Nested q-commutator expression for T_w(E_j); requires w(alpha_j) > 0.
inline NestedPtr lusztig_expand(const RootSystem& rs, const WeylElement& w, int j) {
    detail::ExpandCache cache;
    return detail::expand_rec(rs, w, j, cache);
}

inline std::string shape_key(const NestedPtr& e) {
    if (e->is_leaf()) return std::to_string(e->leaf);
    return "(" + shape_key(e->left) + " " + shape_key(e->right) + ")";
}

namespace detail {

inline void collect_letters(const NestedPtr& e, std::vector<int>& out) {
    if (e->is_leaf())
        out.push_back(e->leaf);
    else {
        collect_letters(e->left, out);
        collect_letters(e->right, out);
    }
}

inline bool letters_orthogonal(const RootSystem& rs, const NestedPtr& a, const NestedPtr& b) {
    std::vector<int> la, lb;
    collect_letters(a, la);
    collect_letters(b, lb);
    for (int x : la)
        for (int y : lb)
            if (rs.form[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)] != 0) return false;
    return true;
}

}  // namespace detail

// Value-preserving normal form used only for structural matching of trees:
// when the letters of x and z pairwise commute ([x, z] = 0 and the q-exponent
// vanishes), [x, [y, z]] = [[x, y], z], and right factors of a left-nested
// chain can be swapped. Normalizes toward left-nested chains with commuting
// tail factors sorted by shape key.
inline NestedPtr normalize_tree(const RootSystem& rs, const NestedPtr& e_in) {
    if (e_in->is_leaf()) return e_in;
    NestedPtr l = normalize_tree(rs, e_in->left);
    NestedPtr r = normalize_tree(rs, e_in->right);
    const Scalar scale = e_in->scale;
    // [x, [y, z]] -> [[x, y], z] when x and z commute letterwise
    while (!r->is_leaf() && detail::letters_orthogonal(rs, l, r->right)) {
        NestedPtr z = r->right;
        l = normalize_tree(rs, make_bracket(l, r->left));
        r = z;
    }
    // flatten the maximal left-nested chain and bubble-sort adjacent factors
    // that commute letterwise
    NestedPtr head = l;
    std::vector<NestedPtr> tail = {r};
    while (!head->is_leaf()) {
        tail.push_back(head->right);
        head = head->left;
    }
    std::reverse(tail.begin(), tail.end());
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = 0; k + 1 < tail.size(); ++k)
            if (detail::letters_orthogonal(rs, tail[k], tail[k + 1]) && shape_key(tail[k + 1]) < shape_key(tail[k])) {
                std::swap(tail[k], tail[k + 1]);
                changed = true;
            }
    }
    NestedPtr out = head;
    for (const auto& f : tail) out = make_bracket(out, f);
    return scaled(out, scale);
}

}  // namespace qnilp
