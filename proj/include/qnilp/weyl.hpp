// Weyl group elements, reduced words, descents, weak Bruhat orders,
// signed-permutation realizations for the classical types, bigrassmannian
// elements (block form, enumeration by pruned BFS), and decoding of
// reflection-product encodings relative to a fixed longest-element word.
//
// Elements are stored as the signed permutation they induce on the positive
// roots, together with the inverse permutation. Equality and hashing use the
// images of the simple roots, which determine the element; the matrix with
// those images as columns is available via matrix().

#pragma once

#include "qnilp/cartan.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace qnilp {

using Word = std::vector<int>;  // letters in 1..n

class WeylElement {
public:
    WeylElement() = default;

    static WeylElement identity(const RootSystem& rs) {
        WeylElement w;
        w.rs_ = &rs;
        const int N = rs.num_positive();
        w.perm_.resize(static_cast<std::size_t>(N) + 1);
        std::iota(w.perm_.begin(), w.perm_.end(), static_cast<int16_t>(0));
        w.iperm_ = w.perm_;
        w.len_ = 0;
        return w;
    }

    static WeylElement from_tables(const RootSystem& rs, std::vector<int16_t> perm, std::vector<int16_t> iperm) {
        WeylElement w;
        w.rs_ = &rs;
        w.perm_ = std::move(perm);
        w.iperm_ = std::move(iperm);
        return w;
    }

    const RootSystem& root_system() const { return *rs_; }

    // signed root index of w(root k), k in 1..N
    int image(int k) const { return perm_[static_cast<std::size_t>(k)]; }
    int image_inv(int k) const { return iperm_[static_cast<std::size_t>(k)]; }

    RootVec act(const RootVec& v) const {
        const int n = rs_->n;
        if (v.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("act: dimension mismatch");
        RootVec out(static_cast<std::size_t>(n), 0);
        for (int j = 1; j <= n; ++j) {
            const int c = v[static_cast<std::size_t>(j - 1)];
            if (c == 0) continue;
            const int im = image(j);
            const RootVec& r = rs_->root(std::abs(im));
            const int sgn = im > 0 ? 1 : -1;
            for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += sgn * c * r[static_cast<std::size_t>(i)];
        }
        return out;
    }

    // columns = images of the simple roots, in simple-root coordinates
    std::vector<RootVec> matrix() const {
        std::vector<RootVec> cols;
        cols.reserve(static_cast<std::size_t>(rs_->n));
        for (int j = 1; j <= rs_->n; ++j) {
            const int im = image(j);
            RootVec c = rs_->root(std::abs(im));
            if (im < 0)
                for (int& x : c) x = -x;
            cols.push_back(std::move(c));
        }
        return cols;
    }

    int length() const {
        if (len_ < 0) {
            int l = 0;
            for (int k = 1; k <= rs_->num_positive(); ++k)
                if (perm_[static_cast<std::size_t>(k)] < 0) ++l;
            len_ = l;
        }
        return len_;
    }

    bool is_identity() const { return length() == 0; }

    bool right_descent(int j) const { return image(j) < 0; }
    bool left_descent(int i) const { return image_inv(i) < 0; }

    std::vector<int> right_descents() const {
        std::vector<int> out;
        for (int j = 1; j <= rs_->n; ++j)
            if (right_descent(j)) out.push_back(j);
        return out;
    }
    std::vector<int> left_descents() const {
        std::vector<int> out;
        for (int i = 1; i <= rs_->n; ++i)
            if (left_descent(i)) out.push_back(i);
        return out;
    }

    WeylElement inverse() const {
        WeylElement w = *this;
        std::swap(w.perm_, w.iperm_);
        w.len_ = len_;
        return w;
    }

    // 8-byte key from the images of the simple roots; determines the element.
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (int j = 1; j <= rs_->n; ++j)
            k = (k << 8) | static_cast<std::uint8_t>(static_cast<std::int8_t>(perm_[static_cast<std::size_t>(j)]));
        return k;
    }

    friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.key() == b.key(); }
    friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
    friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.key() < b.key(); }

    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        WeylElement c;
        c.rs_ = a.rs_;
        const std::size_t N1 = a.perm_.size();
        c.perm_.resize(N1);
        c.iperm_.resize(N1);
        for (std::size_t k = 1; k < N1; ++k) {
            const int bp = b.perm_[k];
            c.perm_[k] = bp > 0 ? a.perm_[static_cast<std::size_t>(bp)]
                                : static_cast<int16_t>(-a.perm_[static_cast<std::size_t>(-bp)]);
            const int ia = a.iperm_[k];
            c.iperm_[k] = ia > 0 ? b.iperm_[static_cast<std::size_t>(ia)]
                                 : static_cast<int16_t>(-b.iperm_[static_cast<std::size_t>(-ia)]);
        }
        return c;
    }

    WeylElement mul_simple_left(int i) const {  // s_i * w
        WeylElement c;
        c.rs_ = rs_;
        const auto& t = rs_->sref[static_cast<std::size_t>(i - 1)];
        const std::size_t N1 = perm_.size();
        c.perm_.resize(N1);
        c.iperm_.resize(N1);
        for (std::size_t k = 1; k < N1; ++k) {
            const int p = perm_[k];
            c.perm_[k] = p > 0 ? t[static_cast<std::size_t>(p)] : static_cast<int16_t>(-t[static_cast<std::size_t>(-p)]);
            const int q = t[k];
            c.iperm_[k] = q > 0 ? iperm_[static_cast<std::size_t>(q)] : static_cast<int16_t>(-iperm_[static_cast<std::size_t>(-q)]);
        }
        if (len_ >= 0) c.len_ = len_ + (left_descent(i) ? -1 : 1);
        return c;
    }

    WeylElement mul_simple_right(int j) const {  // w * s_j
        WeylElement c;
        c.rs_ = rs_;
        const auto& t = rs_->sref[static_cast<std::size_t>(j - 1)];
        const std::size_t N1 = perm_.size();
        c.perm_.resize(N1);
        c.iperm_.resize(N1);
        for (std::size_t k = 1; k < N1; ++k) {
            const int q = t[k];
            c.perm_[k] = q > 0 ? perm_[static_cast<std::size_t>(q)] : static_cast<int16_t>(-perm_[static_cast<std::size_t>(-q)]);
            const int p = iperm_[k];
            c.iperm_[k] = p > 0 ? t[static_cast<std::size_t>(p)] : static_cast<int16_t>(-t[static_cast<std::size_t>(-p)]);
        }
        if (len_ >= 0) c.len_ = len_ + (right_descent(j) ? -1 : 1);
        return c;
    }

private:
    const RootSystem* rs_ = nullptr;
    std::vector<int16_t> perm_;   // index 1..N used; [0] unused
    std::vector<int16_t> iperm_;
    mutable int len_ = -1;
};

struct WeylHash {
    std::size_t operator()(const WeylElement& w) const {
        std::uint64_t k = w.key();
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

inline WeylElement simple_reflection(const RootSystem& rs, int i) {
    if (i < 1 || i > rs.n) throw std::invalid_argument("simple_reflection: index out of range");
    return WeylElement::identity(rs).mul_simple_left(i);
}

inline WeylElement from_word(const RootSystem& rs, const Word& word) {
    WeylElement w = WeylElement::identity(rs);
    for (int i : word) {
        if (i < 1 || i > rs.n) throw std::invalid_argument("from_word: letter out of range");
        w = w.mul_simple_right(i);
    }
    return w;
}

inline int length(const WeylElement& w) { return w.length(); }

inline bool is_reduced(const RootSystem& rs, const Word& word) {
    return from_word(rs, word).length() == static_cast<int>(word.size());
}

// Canonical word: repeatedly strip the smallest left descent.
inline Word reduced_word(const WeylElement& w_in) {
    Word out;
    WeylElement w = w_in;
    while (!w.is_identity()) {
        int i = 0;
        for (int k = 1; k <= w.root_system().n; ++k)
            if (w.left_descent(k)) {
                i = k;
                break;
            }
        out.push_back(i);
        w = w.mul_simple_left(i);
    }
    return out;
}

inline bool leq_L(const WeylElement& v, const WeylElement& w) {
    return v.length() + (w * v.inverse()).length() == w.length();
}

inline bool leq_R(const WeylElement& v, const WeylElement& w) {
    return v.length() + (v.inverse() * w).length() == w.length();
}

inline WeylElement longest_element(const RootSystem& rs) {
    WeylElement w = WeylElement::identity(rs);
    for (;;) {
        int i = 0;
        for (int k = 1; k <= rs.n; ++k)
            if (!w.right_descent(k)) {
                i = k;
                break;
            }
        if (i == 0) return w;
        w = w.mul_simple_right(i);
    }
}

inline int dihedral_order(const RootSystem& rs, int a, int b) {
    const int m = rs.cartan[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] *
                  rs.cartan[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)];
    switch (m) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: throw std::logic_error("unexpected bond multiplicity");
    }
}

// Longest element of the subgroup generated by s_a and s_b.
inline WeylElement w0ab(const RootSystem& rs, int a, int b) {
    if (a == b) throw std::invalid_argument("w0ab: indices must differ");
    const int m = dihedral_order(rs, a, b);
    WeylElement w = WeylElement::identity(rs);
    for (int k = 0; k < m; ++k) w = w.mul_simple_right(k % 2 == 0 ? a : b);
    return w;
}

// beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) for a reduced word.
inline std::vector<RootVec> radical_roots(const RootSystem& rs, const Word& word) {
    if (!is_reduced(rs, word)) throw std::invalid_argument("radical_roots: word is not reduced");
    std::vector<RootVec> betas;
    betas.reserve(word.size());
    WeylElement w = WeylElement::identity(rs);
    for (int i : word) {
        RootVec a(static_cast<std::size_t>(rs.n), 0);
        a[static_cast<std::size_t>(i - 1)] = 1;
        betas.push_back(w.act(a));
        w = w.mul_simple_right(i);
    }
    return betas;
}

inline std::vector<int> support(const WeylElement& w) {
    std::vector<char> seen(static_cast<std::size_t>(w.root_system().n) + 1, 0);
    for (int i : reduced_word(w)) seen[static_cast<std::size_t>(i)] = 1;
    std::vector<int> out;
    for (int i = 1; i <= w.root_system().n; ++i)
        if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

// ---- subdiagram classification ---------------------------------------------

// Identifies the Lie type of a connected induced subdiagram and a relabeling
// sigma: indices -> 1..r preserving <a_i, a_j^v>. Among all valid relabelings
// the lexicographically smallest assignment (scanning families A,B,C,D,E,F,G)
// is returned.
struct SubdiagramType {
    LieType type;
    std::map<int, int> sigma;  // ambient index -> 1..r
};

inline SubdiagramType subdiagram_type(const RootSystem& rs, const std::vector<int>& indices) {
    const int r = static_cast<int>(indices.size());
    if (r == 0) throw std::invalid_argument("subdiagram_type: empty index set");
    // connectivity
    {
        std::set<int> todo(indices.begin(), indices.end());
        std::vector<int> stack = {indices[0]};
        todo.erase(indices[0]);
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (auto it = todo.begin(); it != todo.end();) {
                if (rs.cartan[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(*it - 1)] != 0) {
                    stack.push_back(*it);
                    it = todo.erase(it);
                } else {
                    ++it;
                }
            }
        }
        if (!todo.empty()) throw std::invalid_argument("subdiagram_type: index set is disconnected");
    }

    static const std::array<char, 7> families = {'A', 'B', 'C', 'D', 'E', 'F', 'G'};
    for (char fam : families) {
        LieType cand;
        try {
            cand = LieType::make(fam, r);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (cand.family != fam) continue;  // skip the D3 alias; A3 is found first anyway
        const RootSystem target = build_root_system(cand);
        std::vector<int> perm(static_cast<std::size_t>(r));
        std::iota(perm.begin(), perm.end(), 0);
        // lexicographically smallest sigma: try assignments in order
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (int a = 0; a < r && ok; ++a)
                for (int b = 0; b < r && ok; ++b) {
                    const int lhs = rs.cartan[static_cast<std::size_t>(indices[static_cast<std::size_t>(a)] - 1)]
                                             [static_cast<std::size_t>(indices[static_cast<std::size_t>(b)] - 1)];
                    const int rhs = target.cartan[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])]
                                                 [static_cast<std::size_t>(perm[static_cast<std::size_t>(b)])];
                    if (lhs != rhs) ok = false;
                }
            if (ok) {
                SubdiagramType out;
                out.type = cand;
                for (int a = 0; a < r; ++a) out.sigma[indices[static_cast<std::size_t>(a)]] = perm[static_cast<std::size_t>(a)] + 1;
                return out;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    throw std::logic_error("subdiagram_type: no matching finite type");
}

// ---- signed permutations and bigrassmannian block matrices (types A-D) -----

struct SignedPermutation {
    std::vector<int> oneline;  // w(e_j) = sign * e_|entry|
};

namespace detail {

// epsilon-coordinates of a simple-root coordinate vector
inline std::vector<int> simple_to_eps(const RootSystem& rs, const RootVec& c) {
    const int n = rs.n;
    switch (rs.type.family) {
        case 'A': {
            std::vector<int> v(static_cast<std::size_t>(n) + 1, 0);
            for (int i = 0; i <= n; ++i) {
                const int ci = i < n ? c[static_cast<std::size_t>(i)] : 0;
                const int cim1 = i > 0 ? c[static_cast<std::size_t>(i - 1)] : 0;
                v[static_cast<std::size_t>(i)] = ci - cim1;
            }
            return v;
        }
        case 'B': {
            std::vector<int> v(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i)
                v[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - (i > 0 ? c[static_cast<std::size_t>(i - 1)] : 0);
            return v;
        }
        case 'C': {
            std::vector<int> v(static_cast<std::size_t>(n), 0);
            for (int i = 0; i + 1 < n; ++i)
                v[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - (i > 0 ? c[static_cast<std::size_t>(i - 1)] : 0);
            v[static_cast<std::size_t>(n - 1)] = 2 * c[static_cast<std::size_t>(n - 1)] - (n > 1 ? c[static_cast<std::size_t>(n - 2)] : 0);
            return v;
        }
        case 'D': {
            std::vector<int> v(static_cast<std::size_t>(n), 0);
            for (int i = 0; i + 2 < n; ++i)
                v[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] - (i > 0 ? c[static_cast<std::size_t>(i - 1)] : 0);
            const int cn2 = n > 2 ? c[static_cast<std::size_t>(n - 3)] : 0;
            v[static_cast<std::size_t>(n - 2)] = c[static_cast<std::size_t>(n - 2)] + c[static_cast<std::size_t>(n - 1)] - cn2;
            v[static_cast<std::size_t>(n - 1)] = c[static_cast<std::size_t>(n - 1)] - c[static_cast<std::size_t>(n - 2)];
            return v;
        }
        default:
            throw std::invalid_argument("epsilon coordinates only exist for types A-D");
    }
}

inline RootVec eps_to_simple(const RootSystem& rs, const std::vector<int>& v) {
    const int n = rs.n;
    RootVec c(static_cast<std::size_t>(n), 0);
    auto psum = [&](int i) {  // v_1 + ... + v_i
        int s = 0;
        for (int k = 0; k < i; ++k) s += v[static_cast<std::size_t>(k)];
        return s;
    };
    switch (rs.type.family) {
        case 'A':
            for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = psum(i);
            return c;
        case 'B':
            for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = psum(i);
            return c;
        case 'C': {
            for (int i = 1; i < n; ++i) c[static_cast<std::size_t>(i - 1)] = psum(i);
            const int s = psum(n);
            if (s % 2 != 0) throw std::invalid_argument("not in the type C root lattice");
            c[static_cast<std::size_t>(n - 1)] = s / 2;
            return c;
        }
        case 'D': {
            for (int i = 1; i <= n - 2; ++i) c[static_cast<std::size_t>(i - 1)] = psum(i);
            const int s = psum(n - 1);
            const int vn = v[static_cast<std::size_t>(n - 1)];
            if ((s - vn) % 2 != 0 || (s + vn) % 2 != 0) throw std::invalid_argument("not in the type D root lattice");
            c[static_cast<std::size_t>(n - 2)] = (s - vn) / 2;
            c[static_cast<std::size_t>(n - 1)] = (s + vn) / 2;
            return c;
        }
        default:
            throw std::invalid_argument("epsilon coordinates only exist for types A-D");
    }
}

inline int eps_dim(const RootSystem& rs) { return rs.type.family == 'A' ? rs.n + 1 : rs.n; }

// simple root alpha_i in epsilon coordinates
inline std::vector<int> simple_root_eps(const RootSystem& rs, int i) {
    RootVec a(static_cast<std::size_t>(rs.n), 0);
    a[static_cast<std::size_t>(i - 1)] = 1;
    return simple_to_eps(rs, a);
}

}  // namespace detail

inline SignedPermutation to_signed_permutation(const RootSystem& rs, const WeylElement& w) {
    const int m = detail::eps_dim(rs);
    SignedPermutation sp;
    sp.oneline.assign(static_cast<std::size_t>(m), 0);
    // Recover w(e_j) from the epsilon coordinates of the images of the simple
    // roots: back-substitution for B/C/D, and for type A (where only the
    // differences e_j - e_{j+1} lie in the root lattice) by fixing w(e_1).
    const int n = rs.n;
    std::vector<std::vector<int>> img;  // eps images of alpha_1..alpha_n
    img.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        RootVec a(static_cast<std::size_t>(n), 0);
        a[static_cast<std::size_t>(i - 1)] = 1;
        img.push_back(detail::simple_to_eps(rs, w.act(a)));
    }
    if (rs.type.family == 'A') {
        // w(e_{j+1}) = w(e_j) - w(alpha_j); exactly one choice of w(e_1)
        // makes every image a standard basis vector.
        std::vector<std::vector<int>> diff(static_cast<std::size_t>(m - 1));
        for (int j = 0; j + 1 < m; ++j) diff[static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(j)];
        for (int cand = 0; cand < m; ++cand) {
            std::vector<int> cur(static_cast<std::size_t>(m), 0);
            cur[static_cast<std::size_t>(cand)] = 1;
            std::vector<int> oneline(static_cast<std::size_t>(m), 0);
            std::vector<char> used(static_cast<std::size_t>(m), 0);
            bool ok = true;
            for (int j = 0; j < m && ok; ++j) {
                int idx = -1;
                for (int k = 0; k < m; ++k) {
                    if (cur[static_cast<std::size_t>(k)] == 1) {
                        if (idx >= 0) ok = false;
                        idx = k;
                    } else if (cur[static_cast<std::size_t>(k)] != 0) {
                        ok = false;
                    }
                }
                if (!ok || idx < 0 || used[static_cast<std::size_t>(idx)]) {
                    ok = false;
                    break;
                }
                used[static_cast<std::size_t>(idx)] = 1;
                oneline[static_cast<std::size_t>(j)] = idx + 1;
                if (j + 1 < m)
                    for (int k = 0; k < m; ++k) cur[static_cast<std::size_t>(k)] -= diff[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            }
            if (ok) {
                sp.oneline = std::move(oneline);
                return sp;
            }
        }
        throw std::logic_error("to_signed_permutation: no consistent type A permutation");
    }
    // B/C/D: back-substitute e_j = alpha_j + e_{j+1} (and the tail relations
    // specific to each family) starting from e_n.
    std::vector<std::vector<int>> e_img(static_cast<std::size_t>(m));
    if (rs.type.family == 'B') {
        // e_n = alpha_n
        e_img[static_cast<std::size_t>(m - 1)] = img[static_cast<std::size_t>(n - 1)];
        for (int j = m - 2; j >= 0; --j) {
            e_img[static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(j)];
            for (int k = 0; k < m; ++k) e_img[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] += e_img[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(k)];
        }
    } else if (rs.type.family == 'C') {
        // 2 e_n = alpha_n
        e_img[static_cast<std::size_t>(m - 1)].assign(static_cast<std::size_t>(m), 0);
        for (int k = 0; k < m; ++k) {
            const int v = img[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
            if (v % 2 != 0) throw std::logic_error("to_signed_permutation: odd type C image");
            e_img[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k)] = v / 2;
        }
        for (int j = m - 2; j >= 0; --j) {
            e_img[static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(j)];
            for (int k = 0; k < m; ++k) e_img[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] += e_img[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(k)];
        }
    } else {  // D
        // alpha_{n-1} = e_{n-1} - e_n, alpha_n = e_{n-1} + e_n
        e_img[static_cast<std::size_t>(m - 1)].assign(static_cast<std::size_t>(m), 0);
        e_img[static_cast<std::size_t>(m - 2)].assign(static_cast<std::size_t>(m), 0);
        for (int k = 0; k < m; ++k) {
            const int a = img[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(k)];
            const int b = img[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
            if ((a + b) % 2 != 0 || (b - a) % 2 != 0) throw std::logic_error("to_signed_permutation: bad type D image");
            e_img[static_cast<std::size_t>(m - 2)][static_cast<std::size_t>(k)] = (a + b) / 2;
            e_img[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k)] = (b - a) / 2;
        }
        for (int j = m - 3; j >= 0; --j) {
            e_img[static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(j)];
            for (int k = 0; k < m; ++k) e_img[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] += e_img[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(k)];
        }
    }
    for (int j = 0; j < m; ++j) {
        int idx = 0;
        for (int k = 0; k < m; ++k) {
            const int v = e_img[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (v == 0) continue;
            if (idx != 0 || (v != 1 && v != -1)) throw std::logic_error("to_signed_permutation: not a signed basis vector");
            idx = v > 0 ? k + 1 : -(k + 1);
        }
        if (idx == 0) throw std::logic_error("to_signed_permutation: zero image");
        sp.oneline[static_cast<std::size_t>(j)] = idx;
    }
    return sp;
}

inline WeylElement from_signed_permutation(const RootSystem& rs, const SignedPermutation& sp) {
    const int m = detail::eps_dim(rs);
    if (static_cast<int>(sp.oneline.size()) != m) throw std::invalid_argument("from_signed_permutation: size mismatch");
    {
        std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
        int negs = 0;
        for (int e : sp.oneline) {
            const int a = std::abs(e);
            if (a < 1 || a > m || used[static_cast<std::size_t>(a)])
                throw std::invalid_argument("from_signed_permutation: not a signed permutation");
            used[static_cast<std::size_t>(a)] = 1;
            if (e < 0) ++negs;
        }
        if (rs.type.family == 'A' && negs > 0)
            throw std::invalid_argument("from_signed_permutation: type A entries must be positive");
        if (rs.type.family == 'D' && negs % 2 != 0)
            throw std::invalid_argument("from_signed_permutation: type D needs an even number of sign changes");
    }
    auto apply_eps = [&](const std::vector<int>& v) {
        std::vector<int> out(static_cast<std::size_t>(m), 0);
        for (int j = 0; j < m; ++j) {
            const int e = sp.oneline[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(std::abs(e) - 1)] += (e > 0 ? 1 : -1) * v[static_cast<std::size_t>(j)];
        }
        return out;
    };
    // The images of the positive roots determine the permutation tables.
    const int N = rs.num_positive();
    std::vector<int16_t> perm(static_cast<std::size_t>(N) + 1, 0), iperm(static_cast<std::size_t>(N) + 1, 0);
    for (int k = 1; k <= N; ++k) {
        const auto eps = detail::simple_to_eps(rs, rs.root(k));
        const int idx = rs.index_of(detail::eps_to_simple(rs, apply_eps(eps)));
        if (idx == 0) throw std::invalid_argument("from_signed_permutation: image is not a root");
        perm[static_cast<std::size_t>(k)] = static_cast<int16_t>(idx);
        iperm[static_cast<std::size_t>(std::abs(idx))] = static_cast<int16_t>(idx > 0 ? k : -k);
    }
    return WeylElement::from_tables(rs, std::move(perm), std::move(iperm));
}

struct BigrassmannianParams {
    int l = 0, i = 0, j = 0, k = 0, m = 0;
    int sign = 0;  // 0 none, +1 or -1 for type D
};

// Block matrix element w_{l,i,j,k,m} (types A/B/C/D; type D applies the
// diagonal dressing determined by the sign).
inline WeylElement build_bigrassmannian(const RootSystem& rs, const BigrassmannianParams& p) {
    const char fam = rs.type.family;
    if (fam != 'A' && fam != 'B' && fam != 'C' && fam != 'D')
        throw std::invalid_argument("build_bigrassmannian: classical types only");
    const int m = detail::eps_dim(rs);
    if (p.l < 0 || p.i < 0 || p.j < 0 || p.k < 0 || p.m < 0 || p.l + p.i + p.j + p.k + p.m != m)
        throw std::invalid_argument("build_bigrassmannian: parameters must be nonnegative and sum to " + std::to_string(m));
    if (fam == 'A' && p.j != 0) throw std::invalid_argument("build_bigrassmannian: type A requires j = 0");
    if (fam != 'D' && p.sign != 0) throw std::invalid_argument("build_bigrassmannian: sign only applies in type D");

    // columns of the block matrix: w(e_col) = sign * e_row
    std::vector<int> oneline(static_cast<std::size_t>(m), 0);
    int col = 0;
    for (int t = 0; t < p.l; ++t, ++col) oneline[static_cast<std::size_t>(col)] = col + 1;
    for (int t = 0; t < p.i; ++t, ++col) oneline[static_cast<std::size_t>(col)] = p.l + p.j + p.k + t + 1;
    for (int t = 0; t < p.j; ++t, ++col) oneline[static_cast<std::size_t>(col)] = -(p.l + p.j + p.k - t);
    for (int t = 0; t < p.k; ++t, ++col) oneline[static_cast<std::size_t>(col)] = p.l + t + 1;
    for (int t = 0; t < p.m; ++t, ++col) oneline[static_cast<std::size_t>(col)] = col + 1;

    if (fam == 'D') {
        const int sgn = p.sign == 0 ? +1 : p.sign;
        // w^± = diag(±1) * w * diag(±(-1)^j): scale the e_n column entries and
        // negate the row-n entry.
        const int right = sgn * ((p.j % 2 == 0) ? 1 : -1);
        if (right < 0) oneline[static_cast<std::size_t>(m - 1)] = -oneline[static_cast<std::size_t>(m - 1)];
        if (sgn < 0)
            for (auto& e : oneline)
                if (std::abs(e) == m) e = -e;
        int negs = 0;
        for (int e : oneline)
            if (e < 0) ++negs;
        if (negs % 2 != 0) throw std::invalid_argument("build_bigrassmannian: not in the type D Weyl group");
    }
    return from_signed_permutation(rs, SignedPermutation{std::move(oneline)});
}

inline bool is_bigrassmannian(const WeylElement& w) {
    return w.left_descents().size() == 1 && w.right_descents().size() == 1;
}

// Breadth-first search of (W, <=_L) from the identity, pruning every node
// with more than one right descent (their whole up-set is ineligible).
inline std::vector<WeylElement> enumerate_bigrassmannian(const RootSystem& rs, bool full_support) {
    std::vector<WeylElement> out;
    std::unordered_set<std::uint64_t> seen;
    std::queue<WeylElement> frontier;
    WeylElement id = WeylElement::identity(rs);
    seen.insert(id.key());
    frontier.push(id);
    while (!frontier.empty()) {
        WeylElement w = frontier.front();
        frontier.pop();
        int rdesc = 0;
        for (int j = 1; j <= rs.n; ++j)
            if (w.right_descent(j)) ++rdesc;
        if (rdesc == 1 && w.left_descents().size() == 1) {
            if (!full_support || static_cast<int>(support(w).size()) == rs.n) out.push_back(w);
        }
        if (rdesc > 1) continue;
        for (int i = 1; i <= rs.n; ++i) {
            if (w.left_descent(i)) continue;
            WeylElement up = w.mul_simple_left(i);
            if (seen.insert(up.key()).second) frontier.push(up);
        }
    }
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.key() < b.key();
    });
    return out;
}

// rho_k = prefix_{k-1} s_{i_k} prefix_{k-1}^{-1} relative to the supplied
// longest-element word; indices compose left to right.
inline WeylElement decode_rho(const RootSystem& rs, const Word& w0_word, const std::vector<int>& indices) {
    std::vector<WeylElement> prefixes;
    prefixes.reserve(w0_word.size() + 1);
    prefixes.push_back(WeylElement::identity(rs));
    for (int i : w0_word) prefixes.push_back(prefixes.back().mul_simple_right(i));
    WeylElement out = WeylElement::identity(rs);
    for (int t : indices) {
        if (t < 1 || t > static_cast<int>(w0_word.size())) throw std::invalid_argument("decode_rho: index out of range");
        const WeylElement& pre = prefixes[static_cast<std::size_t>(t - 1)];
        out = out * (pre.mul_simple_right(w0_word[static_cast<std::size_t>(t - 1)]) * pre.inverse());
    }
    return out;
}

// The fixed longest-element words used for cached presentations and the
// reflection-product fixtures.
inline Word standard_w0_word(const RootSystem& rs) {
    const int n = rs.n;
    Word w;
    auto blocks = [&](const Word& blk, int times) {
        Word out;
        for (int t = 0; t < times; ++t) out.insert(out.end(), blk.begin(), blk.end());
        return out;
    };
    Word ascending(static_cast<std::size_t>(n));
    std::iota(ascending.begin(), ascending.end(), 1);
    switch (rs.type.family) {
        case 'A':
            for (int i = 1; i <= n; ++i)
                for (int j = i; j >= 1; --j) w.push_back(j);
            break;
        case 'B':
        case 'C':
            w = blocks(ascending, n);
            break;
        case 'D':
            w = blocks(ascending, n - 1);
            break;
        case 'G':
            w = {1, 2, 1, 2, 1, 2};
            break;
        case 'F':
            w = blocks({1, 2, 3, 4}, 6);
            break;
        case 'E':
            if (n == 6) w = blocks({2, 4, 3, 5, 1, 6}, 6);
            if (n == 7) w = blocks(ascending, 9);
            if (n == 8) w = blocks(ascending, 15);
            break;
        default:
            throw std::logic_error("unreachable family");
    }
    if (!is_reduced(rs, w) || static_cast<int>(w.size()) != rs.num_positive())
        w = reduced_word(longest_element(rs));
    return w;
}

}  // namespace qnilp
