// Elements of the free algebra on the generators E_1..E_n over the scalar
// field, graded by the root lattice. Used by the nested-commutator expansion
// and the Serre-ideal zero test.

#pragma once

#include "qnilp/cartan.hpp"

#include <map>
#include <vector>

namespace qnilp {

using FreeWord = std::vector<int>;  // letters in 1..n

struct FreeElement {
    std::map<FreeWord, Scalar> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const FreeWord& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    static FreeElement generator(int i) {
        FreeElement e;
        e.terms[{i}] = Scalar(1);
        return e;
    }

    friend FreeElement operator+(const FreeElement& a, const FreeElement& b) {
        FreeElement r = a;
        for (const auto& [w, c] : b.terms) r.add_term(w, c);
        return r;
    }

    friend FreeElement operator-(const FreeElement& a, const FreeElement& b) {
        FreeElement r = a;
        for (const auto& [w, c] : b.terms) r.add_term(w, -c);
        return r;
    }

    friend FreeElement operator*(const Scalar& c, const FreeElement& a) {
        FreeElement r;
        if (c.is_zero()) return r;
        for (const auto& [w, k] : a.terms) r.terms[w] = c * k;
        return r;
    }

    friend FreeElement operator*(const FreeElement& a, const FreeElement& b) {
        FreeElement r;
        for (const auto& [wa, ca] : a.terms)
            for (const auto& [wb, cb] : b.terms) {
                FreeWord w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }

    friend bool operator==(const FreeElement& a, const FreeElement& b) { return a.terms == b.terms; }
};

inline RootVec word_content(const RootSystem& rs, const FreeWord& w) {
    RootVec d(static_cast<std::size_t>(rs.n), 0);
    for (int i : w) ++d[static_cast<std::size_t>(i - 1)];
    return d;
}

// Degree of a homogeneous element; throws if the words have mixed content.
inline RootVec free_degree(const RootSystem& rs, const FreeElement& x) {
    if (x.is_zero()) throw std::invalid_argument("free_degree: zero element");
    RootVec d = word_content(rs, x.terms.begin()->first);
    for (const auto& [w, c] : x.terms)
        if (word_content(rs, w) != d) throw std::invalid_argument("free_degree: element is not homogeneous");
    return d;
}

// [x, y] = xy - q^{<deg x, deg y>} yx for homogeneous x, y.
inline FreeElement q_commutator(const RootSystem& rs, const FreeElement& x, const FreeElement& y) {
    if (x.is_zero() || y.is_zero()) return FreeElement{};
    const Scalar p = rs.q_form(free_degree(rs, x), free_degree(rs, y));
    return x * y - p * (y * x);
}

// (ad_q E_i)(y)
inline FreeElement adq_generator(const RootSystem& rs, int i, const FreeElement& y) {
    return q_commutator(rs, FreeElement::generator(i), y);
}

}  // namespace qnilp
