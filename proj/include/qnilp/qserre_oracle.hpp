// Small-scale exact zero test in U_q(n+): the free algebra on E_1..E_n
// modulo the two-sided ideal generated by the q-Serre relations
// (ad_q E_i)^{1-c_ij}(E_j). Per multidegree, a row-reduced spanning set of
// the ideal slice is cached and queries reduce against it. Degrees whose
// word count exceeds the cap are refused, never answered wrongly.

#pragma once

#include "qnilp/freealg.hpp"

#include <mutex>
#include <stdexcept>

namespace qnilp {

struct OracleOutOfRange : std::runtime_error {
    explicit OracleOutOfRange(const std::string& what) : std::runtime_error("oracle out of range: " + what) {}
};

struct IdealSlice {
    RootVec degree;
    // echelon rows keyed by pivot word (the lexicographically smallest word
    // of the row, with coefficient 1); all words of a slice share one length
    std::map<FreeWord, FreeElement> rows;

    // reduce x against the rows; x must be homogeneous of this degree
    FreeElement reduce(FreeElement x) const {
        for (;;) {
            bool hit = false;
            for (auto it = x.terms.begin(); it != x.terms.end();) {
                auto row = rows.find(it->first);
                if (row == rows.end()) {
                    ++it;
                    continue;
                }
                const Scalar c = it->second;
                x = x - c * row->second;
                hit = true;
                break;
            }
            if (!hit) return x;
        }
    }

    // true if the row was independent and inserted
    bool insert(FreeElement x) {
        x = reduce(std::move(x));
        if (x.is_zero()) return false;
        const Scalar lead = x.terms.begin()->second;
        x = lead.inverse() * x;
        const FreeWord pivot = x.terms.begin()->first;
        // re-reduce existing rows that contain the new pivot
        for (auto& [p, row] : rows) {
            auto it = row.terms.find(pivot);
            if (it != row.terms.end()) row = row - it->second * x;
        }
        rows.emplace(pivot, std::move(x));
        return true;
    }
};

class SerreOracle {
public:
    explicit SerreOracle(const RootSystem& rs, std::size_t word_cap = 20000) : rs_(&rs), cap_(word_cap) {}

    const RootSystem& root_system() const { return *rs_; }

    // (ad_q E_i)^{1-c_ij}(E_j), fully expanded
    FreeElement serre_element(int i, int j) const {
        if (i == j) throw std::invalid_argument("serre_element: indices must differ");
        const int reps = 1 - rs_->cartan[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        FreeElement x = FreeElement::generator(j);
        for (int k = 0; k < reps; ++k) x = adq_generator(*rs_, i, x);
        return x;
    }

    std::size_t word_count(const RootVec& deg) const {
        BigInt total = 0, cnt = 1;
        for (int c : deg) total += c;
        BigInt rem = total;
        for (int c : deg)
            for (int k = 1; k <= c; ++k) {
                cnt = cnt * rem / k;  // binomial products stay integral in this order
                rem -= 1;
            }
        if (cnt > BigInt(1) << 62) return static_cast<std::size_t>(-1);
        return static_cast<std::size_t>(cnt);
    }

    const IdealSlice& ideal_slice(const RootVec& deg) {
        std::lock_guard<std::mutex> lock(mu_);
        return slice_locked(deg);
    }

    // True iff x lies in the Serre ideal. Splits by multidegree.
    bool is_zero_mod_serre(const FreeElement& x) {
        if (x.is_zero()) return true;
        std::map<RootVec, FreeElement> parts;
        for (const auto& [w, c] : x.terms) parts[word_content(*rs_, w)].add_term(w, c);
        std::lock_guard<std::mutex> lock(mu_);
        for (auto& [deg, part] : parts)
            if (!slice_locked(deg).reduce(part).is_zero()) return false;
        return true;
    }

private:
    const IdealSlice& slice_locked(const RootVec& deg) {
        auto it = slices_.find(deg);
        if (it != slices_.end()) return it->second;
        if (word_count(deg) > cap_)
            throw OracleOutOfRange("multidegree with " + std::to_string(word_count(deg)) + " words exceeds cap " +
                                   std::to_string(cap_));
        IdealSlice slice;
        slice.degree = deg;
        // I_deg = sum_i E_i * I_{deg - a_i} + I_{deg - a_i} * E_i
        //         + the Serre elements of multidegree deg
        for (int i = 1; i <= rs_->n; ++i) {
            if (deg[static_cast<std::size_t>(i - 1)] == 0) continue;
            RootVec sub = deg;
            --sub[static_cast<std::size_t>(i - 1)];
            bool nonzero = false;
            for (int c : sub) nonzero |= c != 0;
            if (!nonzero) continue;
            const IdealSlice& lower = slice_locked(sub);
            const FreeElement gen = FreeElement::generator(i);
            for (const auto& [p, row] : lower.rows) {
                slice.insert(gen * row);
                slice.insert(row * gen);
            }
        }
        for (int i = 1; i <= rs_->n; ++i)
            for (int j = 1; j <= rs_->n; ++j) {
                if (i == j) continue;
                RootVec sdeg(static_cast<std::size_t>(rs_->n), 0);
                sdeg[static_cast<std::size_t>(i - 1)] = 1 - rs_->cartan[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                sdeg[static_cast<std::size_t>(j - 1)] += 1;
                if (sdeg == deg) slice.insert(serre_element(i, j));
            }
        return slices_.emplace(deg, std::move(slice)).first->second;
    }

    const RootSystem* rs_;
    std::size_t cap_;
    std::map<RootVec, IdealSlice> slices_;
    std::mutex mu_;
};

}  // namespace qnilp
