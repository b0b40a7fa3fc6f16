// Exact scalars: rational functions in q with integer coefficients,
// plus quantum integers, quantum factorials and the hat map v -> v - v^{-1}.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qnilp {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer polynomial in q, index = exponent.
// Invariant: empty (the zero polynomial) or back() != 0.
using ZPoly = std::vector<BigInt>;

namespace detail {

inline void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly poly_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline ZPoly poly_neg(ZPoly a) {
    for (auto& c : a) c = -c;
    return a;
}

inline ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline BigInt poly_content(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& c : a) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

inline ZPoly poly_div_int(ZPoly a, const BigInt& d) {
    for (auto& c : a) c /= d;
    return a;
}

// Exact division; caller guarantees divisibility.
inline ZPoly poly_divexact(ZPoly a, const ZPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t k = a.size() - b.size();
        BigInt c = a.back() / b.back();
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return q;
}

// Pseudo-remainder of a by b (fraction-free Euclid step).
inline ZPoly poly_prem(ZPoly a, const ZPoly& b) {
    const BigInt lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t k = a.size() - b.size();
        const BigInt c = a.back();
        for (auto& x : a) x *= lead;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
        trim(a);
    }
    return a;
}

inline ZPoly poly_primitive(ZPoly a) {
    if (a.empty()) return a;
    BigInt g = poly_content(a);
    if (a.back() < 0) g = -g;
    return poly_div_int(std::move(a), g);
}

// gcd in Z[q] (content included), normalized with positive leading coefficient.
inline ZPoly poly_gcd(ZPoly a, ZPoly b) {
    if (a.empty()) {
        if (!b.empty() && b.back() < 0) b = poly_neg(std::move(b));
        return b;
    }
    if (b.empty()) {
        if (a.back() < 0) a = poly_neg(std::move(a));
        return a;
    }
    const BigInt cont = boost::multiprecision::gcd(poly_content(a), poly_content(b));
    a = poly_primitive(std::move(a));
    b = poly_primitive(std::move(b));
    while (!b.empty()) {
        ZPoly r = poly_primitive(poly_prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    for (auto& c : a) c *= cont;
    return a;
}

}  // namespace detail

// Integer Laurent polynomial: sum of coeff[k] * q^(off + k).
// Invariant: coeff empty (zero, off == 0) or coeff.front() != 0 and coeff.back() != 0.
struct LaurentZ {
    int off = 0;
    ZPoly coeff;

    bool is_zero() const { return coeff.empty(); }

    void normalize() {
        std::size_t lo = 0;
        while (lo < coeff.size() && coeff[lo] == 0) ++lo;
        if (lo == coeff.size()) {
            coeff.clear();
            off = 0;
            return;
        }
        coeff.erase(coeff.begin(), coeff.begin() + static_cast<long>(lo));
        off += static_cast<int>(lo);
        detail::trim(coeff);
    }

    friend bool operator==(const LaurentZ& a, const LaurentZ& b) {
        return a.off == b.off && a.coeff == b.coeff;
    }
};

inline LaurentZ laurent_add(const LaurentZ& a, const LaurentZ& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int off = std::min(a.off, b.off);
    LaurentZ r;
    r.off = off;
    const long hi = std::max<long>(a.off + static_cast<long>(a.coeff.size()), b.off + static_cast<long>(b.coeff.size()));
    r.coeff.assign(static_cast<std::size_t>(hi - off), 0);
    for (std::size_t i = 0; i < a.coeff.size(); ++i) r.coeff[i + static_cast<std::size_t>(a.off - off)] += a.coeff[i];
    for (std::size_t i = 0; i < b.coeff.size(); ++i) r.coeff[i + static_cast<std::size_t>(b.off - off)] += b.coeff[i];
    r.normalize();
    return r;
}

inline LaurentZ laurent_mul(const LaurentZ& a, const LaurentZ& b) {
    LaurentZ r;
    r.off = a.off + b.off;
    r.coeff = detail::poly_mul(a.coeff, b.coeff);
    if (r.coeff.empty()) r.off = 0;
    return r;
}

inline LaurentZ laurent_neg(LaurentZ a) {
    a.coeff = detail::poly_neg(std::move(a.coeff));
    return a;
}

// Element of Q(q) in canonical form:
//   num: Laurent polynomial, den: ordinary polynomial with nonzero constant
//   term and positive leading coefficient, gcd(num cleared of q-powers, den) = 1.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) {  // NOLINT: implicit by design, mirrors integer literals
        if (v != 0) num_.coeff = {BigInt(v)};
    }
    explicit Scalar(const BigInt& v) {
        if (v != 0) num_.coeff = {v};
    }
    Scalar(LaurentZ num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static Scalar q_power(int e) {
        Scalar s;
        s.num_.off = e;
        s.num_.coeff = {BigInt(1)};
        return s;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.off == 0 && num_.coeff == ZPoly{BigInt(1)} && den_ == ZPoly{BigInt(1)}; }
    const LaurentZ& num() const { return num_; }
    const ZPoly& den() const { return den_; }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = laurent_neg(std::move(r.num_));
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Scalar r;
        if (a.den_ == b.den_) {
            r.num_ = laurent_add(a.num_, b.num_);
            r.den_ = a.den_;
        } else {
            LaurentZ x = a.num_;
            x.coeff = detail::poly_mul(x.coeff, b.den_);
            LaurentZ y = b.num_;
            y.coeff = detail::poly_mul(y.coeff, a.den_);
            r.num_ = laurent_add(x, y);
            r.den_ = detail::poly_mul(a.den_, b.den_);
        }
        r.canonicalize();
        return r;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return Scalar();
        Scalar r;
        r.num_ = laurent_mul(a.num_, b.num_);
        r.den_ = detail::poly_mul(a.den_, b.den_);
        r.canonicalize();
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("scalar division by zero");
        if (a.is_zero()) return Scalar();
        Scalar r;
        r.num_.off = a.num_.off - b.num_.off;
        r.num_.coeff = detail::poly_mul(a.num_.coeff, b.den_);
        r.den_ = detail::poly_mul(a.den_, b.num_.coeff);
        r.canonicalize();
        return r;
    }

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    Scalar inverse() const { return Scalar(1) / *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;
    static Scalar parse(const std::string& text);

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    void canonicalize() {
        num_.normalize();
        if (num_.is_zero()) {
            den_ = {BigInt(1)};
            return;
        }
        if (den_.empty()) throw std::domain_error("scalar with zero denominator");
        // Clear any q-power from the denominator into the numerator offset.
        std::size_t lo = 0;
        while (lo < den_.size() && den_[lo] == 0) ++lo;
        if (lo > 0) {
            den_.erase(den_.begin(), den_.begin() + static_cast<long>(lo));
            num_.off -= static_cast<int>(lo);
        }
        ZPoly g = detail::poly_gcd(num_.coeff, den_);
        if (!(g.size() == 1 && g[0] == 1)) {
            num_.coeff = detail::poly_divexact(std::move(num_.coeff), g);
            den_ = detail::poly_divexact(std::move(den_), g);
        }
        if (den_.back() < 0) {
            den_ = detail::poly_neg(std::move(den_));
            num_ = laurent_neg(std::move(num_));
        }
    }

    LaurentZ num_;
    ZPoly den_{BigInt(1)};
};

// [k]_{q^d} = (q^{dk} - q^{-dk}) / (q^d - q^{-d}), a Laurent polynomial.
inline Scalar qint(int k, int d = 1) {
    if (k < 0) throw std::domain_error("qint: negative argument");
    if (d < 1) throw std::domain_error("qint: nonpositive deformation index");
    if (k == 0) return Scalar();
    LaurentZ num;
    num.off = -d * (k - 1);
    num.coeff.assign(static_cast<std::size_t>(2 * d * (k - 1)) + 1, 0);
    for (int i = 0; i < k; ++i) num.coeff[static_cast<std::size_t>(2 * d * i)] = 1;
    return Scalar(std::move(num), {BigInt(1)});
}

inline Scalar qfact(int k, int d = 1) {
    Scalar r(1);
    for (int i = 2; i <= k; ++i) r *= qint(i, d);
    return r;
}

inline Scalar qpow(int e) { return Scalar::q_power(e); }

// hat(a) = a - a^{-1}
inline Scalar hat(const Scalar& a) { return a - a.inverse(); }

// ---- text form: "<num> / <den>", e.g. "(q^2 - q^-2) / 1"  ------------------

namespace detail {

inline void append_term(std::string& out, const BigInt& c, int e, bool first) {
    BigInt a = c;
    if (first) {
        if (a < 0) {
            out += "-";
            a = -a;
        }
    } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
    }
    const bool unit = (a == 1);
    if (!unit || e == 0) out += a.str();
    if (e != 0) {
        if (!unit) out += "*";
        out += "q";
        if (e != 1) out += "^" + std::to_string(e);
    }
}

inline std::string laurent_to_string(const LaurentZ& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = p.coeff.size(); i-- > 0;) {
        if (p.coeff[i] == 0) continue;
        append_term(out, p.coeff[i], p.off + static_cast<int>(i), first);
        first = false;
    }
    return out;
}

struct ScalarParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ScalarParser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("scalar parse error at position " + std::to_string(pos) + ": " + what);
    }

    BigInt parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) fail("integer expected");
        return BigInt(s.substr(start, pos - start));
    }

    // term := [sign] [int ['*']] ['q' ['^' int]]
    std::pair<BigInt, int> parse_term(bool allow_sign) {
        skip_ws();
        BigInt sign = 1;
        if (allow_sign && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1;
            ++pos;
            skip_ws();
        }
        BigInt c = 1;
        bool saw_coeff = false;
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
            c = parse_int();
            saw_coeff = true;
        }
        eat('*');
        int e = 0;
        skip_ws();
        if (pos < s.size() && s[pos] == 'q') {
            ++pos;
            e = 1;
            if (eat('^')) e = static_cast<int>(parse_int());
        } else if (!saw_coeff) {
            fail("term expected");
        }
        return {sign * c, e};
    }

    LaurentZ parse_poly() {
        LaurentZ acc;
        bool first = true;
        for (;;) {
            skip_ws();
            if (!first && (pos >= s.size() || (s[pos] != '+' && s[pos] != '-'))) break;
            auto [c, e] = parse_term(true);
            LaurentZ t;
            t.off = e;
            t.coeff = {c};
            t.normalize();
            acc = laurent_add(acc, t);
            first = false;
        }
        return acc;
    }

    LaurentZ parse_group() {
        skip_ws();
        if (eat('(')) {
            LaurentZ p = parse_poly();
            if (!eat(')')) fail("')' expected");
            return p;
        }
        return parse_poly();
    }
};

}  // namespace detail

inline std::string Scalar::to_string() const {
    std::string out;
    const bool paren_num = num_.coeff.size() > 1;
    if (paren_num) out += "(";
    out += detail::laurent_to_string(num_);
    if (paren_num) out += ")";
    out += " / ";
    LaurentZ d;
    d.coeff = den_;
    d.normalize();
    const bool paren_den = den_.size() > 1;
    if (paren_den) out += "(";
    out += detail::laurent_to_string(d);
    if (paren_den) out += ")";
    return out;
}

inline Scalar Scalar::parse(const std::string& text) {
    detail::ScalarParser p(text);
    LaurentZ num = p.parse_group();
    LaurentZ den;
    den.coeff = {BigInt(1)};
    p.skip_ws();
    if (p.eat('/')) den = p.parse_group();
    p.skip_ws();
    if (p.pos != p.s.size()) p.fail("trailing characters");
    if (den.is_zero()) throw std::invalid_argument("scalar parse error: zero denominator");
    // Fold the denominator's q-offset into the numerator.
    num.off -= den.off;
    return Scalar(std::move(num), std::move(den.coeff));
}

}  // namespace qnilp
