#pragma once

#include "polyzeta/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyzeta {

/// A composition (s1,...,sr) naming a (regularized) multiple zeta value.
/// The empty word is the unit. Convergent iff empty or s1 >= 2.
using MzvWord = std::vector<int>;

inline bool word_convergent(const MzvWord& w) { return w.empty() || w.front() >= 2; }

inline int word_weight(const MzvWord& w) {
    int s = 0;
    for (int x : w) s += x;
    return s;
}

inline int word_depth(const MzvWord& w) { return static_cast<int>(w.size()); }

inline std::string word_str(const MzvWord& w) {
    std::string out = "z(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i]);
    }
    return out + ")";
}

/// A formal product of words, kept sorted so equal multisets compare equal.
using Monomial = std::vector<MzvWord>;

inline Monomial make_monomial(std::vector<MzvWord> words) {
    std::sort(words.begin(), words.end());
    return words;
}

/// Q-linear combination of monomials (products of MZV words). Plain words
/// are the canonical basis of the quasi-shuffle algebra; products are kept
/// formal until normalize() expands them through the stuffle product.
class ZCombo {
public:
    ZCombo() = default;

    static ZCombo zero() { return ZCombo(); }
    static ZCombo one() { return from_rational(Rational(1)); }
    static ZCombo from_rational(const Rational& c) {
        ZCombo z;
        if (c != 0) z.terms_[Monomial{}] = c;
        return z;
    }
    static ZCombo from_word(const MzvWord& w, const Rational& c = Rational(1)) {
        ZCombo z;
        if (c == 0) return z;
        if (w.empty()) return from_rational(c);
        z.terms_[Monomial{w}] = c;
        return z;
    }
    static ZCombo from_monomial(const Monomial& m, const Rational& c) {
        ZCombo z;
        if (c == 0) return z;
        Monomial ms = m;
        std::erase_if(ms, [](const MzvWord& w) { return w.empty(); });
        std::sort(ms.begin(), ms.end());
        z.terms_[ms] = c;
        return z;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ZCombo& operator+=(const ZCombo& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ZCombo& operator-=(const ZCombo& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ZCombo operator+(ZCombo a, const ZCombo& b) { return a += b; }
    friend ZCombo operator-(ZCombo a, const ZCombo& b) { return a -= b; }

    ZCombo operator*(const Rational& c) const {
        ZCombo r;
        if (c == 0) return r;
        for (const auto& [m, coef] : terms_) r.terms_[m] = coef * c;
        return r;
    }
    ZCombo operator-() const { return *this * Rational(-1); }

    /// Formal product: monomials concatenate as multisets.
    friend ZCombo operator*(const ZCombo& a, const ZCombo& b) {
        ZCombo r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }

    bool operator==(const ZCombo& o) const { return terms_ == o.terms_; }

    /// Coefficient of the empty monomial (the purely rational part).
    Rational rational_part() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int max_weight() const {
        int w = 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (const auto& word : m) s += word_weight(word);
            w = std::max(w, s);
        }
        return w;
    }

    bool single_words_only() const {
        for (const auto& [m, c] : terms_)
            if (m.size() > 1) return false;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += rat_str(c);
            for (const auto& w : m) out += "*" + word_str(w);
        }
        return out;
    }

private:
    std::map<Monomial, Rational> terms_;
};

/// Quasi-shuffle (stuffle) product of two words, as a combination of single
/// words with integer coefficients.
inline ZCombo stuffle(const MzvWord& w1, const MzvWord& w2) {
    struct Key {
        MzvWord a, b;
        bool operator<(const Key& o) const { return a < o.a || (a == o.a && b < o.b); }
    };
    static std::map<Key, ZCombo> memo;
    static std::mutex mu;

    std::function<ZCombo(const MzvWord&, const MzvWord&)> rec = [&](const MzvWord& a, const MzvWord& b) -> ZCombo {
        if (a.empty()) return ZCombo::from_word(b);
        if (b.empty()) return ZCombo::from_word(a);
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(Key{a, b});
            if (it != memo.end()) return it->second;
        }
        MzvWord ta(a.begin() + 1, a.end());
        MzvWord tb(b.begin() + 1, b.end());
        auto prepend = [](int head, const ZCombo& z) {
            ZCombo r;
            for (const auto& [m, c] : z.terms()) {
                MzvWord w;
                w.push_back(head);
                if (!m.empty()) w.insert(w.end(), m.front().begin(), m.front().end());
                r.add_term(Monomial{w}, c);
            }
            return r;
        };
        ZCombo result = prepend(a.front(), rec(ta, b)) + prepend(b.front(), rec(a, tb)) +
                        prepend(a.front() + b.front(), rec(ta, tb));
        {
            std::lock_guard<std::mutex> lock(mu);
            memo[Key{a, b}] = result;
        }
        return result;
    };
    return rec(w1, w2);
}

/// Splits the weak nested sum over k1 >= ... >= kq into the 2^{q-1} strict
/// contractions, each ">=" resolved to ">" or "=" (equal indices merge their
/// exponents). Exact as a finite-N identity.
inline ZCombo weak_to_strict(const MzvWord& s) {
    if (s.empty()) return ZCombo::one();
    ZCombo r;
    std::size_t gaps = s.size() - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gaps); ++mask) {
        MzvWord w;
        w.push_back(s[0]);
        for (std::size_t i = 0; i < gaps; ++i) {
            if (mask & (std::size_t{1} << i))
                w.back() += s[i + 1];  // merge: k_i = k_{i+1}
            else
                w.push_back(s[i + 1]);
        }
        r += ZCombo::from_word(w);
    }
    return r;
}

inline int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(perm[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

/// Antisymmetric polyzeta: sum over all permutations with signature.
/// Empty input yields the unit (the unique bijection of the empty set).
inline ZCombo zeta_as(const MzvWord& s) {
    if (s.empty()) return ZCombo::one();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) return ZCombo::zero();
    std::vector<int> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    ZCombo r;
    std::sort(idx.begin(), idx.end());
    do {
        MzvWord w(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) w[i] = s[static_cast<std::size_t>(idx[i])];
        r.add_term(Monomial{w}, Rational(permutation_sign(idx)));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return r;
}

/// Expands every product monomial into single words via stuffle; idempotent.
inline ZCombo normalize(const ZCombo& z) {
    ZCombo out;
    for (const auto& [m, c] : z.terms()) {
        if (m.size() <= 1) {
            out.add_term(m, c);
            continue;
        }
        for (const auto& w : m)
            if (!word_convergent(w))
                throw std::domain_error("normalize: divergent word " + word_str(w) + " inside a product");
        ZCombo acc = ZCombo::from_word(m.front());
        for (std::size_t i = 1; i < m.size(); ++i) {
            ZCombo next;
            for (const auto& [ma, ca] : acc.terms()) {
                const MzvWord& wa = ma.empty() ? MzvWord{} : ma.front();
                next += stuffle(wa, m[i]) * ca;
            }
            acc = next;
        }
        out += acc * c;
    }
    return out;
}

/// Exact strict partial sum zeta_N(w) = sum_{N >= k1 > ... > kr >= 1} prod 1/k_i^{s_i}.
inline Rational zeta_partial(const MzvWord& w, long N) {
    if (w.empty()) return Rational(1);
    if (N < 0) throw std::invalid_argument("zeta_partial: N must be >= 0");
    // prefix[m] = partial sum of the current suffix word up to m
    std::vector<Rational> prefix(static_cast<std::size_t>(N) + 1, Rational(1));
    for (std::size_t level = w.size(); level-- > 0;) {
        std::vector<Rational> next(static_cast<std::size_t>(N) + 1, Rational(0));
        for (long k = 1; k <= N; ++k) {
            Rational term = rat_of(1, int_pow(Integer(k), static_cast<unsigned long>(w[level])));
            // strict: inner indices run below k
            next[static_cast<std::size_t>(k)] =
                next[static_cast<std::size_t>(k) - 1] + term * prefix[static_cast<std::size_t>(k) - 1];
        }
        prefix = std::move(next);
    }
    return prefix[static_cast<std::size_t>(N)];
}

/// Exact weak partial sum over N >= k1 >= ... >= kq >= 1.
inline Rational weak_partial(const MzvWord& s, long N) {
    if (s.empty()) return Rational(1);
    std::vector<Rational> prefix(static_cast<std::size_t>(N) + 1, Rational(1));
    for (std::size_t level = s.size(); level-- > 0;) {
        std::vector<Rational> next(static_cast<std::size_t>(N) + 1, Rational(0));
        for (long k = 1; k <= N; ++k) {
            Rational term = rat_of(1, int_pow(Integer(k), static_cast<unsigned long>(s[level])));
            next[static_cast<std::size_t>(k)] =
                next[static_cast<std::size_t>(k) - 1] + term * prefix[static_cast<std::size_t>(k)];
        }
        prefix = std::move(next);
    }
    return prefix[static_cast<std::size_t>(N)];
}

/// Exact evaluation of a single-word combo at finite N (strict sums).
inline Rational combo_partial(const ZCombo& z, long N) {
    Rational acc(0);
    for (const auto& [m, c] : z.terms()) {
        Rational t = c;
        for (const auto& w : m) t *= zeta_partial(w, N);
        acc += t;
    }
    return acc;
}

}  // namespace polyzeta
