#pragma once

#include "polyzeta/asymexp.hpp"
#include "polyzeta/mzv.hpp"

#include <map>
#include <mutex>

namespace polyzeta {

/// The unique polynomial Q with zeta_N(w) = Q(H_N) + O(N^{-1+eps}).
///
/// Convergent words give the constant Q = word itself. Words with leading 1s
/// are resolved by peeling one leading 1 through the finite-N stuffle
/// identity zeta_N(1) * zeta_N(u) = zeta_N((1) * u) and solving for the
/// target word; the recursion metric is the number of leading 1s. The
/// regularized value zeta*(w) is Q(0), with the stuffle convention
/// zeta*(1) = 0 built in via Q_{(1)}(X) = X.
inline AsymExp regularize_word(const MzvWord& w) {
    static std::map<MzvWord, AsymExp> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }

    AsymExp result;
    if (w.empty()) {
        result = AsymExp::one();
    } else if (word_convergent(w)) {
        result = AsymExp(ZCombo::from_word(w));
    } else if (w.size() == 1) {  // w == (1): zeta_N(1) = H_N
        result = AsymExp::h_power(1, ZCombo::one());
    } else {
        MzvWord tail(w.begin() + 1, w.end());
        ZCombo expansion = stuffle(MzvWord{1}, tail);
        // multiplicity of w itself = number of its leading 1s
        Rational mult(0);
        AsymExp others;
        for (const auto& [m, c] : expansion.terms()) {
            const MzvWord& v = m.front();
            if (v == w) {
                mult = c;
            } else {
                others += regularize_word(v) * c;
            }
        }
        if (mult == 0) throw std::logic_error("regularize_word: target missing from stuffle expansion");
        AsymExp lhs = regularize_word(tail).shifted_by_h();
        result = (lhs - others) * (Rational(1) / mult);
    }

    std::lock_guard<std::mutex> lock(mu);
    memo[w] = result;
    return result;
}

/// zeta*(w) = Q(0) as a combination of convergent words.
inline ZCombo zeta_star(const MzvWord& w) { return regularize_word(w).constant_term(); }

/// Regularized antisymmetric polyzeta, resolved to convergent words:
/// sum over permutations sigma of sign(sigma) * zeta*(sigma(s)).
inline ZCombo zeta_star_as(const MzvWord& s) {
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
        r += zeta_star(w) * Rational(permutation_sign(idx));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return r;
}

/// AsymExp of the weak sum over N >= k1 >= ... >= kq >= 1 of prod k_i^{-s_i}.
inline AsymExp weak_sum_asym(const MzvWord& s) {
    if (s.empty()) return AsymExp::one();
    AsymExp r;
    for (const auto& [m, c] : weak_to_strict(s).terms()) r += regularize_word(m.front()) * c;
    return r;
}

}  // namespace polyzeta
