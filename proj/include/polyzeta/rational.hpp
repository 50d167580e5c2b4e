#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyzeta {

// Exact arithmetic substrate. Rationals are always canonical (reduced,
// positive denominator); mpq_class maintains that under canonicalize(),
// which every constructor below goes through.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat_of(const Integer& num, const Integer& den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "num/den" or "num".
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

/// Serialized form is always "num/den" (denominator kept even when 1).
inline std::string rat_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// lcm(1, 2, ..., n); 1 for n in {0, 1}.
inline Integer dn_lcm(long n) {
    if (n < 0) throw std::invalid_argument("dn_lcm: n must be >= 0");
    static std::vector<Integer> table{1, 1};  // d_0, d_1
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(table.size()) <= n) {
        Integer next;
        Integer k(static_cast<long>(table.size()));
        mpz_lcm(next.get_mpz_t(), table.back().get_mpz_t(), k.get_mpz_t());
        table.push_back(next);
    }
    return table[static_cast<std::size_t>(n)];
}

/// Exact H_M^{(s)} = sum_{t=1}^{M} 1/t^s. Prefix tables are memoized per
/// order s; results are identical with caching disabled.
inline Rational harmonic(long s, long M) {
    if (s < 1) throw std::invalid_argument("harmonic: order must be >= 1");
    if (M < 0) throw std::invalid_argument("harmonic: upper index must be >= 0");
    static std::unordered_map<long, std::vector<Rational>> tables;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& tab = tables[s];
    if (tab.empty()) tab.emplace_back(0);
    while (static_cast<long>(tab.size()) <= M) {
        long t = static_cast<long>(tab.size());
        tab.push_back(tab.back() + rat_of(1, int_pow(Integer(t), static_cast<unsigned long>(s))));
    }
    return tab[static_cast<std::size_t>(M)];
}

/// Bernoulli number B_m (B_1 = -1/2), via the defining recurrence.
inline Rational bernoulli(unsigned m) {
    static std::vector<Rational> table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= m) {
        unsigned k = static_cast<unsigned>(table.size());
        if (k == 0) {
            table.emplace_back(1);
            continue;
        }
        // sum_{i=0}^{k} C(k+1, i) B_i = 0
        Rational acc(0);
        for (unsigned i = 0; i < k; ++i) acc += rat_of(binomial(k + 1, i)) * table[i];
        table.push_back(-acc / rat_of(binomial(k + 1, k)));
    }
    return table[m];
}

}  // namespace polyzeta
