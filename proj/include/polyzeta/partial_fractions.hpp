#pragma once

#include "polyzeta/mpoly.hpp"
#include "polyzeta/rational.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace polyzeta {

namespace detail {

// Truncated power series with rational coefficients, coeffs[i] = [u^i].
using Series = std::vector<Rational>;

inline Series series_mul(const Series& a, const Series& b, std::size_t order) {
    Series r(order, Rational(0));
    for (std::size_t i = 0; i < a.size() && i < order; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j + i < order && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// (u + c)^{-A} around u = 0, c != 0.
inline Series inverse_power_series(const Rational& c, int A, std::size_t order) {
    Series r(order, Rational(0));
    Rational cinv = Rational(1) / c;
    Rational lead = rat_pow(cinv, static_cast<unsigned long>(A));
    for (std::size_t m = 0; m < order; ++m) {
        Rational coef = rat_of(binomial(static_cast<unsigned long>(A) + m - 1, m));
        if (m % 2 == 1) coef = -coef;
        r[m] = lead * coef * rat_pow(cinv, static_cast<unsigned long>(m));
    }
    return r;
}

// p(u - j) as a series (exact polynomial shift), truncated.
inline Series shifted_poly_series(const MPoly& p, long j, std::size_t order) {
    Series r(order, Rational(0));
    for (const auto& [e, c] : p.terms()) {
        int d = e[0];
        for (int m = 0; m <= d && m < static_cast<int>(order); ++m) {
            Rational coef = c * rat_of(binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(m))) *
                            rat_pow(rat(-j), static_cast<unsigned long>(d - m));
            r[static_cast<std::size_t>(m)] += coef;
        }
    }
    return r;
}

}  // namespace detail

/// Partial-fraction row of one variable: numerator/(k)_{n+1}^A as
/// sum_{j,s} E_{j,s}/(k+j)^s, keyed by (j, s).
struct UnivariateRow {
    int degree = 0;  // numerator degree
    std::map<std::pair<int, int>, Rational> entries;

    Rational entry(int j, int s) const {
        auto it = entries.find({j, s});
        return it == entries.end() ? Rational(0) : it->second;
    }
};

/// Residue-style decomposition: for each pole k = -j of order A, the Laurent
/// coefficients come from the series of numerator * prod_{j' != j}(k+j')^{-A}
/// around the pole. Exact, no linear solve.
inline UnivariateRow decompose_univariate(const MPoly& numerator, int n, int A) {
    if (numerator.arity() != 1) throw std::invalid_argument("decompose_univariate: arity must be 1");
    if (n < 0 || A < 1) throw std::invalid_argument("decompose_univariate: need n >= 0, A >= 1");
    int deg = numerator.total_degree();
    if (deg > A * (n + 1) - 1)
        throw std::invalid_argument("decompose_univariate: numerator degree " + std::to_string(deg) +
                                    " exceeds bound A(n+1)-1 = " + std::to_string(A * (n + 1) - 1));
    UnivariateRow row;
    row.degree = deg < 0 ? 0 : deg;
    std::size_t order = static_cast<std::size_t>(A);
    for (int j = 0; j <= n; ++j) {
        detail::Series g = detail::shifted_poly_series(numerator, j, order);
        for (int jp = 0; jp <= n; ++jp) {
            if (jp == j) continue;
            g = detail::series_mul(g, detail::inverse_power_series(rat(jp - j), A, order), order);
        }
        // E_{j,s} = [u^{A-s}] g
        for (int s = 1; s <= A; ++s) {
            const Rational& c = g[static_cast<std::size_t>(A - s)];
            if (c != 0) row.entries[{j, s}] = c;
        }
    }
    return row;
}

namespace detail {

// Rows for monomial numerators k^r are shared across all multivariate
// decompositions with the same (n, A).
inline const UnivariateRow& monomial_row(int r, int n, int A) {
    struct Key {
        int r, n, A;
        bool operator<(const Key& o) const { return std::tie(r, n, A) < std::tie(o.r, o.n, o.A); }
    };
    static std::map<Key, UnivariateRow> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.try_emplace(Key{r, n, A});
    if (inserted) {
        MPoly mono(1);
        mono.add_term({r}, Rational(1));
        it->second = decompose_univariate(mono, n, A);
    }
    return it->second;
}

}  // namespace detail

/// The coefficient table C[s_1..s_p; j_1..j_p] of the simple-element
/// expansion of P(k_1..k_p) / prod_i (k_i)_{n+1}^A.
class PFTable {
public:
    struct Key {
        std::vector<int> j, s;
        bool operator<(const Key& o) const { return std::tie(j, s) < std::tie(o.j, o.s); }
    };

    PFTable(int n, int A, int p) : n_(n), A_(A), p_(p) {}

    int n() const { return n_; }
    int A() const { return A_; }
    int p() const { return p_; }

    const std::map<Key, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(const std::vector<int>& j, const std::vector<int>& s) const {
        auto it = coeffs_.find(Key{j, s});
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add(const std::vector<int>& j, const std::vector<int>& s, const Rational& c) {
        if (c == 0) return;
        Key k{j, s};
        auto it = coeffs_.find(k);
        if (it == coeffs_.end()) {
            coeffs_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    /// Value of the elementary-fraction sum at a non-pole rational point.
    Rational eval(const std::vector<Rational>& x) const {
        Rational acc(0);
        for (const auto& [key, c] : coeffs_) {
            Rational t = c;
            for (int i = 0; i < p_; ++i) {
                Rational base = x[static_cast<std::size_t>(i)] + Rational(key.j[static_cast<std::size_t>(i)]);
                if (base == 0) throw std::invalid_argument("PFTable::eval at a pole");
                t /= rat_pow(base, static_cast<unsigned long>(key.s[static_cast<std::size_t>(i)]));
            }
            acc += t;
        }
        return acc;
    }

private:
    int n_, A_, p_;
    std::map<Key, Rational> coeffs_;
};

/// Tensor-product decomposition: per monomial of P, the table entry is the
/// product of univariate rows.
inline PFTable decompose_multivariate(const MPoly& P, int n, int A) {
    int p = P.arity();
    for (int v = 0; v < p; ++v) {
        if (P.degree_in(v) > A * (n + 1) - 1)
            throw std::invalid_argument("decompose_multivariate: degree bound violated in variable " +
                                        std::to_string(v + 1));
    }
    PFTable table(n, A, p);
    for (const auto& [e, c] : P.terms()) {
        std::vector<const UnivariateRow*> rows;
        rows.reserve(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) rows.push_back(&detail::monomial_row(e[static_cast<std::size_t>(i)], n, A));
        // walk the cartesian product of row entries
        std::vector<std::map<std::pair<int, int>, Rational>::const_iterator> its(static_cast<std::size_t>(p));
        std::vector<int> jv(static_cast<std::size_t>(p)), sv(static_cast<std::size_t>(p));
        std::function<void(int, Rational)> walk = [&](int i, Rational acc) {
            if (i == p) {
                table.add(jv, sv, acc);
                return;
            }
            for (const auto& [js, coef] : rows[static_cast<std::size_t>(i)]->entries) {
                jv[static_cast<std::size_t>(i)] = js.first;
                sv[static_cast<std::size_t>(i)] = js.second;
                walk(i + 1, acc * coef);
            }
        };
        walk(0, c);
    }
    return table;
}

/// Row-sum vanishing test in variable i: for all other indices fixed,
/// sum_{j_i=0}^{n} C[..., s_i = 1, ...; ..., j_i, ...] must be zero.
inline bool check_row_sums(const PFTable& table, int var) {
    std::map<PFTable::Key, Rational> sums;
    for (const auto& [key, c] : table.coeffs()) {
        if (key.s[static_cast<std::size_t>(var)] != 1) continue;
        PFTable::Key reduced = key;
        reduced.j[static_cast<std::size_t>(var)] = -1;  // collapse the j_i slot
        sums[reduced] += c;
    }
    for (const auto& [key, total] : sums)
        if (total != 0) return false;
    return true;
}

/// Certifies d_n^{Ap - (s_1+...+s_p)} C[s;j] in Z for every entry (valid when
/// the numerator was n!^{Ap} times an integer polynomial) and returns the
/// verified exponent per entry. A failure signals an arithmetic bug upstream.
inline std::map<PFTable::Key, long> denominator_certificate(const PFTable& table) {
    std::map<PFTable::Key, long> exponents;
    Integer dn = dn_lcm(table.n());
    for (const auto& [key, c] : table.coeffs()) {
        long weight = 0;
        for (int s : key.s) weight += s;
        long e = static_cast<long>(table.A()) * table.p() - weight;
        if (e < 0) throw std::logic_error("denominator_certificate: negative exponent");
        Rational scaled = c * rat_of(int_pow(dn, static_cast<unsigned long>(e)));
        if (!is_integer(scaled)) {
            std::string js, ss;
            for (int j : key.j) js += std::to_string(j) + " ";
            for (int s : key.s) ss += std::to_string(s) + " ";
            throw std::domain_error("denominator_certificate failed at entry j=[" + js + "] s=[" + ss +
                                    "]: " + rat_str(c));
        }
        exponents[key] = e;
    }
    return exponents;
}

}  // namespace polyzeta
