#pragma once

#include "polyzeta/asymexp.hpp"
#include "polyzeta/mpoly.hpp"
#include "polyzeta/mzv.hpp"
#include "polyzeta/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace polyzeta {

/// High-precision real with a tracked error bound: |value - true| <= error_bound.
struct NumericValue {
    mpf_class value;
    double error_bound = 0.0;
};

namespace numeric_detail {

inline unsigned long prec_bits(int digits) {
    if (digits < 5) digits = 5;
    return static_cast<unsigned long>(digits * 3.4) + 96;
}

struct PrecisionGuard {
    mp_bitcnt_t old;
    explicit PrecisionGuard(unsigned long bits) : old(mpf_get_default_prec()) { mpf_set_default_prec(bits); }
    ~PrecisionGuard() { mpf_set_default_prec(old); }
};

inline mpf_class to_mpf(const Rational& r, unsigned long bits) {
    mpf_class num(r.get_num(), bits), den(r.get_den(), bits);
    return num / den;
}

// Truncated power series in x = 1/M with rational coefficients.
using RatSeries = std::vector<Rational>;

// (M+1)^{-t} as a series in x = 1/M: x^t * sum_m (-1)^m C(t+m-1, m) x^m.
inline RatSeries shifted_inverse_power(int t, int order) {
    RatSeries r(static_cast<std::size_t>(order), Rational(0));
    for (int m = 0; t + m < order; ++m) {
        Rational c = rat_of(binomial(static_cast<unsigned long>(t + m - 1), static_cast<unsigned long>(m)));
        if (m % 2 == 1) c = -c;
        r[static_cast<std::size_t>(t + m)] = c;
    }
    return r;
}

// sum_{k > M} k^{-j} (j >= 2) as a series in 1/M, via Euler-Maclaurin at
// a = M+1:  a^{1-j}/(j-1) + a^{-j}/2 + sum_m B_{2m}/(2m)! (j)_{2m-1} a^{-j-2m+1}.
inline const RatSeries& tail_power_series(int j, int order) {
    struct Key {
        int j, order;
        bool operator<(const Key& o) const { return std::tie(j, order) < std::tie(o.j, o.order); }
    };
    static std::map<Key, RatSeries> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.try_emplace(Key{j, order});
    if (!inserted) return it->second;
    if (j < 2) throw std::logic_error("tail_power_series: exponent must be >= 2");
    RatSeries r(static_cast<std::size_t>(order), Rational(0));
    auto add_scaled = [&](const RatSeries& s, const Rational& c) {
        for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i] * c;
    };
    add_scaled(shifted_inverse_power(j - 1, order), Rational(1) / rat(j - 1));
    add_scaled(shifted_inverse_power(j, order), rat(1, 2));
    Rational rising(j);  // (j)_{2m-1} built incrementally
    for (int m = 1; j + 2 * m - 1 < order; ++m) {
        // (j)_{2m-1} = j (j+1) ... (j+2m-2)
        if (m > 1) rising *= rat(j + 2 * m - 4 + 1) * rat(j + 2 * m - 3 + 1);
        Rational c = bernoulli(static_cast<unsigned>(2 * m)) * rising /
                     rat_of(factorial(static_cast<unsigned long>(2 * m)));
        add_scaled(shifted_inverse_power(j + 2 * m - 1, order), c);
    }
    it->second = std::move(r);
    return it->second;
}

// Phi(M) = sum_{k > M} k^{-t} phi(k) for a series phi in 1/k.
inline RatSeries compose_tail(const RatSeries& phi, int t, int order) {
    RatSeries r(static_cast<std::size_t>(order), Rational(0));
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] == 0) continue;
        int j = t + static_cast<int>(i);
        if (j < 2) throw std::logic_error("compose_tail: divergent tail exponent");
        const RatSeries& tp = tail_power_series(j, order);
        for (std::size_t m = 0; m < tp.size(); ++m) r[m] += tp[m] * phi[i];
    }
    return r;
}

inline mpf_class eval_series_at(const RatSeries& s, const mpf_class& x, unsigned long bits) {
    mpf_class acc(0, bits);
    for (std::size_t i = s.size(); i-- > 0;) {
        acc *= x;
        if (s[i] != 0) acc += to_mpf(s[i], bits);
    }
    return acc;
}

inline double mpf_to_double_safe(const mpf_class& v) {
    double d = v.get_d();
    if (std::isnan(d)) throw std::logic_error("mpf to double conversion failed");
    return d;
}

}  // namespace numeric_detail

/// Nested truncated summation with Euler-Maclaurin tail series. For a word
/// (s1..sp) and cutoff K:
///   zeta(w) = Z_w(K) + sum_{i=1}^{p} Z_{(s_{i+1}..s_p)}(K) * Phi_i(K),
/// where Z are exact prefix sums and Phi_1 = tail of k^{-s_1},
/// Phi_{i+1}(M) = sum_{k>M} k^{-s_{i+1}} Phi_i(k), all as power series in
/// 1/M with rational coefficients. Every tail exponent stays >= 2 for a
/// convergent word, so no logarithms appear.
inline NumericValue zeta_value(const MzvWord& w, int digits = 64) {
    if (!word_convergent(w))
        throw std::domain_error("zeta_value: divergent word " + word_str(w));

    struct Key {
        MzvWord w;
        int digits;
        bool operator<(const Key& o) const { return std::tie(w, digits) < std::tie(o.w, o.digits); }
    };
    static std::map<Key, NumericValue> memo;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(Key{w, digits});
        if (it != memo.end()) return it->second;
    }

    using namespace numeric_detail;
    unsigned long bits = prec_bits(digits);
    PrecisionGuard guard(bits);

    NumericValue out;
    out.value = mpf_class(0, bits);
    if (w.empty()) {
        out.value = 1;
        return out;
    }

    const int order = std::min(3 * digits / 2 + 16, 120);
    const long K = std::max<long>(64, 3L * digits);
    const std::size_t p = w.size();

    // prefix sums of all suffix words up to K: Z[i][k] for suffix starting at i
    std::vector<std::vector<mpf_class>> Z(p + 1, std::vector<mpf_class>(static_cast<std::size_t>(K) + 1));
    for (long k = 0; k <= K; ++k) Z[p][static_cast<std::size_t>(k)] = mpf_class(1, bits);
    for (std::size_t i = p; i-- > 0;) {
        Z[i][0] = mpf_class(0, bits);
        for (long k = 1; k <= K; ++k) {
            mpf_class term(1, bits);
            mpf_class kp(k, bits);
            mpf_class denom(1, bits);
            mpf_pow_ui(denom.get_mpf_t(), kp.get_mpf_t(), static_cast<unsigned long>(w[i]));
            term = Z[i + 1][static_cast<std::size_t>(k) - 1] / denom;  // strict: inner below k
            Z[i][static_cast<std::size_t>(k)] = Z[i][static_cast<std::size_t>(k) - 1] + term;
        }
    }

    mpf_class x = mpf_class(1, bits) / mpf_class(K, bits);
    mpf_class acc = Z[0][static_cast<std::size_t>(K)];
    double bound = 0.0;
    RatSeries phi;
    for (std::size_t i = 0; i < p; ++i) {
        phi = (i == 0) ? tail_power_series(w[0], order) : compose_tail(phi, w[i], order);
        mpf_class phival = eval_series_at(phi, x, bits);
        acc += Z[i + 1][static_cast<std::size_t>(K)] * phival;
        // truncation estimate: magnitude of the last retained series term
        double last = 0.0;
        for (std::size_t m = phi.size(); m-- > 0;) {
            if (phi[m] != 0) {
                mpf_class t = to_mpf(phi[m], bits);
                mpf_class xp(0, bits);
                mpf_pow_ui(xp.get_mpf_t(), x.get_mpf_t(), static_cast<unsigned long>(m));
                t *= xp;
                last = std::abs(t.get_d());
                break;
            }
        }
        double zmag = std::abs(mpf_to_double_safe(Z[i + 1][static_cast<std::size_t>(K)]));
        bound += 4.0 * (zmag + 1.0) * last;
    }
    out.value = acc;
    out.error_bound = bound + std::pow(10.0, -(digits - 2));

    std::lock_guard<std::mutex> lock(mu);
    memo[Key{w, digits}] = out;
    return out;
}

/// Sum of coefficients times products of word values; error bounds
/// propagated to first order.
inline NumericValue eval_combo(const ZCombo& c, int digits = 64) {
    using namespace numeric_detail;
    unsigned long bits = prec_bits(digits);
    PrecisionGuard guard(bits);
    NumericValue out;
    out.value = mpf_class(0, bits);
    for (const auto& [m, coef] : c.terms()) {
        mpf_class prod = to_mpf(coef, bits);
        double relbound = 0.0;
        for (const auto& w : m) {
            NumericValue v = zeta_value(w, digits);
            prod *= v.value;
            double denom = std::max(std::abs(mpf_to_double_safe(v.value)), 1e-300);
            relbound += v.error_bound / denom;
        }
        out.value += prod;
        out.error_bound += relbound * (std::abs(mpf_to_double_safe(prod)) + 1e-300);
    }
    return out;
}

/// Numeric evaluation of an H-polynomial at a concrete N: substitutes the
/// exact H_N and the word values.
inline NumericValue eval_asym_at(const AsymExp& e, long N, int digits = 64) {
    using namespace numeric_detail;
    unsigned long bits = prec_bits(digits);
    PrecisionGuard guard(bits);
    mpf_class h = to_mpf(harmonic(1, N), bits);
    NumericValue out;
    out.value = mpf_class(0, bits);
    mpf_class hpow(1, bits);
    for (int d = 0; d <= e.degree(); ++d) {
        NumericValue c = eval_combo(e.coeff(d), digits);
        out.value += c.value * hpow;
        out.error_bound += c.error_bound * std::pow(std::abs(mpf_to_double_safe(h)) + 1.0,
                                                    static_cast<double>(d));
        hpow *= h;
    }
    return out;
}

/// Partial sum of the series P/prod (k_i)_{n+1}^A with an estimated tail.
struct SeriesValue {
    mpf_class value;
    double error_bound = 0.0;
    bool divergent = false;
};

namespace numeric_detail {

// per-k factor k^r / (k)_{n+1}^A, exact then converted
inline mpf_class power_factor(long k, int r, int n, int A, unsigned long bits) {
    Integer num = int_pow(Integer(k), static_cast<unsigned long>(r));
    Integer poch(1);
    for (int m = 0; m <= n; ++m) poch *= Integer(k + m);
    Integer den = int_pow(poch, static_cast<unsigned long>(A));
    mpf_class fn(num, bits), fd(den, bits);
    return fn / fd;
}

}  // namespace numeric_detail

/// Exact-term partial sum over the simplex K >= k_1 >= ... >= k_p >= 1 (or
/// the full box when decoupled), accumulated at working precision, with a
/// tail estimated from per-variable decay exponents; Richardson
/// extrapolation sharpens the tail when every decay exponent is >= 3.
inline SeriesValue eval_series_direct(const MPoly& P, int n, int A, long K, int digits = 64,
                                      bool decoupled = false) {
    using namespace numeric_detail;
    if (K < 16) throw std::invalid_argument("eval_series_direct: K too small");
    unsigned long bits = prec_bits(digits);
    PrecisionGuard guard(bits);
    const int p = P.arity();

    SeriesValue out;
    out.value = mpf_class(0, bits);
    int min_decay = 1 << 20;
    for (int v = 0; v < p; ++v) min_decay = std::min(min_decay, A * (n + 1) - P.degree_in(v));
    out.divergent = min_decay < 2;

    // factor tables per exponent r: F[r][k]
    int max_r = 0;
    for (const auto& [e, c] : P.terms())
        for (int r : e) max_r = std::max(max_r, r);
    std::vector<std::vector<mpf_class>> F(static_cast<std::size_t>(max_r) + 1);
    for (int r = 0; r <= max_r; ++r) {
        F[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(K) + 1, mpf_class(0, bits));
        for (long k = 1; k <= K; ++k)
            F[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = power_factor(k, r, n, A, bits);
    }

    std::vector<long> checkpoints{K / 8, K / 4, K / 2, K};
    std::vector<mpf_class> S(checkpoints.size(), mpf_class(0, bits));

    if (decoupled) {
        // box sum: per monomial, a product of independent prefix sums
        for (std::size_t ci = 0; ci < checkpoints.size(); ++ci) {
            long Kc = checkpoints[ci];
            std::map<int, mpf_class> prefix;  // r -> sum_{k<=Kc} F[r][k]
            for (int r = 0; r <= max_r; ++r) {
                mpf_class acc(0, bits);
                for (long k = 1; k <= Kc; ++k) acc += F[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
                prefix[r] = acc;
            }
            mpf_class total(0, bits);
            for (const auto& [e, c] : P.terms()) {
                mpf_class t = to_mpf(c, bits);
                for (int r : e) t *= prefix[r];
                total += t;
            }
            S[ci] = total;
        }
    } else {
        // simplex sum: per monomial, nested prefix tables shared by suffix
        std::map<std::vector<int>, std::vector<mpf_class>> suffix_tables;
        std::function<const std::vector<mpf_class>&(const std::vector<int>&)> table =
            [&](const std::vector<int>& sfx) -> const std::vector<mpf_class>& {
            auto it = suffix_tables.find(sfx);
            if (it != suffix_tables.end()) return it->second;
            std::vector<mpf_class> tab(static_cast<std::size_t>(K) + 1, mpf_class(0, bits));
            if (sfx.size() == 1) {
                for (long k = 1; k <= K; ++k)
                    tab[static_cast<std::size_t>(k)] = tab[static_cast<std::size_t>(k) - 1] +
                                                       F[static_cast<std::size_t>(sfx[0])][static_cast<std::size_t>(k)];
            } else {
                std::vector<int> rest(sfx.begin() + 1, sfx.end());
                const auto& inner = table(rest);
                for (long k = 1; k <= K; ++k)
                    tab[static_cast<std::size_t>(k)] =
                        tab[static_cast<std::size_t>(k) - 1] +
                        F[static_cast<std::size_t>(sfx[0])][static_cast<std::size_t>(k)] * inner[static_cast<std::size_t>(k)];
            }
            return suffix_tables.emplace(sfx, std::move(tab)).first->second;
        };
        for (const auto& [e, c] : P.terms()) {
            std::vector<int> sfx(e.begin(), e.end());
            const auto& tab = table(sfx);
            for (std::size_t ci = 0; ci < checkpoints.size(); ++ci)
                S[ci] += to_mpf(c, bits) * tab[static_cast<std::size_t>(checkpoints[ci])];
        }
    }

    if (out.divergent) {
        out.value = S.back();
        out.error_bound = std::numeric_limits<double>::infinity();
        return out;
    }

    double step = std::abs(mpf_to_double_safe(S[3] - S[2]));
    if (min_decay >= 3) {
        // Richardson: S(N) = S(inf) + c_2 N^{-2} + c_3 N^{-3} + ...
        std::vector<mpf_class> R = S;
        double last_correction = 0.0;
        for (int t = 2; t <= 4; ++t) {
            std::vector<mpf_class> next;
            mpf_class w(1, bits);
            mpf_class two(2, bits);
            mpf_pow_ui(w.get_mpf_t(), two.get_mpf_t(), static_cast<unsigned long>(t));
            for (std::size_t i = 0; i + 1 < R.size(); ++i) {
                next.push_back((w * R[i + 1] - R[i]) / (w - 1));
            }
            last_correction = std::abs(mpf_to_double_safe(next.back() - R.back()));
            R = next;
        }
        out.value = R.back();
        out.error_bound = 16.0 * last_correction + step * 1e-4 + std::pow(10.0, -(digits - 4));
    } else {
        // plain truncation; geometric continuation of the last observed block
        out.value = S.back();
        double ratio = std::pow(2.0, 1.0 - min_decay);
        out.error_bound = 4.0 * step * ratio / (1.0 - ratio) + 4.0 * step;
    }
    return out;
}

/// Report of a numeric identity check.
struct VerifyReport {
    bool pass = false;
    std::string lhs, rhs, diff, bound;
    double difference = 0.0;
    double combined_bound = 0.0;
};

inline std::string mpf_str(const mpf_class& v, int digits = 20) {
    mp_exp_t e;
    std::string mant = v.get_str(e, 10, static_cast<std::size_t>(digits));
    if (mant.empty() || mant == "-") return "0";
    bool neg = mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "") + ("0." + d) + "e" + std::to_string(e);
    return out;
}

/// PASS iff |eval_combo(decomp) - direct| <= tol + combined error bounds.
inline VerifyReport verify_identity(const ZCombo& decomp, const MPoly& P, int n, int A, double tol,
                                    long K = 2000, int digits = 64, bool decoupled = false) {
    NumericValue lhs = eval_combo(decomp, digits);
    SeriesValue rhs = eval_series_direct(P, n, A, K, digits, decoupled);
    VerifyReport rep;
    mpf_class diff = lhs.value - rhs.value;
    rep.difference = std::abs(numeric_detail::mpf_to_double_safe(diff));
    rep.combined_bound = lhs.error_bound + rhs.error_bound;
    rep.pass = rep.difference <= tol + rep.combined_bound;
    rep.lhs = mpf_str(lhs.value);
    rep.rhs = mpf_str(rhs.value);
    rep.diff = mpf_str(diff, 8);
    rep.bound = std::to_string(rep.combined_bound);
    return rep;
}

/// pi by Machin's formula (for bound-soundness tests; independent of the
/// zeta machinery).
inline mpf_class compute_pi(int digits = 64) {
    using namespace numeric_detail;
    unsigned long bits = prec_bits(digits + 8);
    PrecisionGuard guard(bits);
    auto atan_inv = [&](unsigned long q) {
        // arctan(1/q) = sum (-1)^m / ((2m+1) q^{2m+1})
        mpf_class acc(0, bits), qq(q, bits);
        mpf_class power = mpf_class(1, bits) / qq;  // q^{-(2m+1)}
        mpf_class qsq = qq * qq;
        double logq = std::log10(static_cast<double>(q));
        long terms = static_cast<long>((digits + 10) / (2 * logq)) + 2;
        for (long m = 0; m <= terms; ++m) {
            mpf_class term = power / mpf_class(2 * m + 1, bits);
            if (m % 2 == 0)
                acc += term;
            else
                acc -= term;
            power /= qsq;
        }
        return acc;
    };
    return 16 * atan_inv(5) - 4 * atan_inv(239);
}

}  // namespace polyzeta
