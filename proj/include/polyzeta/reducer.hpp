#pragma once

#include "polyzeta/asymexp.hpp"
#include "polyzeta/mzv.hpp"
#include "polyzeta/partial_fractions.hpp"
#include "polyzeta/regularize.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polyzeta {

/// One factor 1/(k + shift)^expo of a nested chain.
struct ChainSlot {
    int shift = 0;
    int expo = 1;
    bool operator==(const ChainSlot& o) const { return shift == o.shift && expo == o.expo; }
    auto operator<=>(const ChainSlot& o) const = default;
};

/// coefficient * sum_{N >= k_1 >= ... >= k_q >= 1} prod_i 1/(k_i + a_i)^{s_i},
/// slots listed outermost first. The empty chain is the constant 1.
struct Chain {
    std::vector<ChainSlot> slots;
    Rational coefficient{1};

    int depth() const { return static_cast<int>(slots.size()); }
    int total_shift() const {
        int t = 0;
        for (const auto& sl : slots) t += sl.shift;
        return t;
    }
    int weight() const {
        int w = 0;
        for (const auto& sl : slots) w += sl.expo;
        return w;
    }
};

/// A one-variable rational function in partial-fraction normal form:
/// map (shift, exponent) -> coefficient.
class LocalFraction {
public:
    LocalFraction() = default;
    LocalFraction(int shift, int expo, Rational c = Rational(1)) {
        if (c != 0) terms_[{shift, expo}] = std::move(c);
    }

    const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }

    void add(int shift, int expo, const Rational& c) {
        if (c == 0) return;
        auto key = std::make_pair(shift, expo);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_[key] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    std::map<std::pair<int, int>, Rational> terms_;
};

/// Exact product of two local fractions. Equal shifts add exponents;
/// distinct shifts split through
///   1/((k+u)^s (k+v)^t) = sum_a c_a/(k+u)^a + sum_b d_b/(k+v)^b
/// with denominators dividing powers of (v - u).
inline LocalFraction merge_slot(const LocalFraction& f1, const LocalFraction& f2) {
    LocalFraction out;
    for (const auto& [uv1, c1] : f1.terms()) {
        for (const auto& [uv2, c2] : f2.terms()) {
            int u = uv1.first, s = uv1.second;
            int v = uv2.first, t = uv2.second;
            Rational c = c1 * c2;
            if (u == v) {
                out.add(u, s + t, c);
                continue;
            }
            for (int alpha = 1; alpha <= s; ++alpha) {
                // [w^{s-alpha}] of ((v-u)+w)^{-t}
                int m = s - alpha;
                Rational coef = rat_of(binomial(static_cast<unsigned long>(t + m - 1), static_cast<unsigned long>(m)));
                if (m % 2 == 1) coef = -coef;
                coef /= rat_pow(rat(v - u), static_cast<unsigned long>(t + m));
                out.add(u, alpha, c * coef);
            }
            for (int beta = 1; beta <= t; ++beta) {
                int m = t - beta;
                Rational coef = rat_of(binomial(static_cast<unsigned long>(s + m - 1), static_cast<unsigned long>(m)));
                if (m % 2 == 1) coef = -coef;
                coef /= rat_pow(rat(u - v), static_cast<unsigned long>(s + m));
                out.add(v, beta, c * coef);
            }
        }
    }
    return out;
}

/// Result of lowering one shift by one: the rewritten chains, plus the
/// outer-boundary factor (k_0 = N) which only feeds the error term. Tests
/// evaluate the boundary exactly; production reduction drops it.
struct StepResult {
    std::vector<Chain> chains;
    // boundary term = boundary_coeff / (N + boundary_shift)^{boundary_expo} * (chain over remaining slots)
    std::optional<Chain> outer_chain;
    int outer_shift = 0;
    int outer_expo = 0;
};

/// Telescopes slot i of the chain: sum_{k_i = k_{i+1}}^{k_{i-1}} of the
/// difference (k_i+a)^{-s} - (k_i+a-1)^{-s} collapses to boundary factors
/// attached to the neighbours (k_0 = N, k_{q+1} = 1).
inline StepResult shift_step(const Chain& chain, std::size_t slot) {
    if (slot >= chain.slots.size()) throw std::invalid_argument("shift_step: slot out of range");
    const int a = chain.slots[slot].shift;
    const int s = chain.slots[slot].expo;
    if (a < 1) throw std::invalid_argument("shift_step: slot shift must be >= 1");

    StepResult res;

    Chain lowered = chain;
    lowered.slots[slot].shift = a - 1;
    res.chains.push_back(lowered);

    auto without_slot = [&](std::size_t i) {
        Chain c;
        c.coefficient = chain.coefficient;
        for (std::size_t m = 0; m < chain.slots.size(); ++m)
            if (m != i) c.slots.push_back(chain.slots[m]);
        return c;
    };

    // attach (k_{i-1} + a)^{-s} upward
    if (slot == 0) {
        res.outer_chain = without_slot(0);
        res.outer_shift = a;
        res.outer_expo = s;
    } else {
        const ChainSlot& up = chain.slots[slot - 1];
        LocalFraction merged = merge_slot(LocalFraction(up.shift, up.expo), LocalFraction(a, s));
        for (const auto& [se, coef] : merged.terms()) {
            Chain c = without_slot(slot);
            c.slots[slot - 1] = ChainSlot{se.first, se.second};
            c.coefficient *= coef;
            res.chains.push_back(c);
        }
    }

    // attach -(k_{i+1} + a - 1)^{-s} downward
    if (slot + 1 == chain.slots.size()) {
        Chain c = without_slot(slot);
        c.coefficient *= -Rational(1) / rat_pow(rat(a), static_cast<unsigned long>(s));
        res.chains.push_back(c);
    } else {
        const ChainSlot& down = chain.slots[slot + 1];
        LocalFraction merged = merge_slot(LocalFraction(down.shift, down.expo), LocalFraction(a - 1, s));
        for (const auto& [se, coef] : merged.terms()) {
            Chain c = without_slot(slot);
            c.slots[slot] = ChainSlot{se.first, se.second};  // takes the old slot+1 position
            c.coefficient *= -coef;
            res.chains.push_back(c);
        }
    }
    return res;
}

namespace detail {

inline std::map<std::vector<ChainSlot>, AsymExp>& chain_memo() {
    static std::map<std::vector<ChainSlot>, AsymExp> memo;
    return memo;
}
inline std::mutex& chain_memo_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace detail

/// Reduces a chain to its H-polynomial: repeatedly lowers the largest shift
/// (innermost slot first on ties) so the multiset (depth, total shift)
/// strictly decreases, then resolves the shift-free chain through
/// weak_to_strict and regularization. Memoized on the slot vector with the
/// coefficient factored out.
inline AsymExp reduce_chain(const Chain& chain, int recursion_guard = -1) {
    if (chain.coefficient == 0) return AsymExp::zero();
    if (recursion_guard < 0) recursion_guard = chain.depth() + chain.total_shift() + chain.weight() + 4;
    if (recursion_guard == 0) throw std::logic_error("reduce_chain: termination metric exhausted");

    {
        std::lock_guard<std::mutex> lock(detail::chain_memo_mutex());
        auto it = detail::chain_memo().find(chain.slots);
        if (it != detail::chain_memo().end()) return it->second * chain.coefficient;
    }

    AsymExp unit_result;
    // pick the largest shift; innermost slot on ties
    std::size_t pick = chain.slots.size();
    int best = 0;
    for (std::size_t i = 0; i < chain.slots.size(); ++i) {
        if (chain.slots[i].shift >= best && chain.slots[i].shift > 0) {
            best = chain.slots[i].shift;
            pick = i;
        }
    }

    if (chain.slots.empty()) {
        unit_result = AsymExp::one();
    } else if (pick == chain.slots.size()) {
        // shift-free: weak nested sum of pure powers
        MzvWord word;
        for (const auto& sl : chain.slots) word.push_back(sl.expo);
        unit_result = weak_sum_asym(word);
    } else {
        Chain unit = chain;
        unit.coefficient = Rational(1);
        StepResult step = shift_step(unit, pick);
        for (const auto& c : step.chains) unit_result += reduce_chain(c, recursion_guard - 1);
        // outer boundary term is O(N^{-1} log^{q-1} N): error class
    }

    {
        std::lock_guard<std::mutex> lock(detail::chain_memo_mutex());
        detail::chain_memo()[chain.slots] = unit_result;
    }
    return unit_result * chain.coefficient;
}

/// Exact partial evaluation of a chain at finite N (test oracle).
inline Rational chain_partial(const Chain& chain, long N) {
    if (chain.slots.empty()) return chain.coefficient;
    std::vector<Rational> prefix(static_cast<std::size_t>(N) + 1, Rational(1));
    for (std::size_t level = chain.slots.size(); level-- > 0;) {
        std::vector<Rational> next(static_cast<std::size_t>(N) + 1, Rational(0));
        for (long k = 1; k <= N; ++k) {
            Rational term = Rational(1) / rat_pow(rat(k + chain.slots[level].shift),
                                                  static_cast<unsigned long>(chain.slots[level].expo));
            next[static_cast<std::size_t>(k)] =
                next[static_cast<std::size_t>(k) - 1] + term * prefix[static_cast<std::size_t>(k)];
        }
        prefix = std::move(next);
    }
    return chain.coefficient * prefix[static_cast<std::size_t>(N)];
}

/// Sum of coefficient * chain over all table entries.
inline AsymExp decompose_series(const PFTable& table) {
    AsymExp result;
    for (const auto& [key, c] : table.coeffs()) {
        Chain chain;
        chain.coefficient = c;
        for (std::size_t i = 0; i < key.j.size(); ++i)
            chain.slots.push_back(ChainSlot{key.j[i], key.s[i]});
        result += reduce_chain(chain);
    }
    return result;
}

/// The full engine: P(k_1..k_p)/prod (k_i)_{n+1}^A summed over
/// N >= k_1 >= ... >= k_p >= 1, as an H-polynomial. Convergent inputs
/// (degree <= A(n+1)-2 in each variable) must come out H-free.
inline AsymExp decompose_series(const MPoly& P, int n, int A) {
    PFTable table = decompose_multivariate(P, n, A);
    AsymExp result = decompose_series(table);
    bool convergent = true;
    for (int v = 0; v < P.arity(); ++v)
        if (P.degree_in(v) > A * (n + 1) - 2) convergent = false;
    if (convergent && result.degree() > 0)
        throw std::logic_error("decompose_series: convergent input produced H-divergent output");
    return result;
}

/// Decoupled engine: sums over the full box [1..N]^p instead of the simplex.
/// Each table entry factors exactly into products of
/// (zeta_{N+j_i}(s_i) - partial sums), so the output is a polynomial in
/// depth-1 zeta values; divergent H-parts must cancel for convergent input.
inline ZCombo decompose_decoupled(const MPoly& P, int n, int A) {
    for (int v = 0; v < P.arity(); ++v)
        if (P.degree_in(v) > A * (n + 1) - 2)
            throw std::invalid_argument("decompose_decoupled: degree bound A(n+1)-2 violated in variable " +
                                        std::to_string(v + 1));
    PFTable table = decompose_multivariate(P, n, A);
    AsymExp result;
    for (const auto& [key, c] : table.coeffs()) {
        AsymExp prod = AsymExp::one() * c;
        for (std::size_t i = 0; i < key.j.size(); ++i) {
            int s = key.s[i], j = key.j[i];
            // sum_{k<=N} (k+j)^{-s} = zeta_{N+j}(s) - H_j^{(s)};  zeta_{N+j} -> zeta_N absorbed
            AsymExp factor = regularize_word(MzvWord{s});
            factor -= AsymExp(ZCombo::from_rational(harmonic(s, j)));
            prod = prod * factor;
        }
        result += prod;
    }
    if (result.degree() > 0)
        throw std::logic_error("decompose_decoupled: divergent H-part failed to cancel");
    return result.constant_term();
}

/// Exact partial evaluation of the decoupled box sum (test oracle).
inline Rational decoupled_partial(const MPoly& P, int n, int A, long N) {
    int p = P.arity();
    std::vector<long> k(static_cast<std::size_t>(p), 1);
    Rational acc(0);
    while (true) {
        std::vector<Rational> x;
        for (long v : k) x.emplace_back(v);
        Rational denom(1);
        for (const auto& xi : x) {
            Rational poch(1);
            for (int m = 0; m <= n; ++m) poch *= xi + rat(m);
            denom *= rat_pow(poch, static_cast<unsigned long>(A));
        }
        acc += P.eval(x) / denom;
        int i = 0;
        while (i < p) {
            if (++k[static_cast<std::size_t>(i)] <= N) break;
            k[static_cast<std::size_t>(i)] = 1;
            ++i;
        }
        if (i == p) break;
    }
    return acc;
}

}  // namespace polyzeta
