#pragma once

#include "polyzeta/mpoly.hpp"
#include "polyzeta/mzv.hpp"
#include "polyzeta/rational.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace polyzeta {

/// Element of (Z/2Z)^p semidirect S_p acting on index points (j, s).
/// signs[m] in {-1,+1} flips slot m (j -> n-j); perm[m] is the position slot
/// m is sent to. Sign flips act slotwise first, then the permutation
/// relabels positions; compose() is derived so that
/// act(g1, act(g2, x)) == act(compose(g1, g2), x), and the property test
/// pins the convention.
struct GroupElement {
    std::vector<int> signs;
    std::vector<int> perm;

    static GroupElement identity(int p) {
        GroupElement g;
        g.signs.assign(static_cast<std::size_t>(p), 1);
        g.perm.resize(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) g.perm[static_cast<std::size_t>(i)] = i;
        return g;
    }

    int p() const { return static_cast<int>(signs.size()); }

    int signature() const { return permutation_sign(perm); }

    bool operator<(const GroupElement& o) const {
        return std::tie(signs, perm) < std::tie(o.signs, o.perm);
    }
};

inline GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    if (g1.p() != g2.p()) throw std::invalid_argument("compose: size mismatch");
    std::size_t p = g1.signs.size();
    GroupElement g;
    g.signs.resize(p);
    g.perm.resize(p);
    for (std::size_t m = 0; m < p; ++m) {
        g.perm[m] = g1.perm[static_cast<std::size_t>(g2.perm[m])];
        g.signs[m] = g1.signs[static_cast<std::size_t>(g2.perm[m])] * g2.signs[m];
    }
    return g;
}

/// Index point (j, s) in {0..n}^p x {1..A}^p.
struct IndexPoint {
    std::vector<int> j, s;
    bool operator<(const IndexPoint& o) const { return std::tie(j, s) < std::tie(o.j, o.s); }
    bool operator==(const IndexPoint& o) const { return j == o.j && s == o.s; }
};

/// Applies epsilon to j-slots (j or n-j) and the permutation to positions;
/// s is permuted, never sign-flipped.
inline IndexPoint act(const GroupElement& g, const IndexPoint& x, int n) {
    std::size_t p = x.j.size();
    if (g.signs.size() != p) throw std::invalid_argument("act: size mismatch");
    for (int jv : x.j)
        if (jv < 0 || jv > n) throw std::invalid_argument("act: j out of range");
    IndexPoint y;
    y.j.resize(p);
    y.s.resize(p);
    for (std::size_t m = 0; m < p; ++m) {
        int jm = g.signs[m] == 1 ? x.j[m] : n - x.j[m];
        y.j[static_cast<std::size_t>(g.perm[m])] = jm;
        y.s[static_cast<std::size_t>(g.perm[m])] = x.s[m];
    }
    return y;
}

struct OrbitKey {
    IndexPoint representative;  // lexicographic minimum
    long orbit_size = 0;
    long stabilizer_size = 0;
    std::vector<IndexPoint> elements;
};

inline std::vector<GroupElement> all_group_elements(int p) {
    std::vector<GroupElement> out;
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::sort(perm.begin(), perm.end());
    do {
        for (int mask = 0; mask < (1 << p); ++mask) {
            GroupElement g;
            g.perm = perm;
            g.signs.resize(static_cast<std::size_t>(p));
            for (int m = 0; m < p; ++m) g.signs[static_cast<std::size_t>(m)] = (mask >> m) & 1 ? -1 : 1;
            out.push_back(g);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline OrbitKey orbit(const IndexPoint& x, int n) {
    int p = static_cast<int>(x.j.size());
    std::set<IndexPoint> seen;
    for (const auto& g : all_group_elements(p)) seen.insert(act(g, x, n));
    OrbitKey key;
    key.elements.assign(seen.begin(), seen.end());
    key.representative = key.elements.front();
    key.orbit_size = static_cast<long>(key.elements.size());
    long order = (1L << p);
    for (int i = 2; i <= p; ++i) order *= i;
    key.stabilizer_size = order / key.orbit_size;
    return key;
}

/// Membership test for the antisymmetric well-poised family: P must be
/// S_p-antisymmetric and satisfy P(-X_1-n, X_2, ...) = (-1)^{A(n+1)+1} P.
/// With antisymmetry in hand, the parity condition in the first variable
/// implies the others.
inline bool is_in_Ap(const MPoly& P, int n, int A) {
    int p = P.arity();
    // adjacent transpositions generate S_p
    for (int i = 0; i + 1 < p; ++i) {
        std::vector<int> perm(static_cast<std::size_t>(p));
        for (int m = 0; m < p; ++m) perm[static_cast<std::size_t>(m)] = m;
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
        if (!(P.permute_variables(perm) == -P)) return false;
    }
    int parity = (static_cast<long>(A) * (n + 1) + 1) % 2 == 0 ? 1 : -1;
    MPoly flipped = P.substitute_affine(0, rat(-1), rat(-n));
    return flipped == P * Rational(parity);
}

/// Numerator of the corollary family:
///   prod_i (X_i + n/2)^eps
///   * prod_{i<j} (X_i - X_j - r)_{2r+1} (X_i + X_j + n - r)_{2r+1}
///   * prod_i (X_i - t)_{2t+n+1}.
/// Parameter constraints are checked against the supplied A.
inline MPoly family_polynomial(int n, int p, int r, int t, int eps, int A) {
    if (n < 0 || p < 1 || r < 0 || t < 0 || eps < 0 || A < 1)
        throw std::invalid_argument("family_polynomial: parameters out of range");
    long lhs_parity = (static_cast<long>(A) + 1) * (n + 1) + 1;
    if ((eps - lhs_parity) % 2 != 0)
        throw std::invalid_argument("family_polynomial: parity constraint eps == (A+1)(n+1)+1 mod 2 fails");
    long lhs = eps + (4L * r + 2) * p + 2L * t;
    long rhs = (static_cast<long>(A) - 1) * (n + 1) + 4L * r;
    if (lhs > rhs)
        throw std::invalid_argument("family_polynomial: eps + (4r+2)p + 2t <= (A-1)(n+1) + 4r fails (" +
                                    std::to_string(lhs) + " > " + std::to_string(rhs) + ")");

    MPoly P = MPoly::constant(p, rat(1));
    Rational half_n = rat(n, 2);
    for (int i = 0; i < p; ++i) {
        MPoly f = MPoly::variable(p, i) + MPoly::constant(p, half_n);
        for (int e = 0; e < eps; ++e) P *= f;
    }
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            MPoly diff = MPoly::variable(p, i) - MPoly::variable(p, j);
            P *= pochhammer_linear(diff, rat(-r), 2L * r + 1);
            MPoly sum = MPoly::variable(p, i) + MPoly::variable(p, j);
            P *= pochhammer_linear(sum, rat(n - r), 2L * r + 1);
        }
    for (int i = 0; i < p; ++i)
        P *= pochhammer_linear(MPoly::variable(p, i), rat(-t), 2L * t + n + 1);
    return P;
}

}  // namespace polyzeta
