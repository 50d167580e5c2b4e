#include <catch2/catch_amalgamated.hpp>

#include "polyzeta/partial_fractions.hpp"
#include "polyzeta/symmetry.hpp"

#include <random>

using namespace polyzeta;

TEST_CASE("act matches the defining examples") {
    {
        GroupElement g;
        g.signs = {-1};
        g.perm = {0};
        IndexPoint x{{0}, {2}};
        IndexPoint y = act(g, x, 4);
        CHECK(y.j == std::vector<int>{4});
        CHECK(y.s == std::vector<int>{2});
    }
    {
        GroupElement g;
        g.signs = {1, 1};
        g.perm = {1, 0};
        IndexPoint x{{0, 1}, {3, 5}};
        IndexPoint y = act(g, x, 2);
        CHECK(y.j == std::vector<int>{1, 0});
        CHECK(y.s == std::vector<int>{5, 3});
    }
    {
        GroupElement g;
        g.signs = {-1, 1};
        g.perm = {1, 0};
        IndexPoint x{{0, 1}, {3, 5}};
        IndexPoint y = act(g, x, 2);
        CHECK(y.j == std::vector<int>{1, 2});
        CHECK(y.s == std::vector<int>{5, 3});
    }
    GroupElement g;
    g.signs = {1};
    g.perm = {0};
    CHECK_THROWS_AS(act(g, IndexPoint{{7}, {1}}, 4), std::invalid_argument);
}

TEST_CASE("act is a group action") {
    std::mt19937 rng(5150);
    const int n = 3;
    for (int p : {1, 2, 3}) {
        auto elements = all_group_elements(p);
        std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
        std::uniform_int_distribution<int> jd(0, n), sd(1, 4);
        for (int iter = 0; iter < 70; ++iter) {
            GroupElement g1 = elements[pick(rng)], g2 = elements[pick(rng)];
            IndexPoint x;
            x.j.resize(static_cast<std::size_t>(p));
            x.s.resize(static_cast<std::size_t>(p));
            for (auto& v : x.j) v = jd(rng);
            for (auto& v : x.s) v = sd(rng);
            CHECK(act(g1, act(g2, x, n), n) == act(compose(g1, g2), x, n));
        }
    }
}

TEST_CASE("orbit enumeration") {
    {
        OrbitKey k = orbit(IndexPoint{{1}, {2}}, 2);
        CHECK(k.orbit_size == 1);  // n - 1 = 1 is fixed
        CHECK(k.stabilizer_size == 2);
    }
    {
        OrbitKey k = orbit(IndexPoint{{0, 1}, {3, 3}}, 2);
        CHECK(k.orbit_size == 4);
        std::set<std::vector<int>> js;
        for (const auto& e : k.elements) js.insert(e.j);
        CHECK(js == std::set<std::vector<int>>{{0, 1}, {2, 1}, {1, 0}, {1, 2}});
    }
    {
        // j = 1 is the center for n = 2, so (0,1) keeps a flip stabilizer
        OrbitKey k = orbit(IndexPoint{{0, 1}, {3, 5}}, 2);
        CHECK(k.orbit_size == 4);
        OrbitKey k8 = orbit(IndexPoint{{0, 2}, {3, 5}}, 2);
        CHECK(k8.orbit_size == 8);
    }
}

TEST_CASE("orbit size divides group order") {
    std::mt19937 rng(60);
    for (int p : {1, 2, 3}) {
        long order = (1L << p);
        for (int i = 2; i <= p; ++i) order *= i;
        std::uniform_int_distribution<int> jd(0, 2), sd(1, 3);
        for (int iter = 0; iter < 25; ++iter) {
            IndexPoint x;
            x.j.resize(static_cast<std::size_t>(p));
            x.s.resize(static_cast<std::size_t>(p));
            for (auto& v : x.j) v = jd(rng);
            for (auto& v : x.s) v = sd(rng);
            OrbitKey k = orbit(x, 2);
            CHECK(order % k.orbit_size == 0);
            CHECK(k.orbit_size * k.stabilizer_size == order);
        }
    }
}

TEST_CASE("is_in_Ap basic cases") {
    // P = X with n = 0, A = 2: P(-X) = -P, (-1)^{A(n+1)+1} = -1
    CHECK(is_in_Ap(MPoly::variable(1, 0), 0, 2));

    // P = X1 - X2 with n = 0, A = 2: antisymmetric but parity fails
    MPoly p = MPoly::variable(2, 0) - MPoly::variable(2, 1);
    CHECK_FALSE(is_in_Ap(p, 0, 2));
}

TEST_CASE("family polynomials satisfy the membership test") {
    struct Params {
        int n, p, r, t, eps, A;
    };
    std::vector<Params> cases{
        {2, 1, 0, 0, 0, 2}, {2, 1, 0, 0, 1, 3}, {2, 1, 0, 1, 1, 3}, {2, 2, 0, 0, 1, 3},
        {2, 2, 0, 0, 0, 4}, {2, 2, 0, 1, 0, 4}, {2, 3, 0, 0, 0, 4}, {2, 3, 0, 1, 0, 4},
        {0, 1, 0, 0, 0, 4}, {2, 2, 0, 0, 2, 4},
    };
    for (const auto& c : cases) {
        MPoly P = family_polynomial(c.n, c.p, c.r, c.t, c.eps, c.A);
        INFO("n=" << c.n << " p=" << c.p << " r=" << c.r << " t=" << c.t << " eps=" << c.eps << " A=" << c.A);
        CHECK(is_in_Ap(P, c.n, c.A));
        for (int v = 0; v < c.p; ++v) CHECK(P.degree_in(v) <= c.A * (c.n + 1) - 2);
    }
}

TEST_CASE("family examples expand to the expected polynomials") {
    // (n=2, p=1, r=0, t=0, eps=0) -> X(X+1)(X+2)
    CHECK(family_polynomial(2, 1, 0, 0, 0, 2) == pochhammer(rat(0), 3));

    // (n=0, p=2, r=0, t=0, eps=1) -> X1^2 X2^2 (X1-X2)(X1+X2)
    MPoly x1 = MPoly::variable(2, 0), x2 = MPoly::variable(2, 1);
    MPoly want = x1 * x1 * x2 * x2 * (x1 - x2) * (x1 + x2);
    CHECK(family_polynomial(0, 2, 0, 0, 1, 7) == want);

    // (n=1, p=3, r=0, t=0, eps=1): the depth-3 family numerator
    MPoly y1 = MPoly::variable(3, 0), y2 = MPoly::variable(3, 1), y3 = MPoly::variable(3, 2);
    MPoly half = MPoly::constant(3, rat(1, 2));
    MPoly one = MPoly::constant(3, rat(1));
    MPoly want3 = (y1 + half) * (y2 + half) * (y3 + half) * (y1 - y2) * (y1 - y3) * (y2 - y3) *
                  (y1 + y2 + one) * (y1 + y3 + one) * (y2 + y3 + one) * y1 * (y1 + one) * y2 * (y2 + one) *
                  y3 * (y3 + one);
    CHECK(family_polynomial(1, 3, 0, 0, 1, 5) == want3);
}

TEST_CASE("family constraint violations are reported") {
    // parity violation
    CHECK_THROWS_AS(family_polynomial(2, 1, 0, 0, 1, 2), std::invalid_argument);
    // inequality violation: the depth-3 paper shape with A = 4 fails the corollary bound
    CHECK_THROWS_AS(family_polynomial(1, 3, 0, 0, 1, 4), std::invalid_argument);
}

TEST_CASE("PFTable inherits the group relations from membership") {
    // For P in A_p the coefficients satisfy: flipping j_i multiplies by
    // (-1)^{s_i+1}; permuting (j, s) jointly multiplies by the signature.
    struct Params {
        int n, p, r, t, eps, A;
    };
    std::vector<Params> cases{{2, 2, 0, 0, 1, 3}, {2, 2, 0, 0, 0, 4}, {0, 2, 0, 0, 1, 7}};
    for (const auto& c : cases) {
        MPoly P = family_polynomial(c.n, c.p, c.r, c.t, c.eps, c.A);
        PFTable t = decompose_multivariate(P, c.n, c.A);
        REQUIRE(!t.coeffs().empty());
        for (const auto& [key, coef] : t.coeffs()) {
            for (int i = 0; i < c.p; ++i) {
                auto jf = key.j;
                jf[static_cast<std::size_t>(i)] = c.n - jf[static_cast<std::size_t>(i)];
                int sign = key.s[static_cast<std::size_t>(i)] % 2 == 0 ? -1 : 1;  // (-1)^{s_i+1}
                CHECK(t.coeff(jf, key.s) == coef * rat(sign));
            }
            std::vector<int> jp{key.j[1], key.j[0]};
            std::vector<int> sp{key.s[1], key.s[0]};
            CHECK(t.coeff(jp, sp) == -coef);
        }
    }
}

TEST_CASE("non-members break the coefficient relations") {
    MPoly P = MPoly::variable(2, 0);  // not antisymmetric
    CHECK_FALSE(is_in_Ap(P, 0, 2));
    PFTable t = decompose_multivariate(P, 0, 2);
    bool all_hold = true;
    for (const auto& [key, coef] : t.coeffs()) {
        std::vector<int> jp{key.j[1], key.j[0]};
        std::vector<int> sp{key.s[1], key.s[0]};
        if (t.coeff(jp, sp) != -coef) all_hold = false;
    }
    CHECK_FALSE(all_hold);
}
