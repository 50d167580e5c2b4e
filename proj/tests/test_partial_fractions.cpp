#include <catch2/catch_amalgamated.hpp>

#include "polyzeta/partial_fractions.hpp"
#include "polyzeta/symmetry.hpp"

#include <random>

using namespace polyzeta;

namespace {

MPoly one_poly(int arity) { return MPoly::constant(arity, rat(1)); }

// Evaluate numerator/prod (x_i)_{n+1}^A exactly at a rational point.
Rational direct_value(const MPoly& P, int n, int A, const std::vector<Rational>& x) {
    Rational denom(1);
    for (const auto& xi : x) {
        Rational poch(1);
        for (int m = 0; m <= n; ++m) poch *= xi + rat(m);
        denom *= rat_pow(poch, static_cast<unsigned long>(A));
    }
    return P.eval(x) / denom;
}

MPoly random_poly(std::mt19937& rng, int arity, int max_deg) {
    MPoly p(arity);
    std::uniform_int_distribution<int> nterms(1, 5), expo(0, max_deg), coef(-9, 9);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        MPoly::Expo e(static_cast<std::size_t>(arity));
        for (auto& v : e) v = expo(rng);
        p.add_term(e, rat(coef(rng)));
    }
    if (p.is_zero()) p.add_term(MPoly::Expo(static_cast<std::size_t>(arity), 0), rat(1));
    return p;
}

std::vector<Rational> random_point(std::mt19937& rng, int arity) {
    std::uniform_int_distribution<int> num(5, 200), den(1, 7);
    std::vector<Rational> x;
    for (int i = 0; i < arity; ++i) x.push_back(rat(num(rng) * 7 + den(rng), den(rng) + 1));
    return x;
}

}  // namespace

TEST_CASE("univariate decomposition examples") {
    // 1/(k(k+1)) = 1/k - 1/(k+1)
    UnivariateRow r1 = decompose_univariate(one_poly(1), 1, 1);
    CHECK(r1.entry(0, 1) == rat(1));
    CHECK(r1.entry(1, 1) == rat(-1));

    UnivariateRow r2 = decompose_univariate(one_poly(1), 1, 2);
    CHECK(r2.entry(0, 2) == rat(1));
    CHECK(r2.entry(1, 2) == rat(1));
    CHECK(r2.entry(0, 1) == rat(-2));
    CHECK(r2.entry(1, 1) == rat(2));

    UnivariateRow r3 = decompose_univariate(one_poly(1), 0, 3);
    CHECK(r3.entries.size() == 1);
    CHECK(r3.entry(0, 3) == rat(1));
}

TEST_CASE("univariate degree bound is enforced") {
    MPoly p(1);
    p.add_term({2}, rat(1));  // degree 2 > A(n+1)-1 = 1
    CHECK_THROWS_AS(decompose_univariate(p, 0, 2), std::invalid_argument);
}

TEST_CASE("multivariate table examples") {
    PFTable t = decompose_multivariate(one_poly(2), 1, 1);
    CHECK(t.coeff({0, 0}, {1, 1}) == rat(1));
    CHECK(t.coeff({0, 1}, {1, 1}) == rat(-1));
    CHECK(t.coeff({1, 0}, {1, 1}) == rat(-1));
    CHECK(t.coeff({1, 1}, {1, 1}) == rat(1));

    PFTable t2 = decompose_multivariate(one_poly(1), 0, 2);
    CHECK(t2.coeffs().size() == 1);
    CHECK(t2.coeff({0}, {2}) == rat(1));
}

TEST_CASE("depth-2 preset table recombines") {
    // (k1+1/2)(k2+1/2)(k1-k2-1)_3(k1+k2)_3(k1-1)_4(k2-1)_4 over (k)_2^7
    MPoly P = MPoly::constant(2, rat(1));
    P *= MPoly::variable(2, 0) + MPoly::constant(2, rat(1, 2));
    P *= MPoly::variable(2, 1) + MPoly::constant(2, rat(1, 2));
    P *= pochhammer_linear(MPoly::variable(2, 0) - MPoly::variable(2, 1), rat(-1), 3);
    P *= pochhammer_linear(MPoly::variable(2, 0) + MPoly::variable(2, 1), rat(0), 3);
    P *= pochhammer_linear(MPoly::variable(2, 0), rat(-1), 4);
    P *= pochhammer_linear(MPoly::variable(2, 1), rat(-1), 4);

    PFTable t = decompose_multivariate(P, 1, 7);
    CHECK(t.coeffs().size() <= 196);
    CHECK(t.coeffs().size() >= 50);

    std::mt19937 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        auto x = random_point(rng, 2);
        CHECK(t.eval(x) == direct_value(P, 1, 7, x));
    }
}

TEST_CASE("recombination on random inputs") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> nd(0, 3), Ad(1, 3), pd(1, 2);
    for (int done = 0; done < 50; ++done) {
        int n = nd(rng), A = Ad(rng), p = pd(rng);
        MPoly P = random_poly(rng, p, A * (n + 1) - 1);
        PFTable t = decompose_multivariate(P, n, A);
        for (int iter = 0; iter < 20; ++iter) {
            auto x = random_point(rng, p);
            REQUIRE(t.eval(x) == direct_value(P, n, A, x));
        }
    }
}

TEST_CASE("row sums vanish at convergent degree") {
    PFTable t2 = decompose_multivariate(one_poly(1), 1, 2);
    CHECK(check_row_sums(t2, 0));  // -2 + 2 = 0

    PFTable t1 = decompose_multivariate(one_poly(1), 1, 1);
    CHECK(check_row_sums(t1, 0));  // 1 + (-1) = 0

    // P = k at full degree A(n+1)-1: k/(k)_1^2 = 1/k, single row sum 1 != 0
    MPoly p(1);
    p.add_term({1}, rat(1));
    PFTable tbad = decompose_multivariate(p, 0, 2);
    CHECK_FALSE(check_row_sums(tbad, 0));
}

TEST_CASE("row sums vanish whenever degree <= A(n+1)-2") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> nd(0, 3), Ad(1, 3), pd(1, 2);
    int done = 0;
    while (done < 20) {
        int n = nd(rng), A = Ad(rng), p = pd(rng);
        if (A * (n + 1) - 2 < 0) continue;
        MPoly P = random_poly(rng, p, A * (n + 1) - 2);
        PFTable t = decompose_multivariate(P, n, A);
        for (int v = 0; v < p; ++v) CHECK(check_row_sums(t, v));
        ++done;
    }
}

TEST_CASE("denominator certificate on the lemma cases") {
    {
        PFTable t = decompose_multivariate(one_poly(2), 1, 1);  // n!^{Ap} = 1
        auto cert = denominator_certificate(t);
        CHECK(cert.size() == t.coeffs().size());
    }
    {
        // 2/(k(k+1)(k+2)) = 1/k - 2/(k+1) + 1/(k+2): the H_{n,j} are integers
        MPoly P = MPoly::constant(1, rat(2));
        PFTable t = decompose_multivariate(P, 2, 1);
        CHECK_NOTHROW(denominator_certificate(t));
        CHECK(t.coeff({0}, {1}) == rat(1));
        CHECK(t.coeff({1}, {1}) == rat(-2));
        CHECK(t.coeff({2}, {1}) == rat(1));
    }
    {
        MPoly P = MPoly::constant(2, rat(1));  // n = 1: n!^{Ap} = 1
        PFTable t = decompose_multivariate(P, 1, 2);
        CHECK_NOTHROW(denominator_certificate(t));
    }
}

TEST_CASE("denominator certificate on random scaled polynomials") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> nd(0, 3), Ad(1, 3), pd(1, 2);
    for (int done = 0; done < 10; ++done) {
        int n = nd(rng), A = Ad(rng), p = pd(rng);
        MPoly base = random_poly(rng, p, A * (n + 1) - 1);
        Rational scale = rat_of(int_pow(factorial(static_cast<unsigned long>(n)),
                                        static_cast<unsigned long>(A) * static_cast<unsigned long>(p)));
        PFTable t = decompose_multivariate(base * scale, n, A);
        CHECK_NOTHROW(denominator_certificate(t));
    }
}

TEST_CASE("certificate exponent matches A p - weight") {
    MPoly P = MPoly::constant(1, rat(4));  // n!^{A} = 2^2 with n = 2, A = 2
    PFTable t = decompose_multivariate(P, 2, 2);
    auto cert = denominator_certificate(t);
    CHECK(!cert.empty());
    for (const auto& [key, e] : cert) {
        long w = 0;
        for (int s : key.s) w += s;
        CHECK(e == 2 * 1 - w);
    }
}
