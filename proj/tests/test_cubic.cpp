#include "doctest.h"

#include <set>

#include "fltkit/cubic.hpp"
#include "fltkit/errors.hpp"
#include "oracles.hpp"

using namespace fltkit;

namespace {

// Fraction-free Gaussian elimination determinant.
mpz_class bareiss(std::vector<std::vector<mpz_class>> m)
{
    const std::size_t n = m.size();
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Discriminant of monic X^3 + a X^2 + b X + c as -Res(f, f').
mpz_class disc_by_resultant(const mpz_class& a, const mpz_class& b, const mpz_class& c)
{
    const mpz_class z = 0;
    std::vector<std::vector<mpz_class>> S{
        {1, a, b, c, z},
        {z, 1, a, b, c},
        {3, 2 * a, b, z, z},
        {z, 3, 2 * a, b, z},
        {z, z, 3, 2 * a, b},
    };
    return -bareiss(S);
}

mpz_class middle(const mpz_class& a, unsigned long n, int e1, int e2)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
    return e1 * p - 1 + e2 - a;
}

int mod3(const mpz_class& x)
{
    const mpz_class r = ((x % 3) + 3) % 3;
    return static_cast<int>(r.get_si());
}

} // namespace

TEST_CASE("discriminant examples")
{
    CHECK(cubic_disc(0, 0, -1, -1) == 81);
    const BigPoly f = family_cubic(0, 0, -1, -1);
    CHECK(f == BigPoly({1, -3, 0, 1}));
    CHECK(family_cubic(5, 3, 1, -1)[0] == 1);
    const BigInt d = cubic_disc(1, 4, 1, 1);
    CHECK(d == disc_by_resultant(1, middle(1, 4, 1, 1), -1));
    CHECK(d == cubic_disc_abc(1, 15, -1));
    CHECK(d == -13568);
    CHECK_THROWS_AS(cubic_disc(0, 0, 0, 1), DomainError);
}

TEST_CASE("closed formula against a Sylvester resultant")
{
    auto& g = oracle::rng();
    std::uniform_int_distribution<long> A(-100000, 100000);
    std::uniform_int_distribution<unsigned long> N(0, 20);
    std::uniform_int_distribution<int> S(0, 1);
    for (int i = 0; i < 500; ++i) {
        const mpz_class a = A(g);
        const unsigned long n = N(g);
        const int e1 = S(g) ? 1 : -1, e2 = S(g) ? 1 : -1;
        CHECK(cubic_disc(a, n, e1, e2) == disc_by_resultant(a, middle(a, n, e1, e2), -e2));
        const BigPoly f = family_cubic(a, n, e1, e2);
        CHECK(f.is_monic());
        CHECK(f.degree() == 3);
        CHECK(f[2] == a);
        CHECK(f[1] == middle(a, n, e1, e2));
        CHECK(f[0] == -e2);
    }
    for (int i = 0; i < 200; ++i) {
        const mpz_class a = A(g), b = A(g), c = A(g);
        CHECK(cubic_disc_abc(a, b, c) == disc_by_resultant(a, b, c));
    }
}

TEST_CASE("mod 3 table")
{
    const auto t = mod3_table();
    REQUIRE(t.size() == 24);
    std::set<std::tuple<int, int, int, int>> zeros, keys;
    for (const auto& c : t) {
        keys.emplace(c.a0, c.n0, c.eta1, c.eta2);
        // Oracle: representative a = a0, n = n0 + 2.
        const int r = mod3(disc_by_resultant(c.a0, middle(c.a0, c.n0 + 2, c.eta1, c.eta2), -c.eta2));
        CHECK(c.delta_mod3 == r);
        if (c.delta_mod3 == 0)
            zeros.emplace(c.a0, c.n0, c.eta1, c.eta2);
    }
    CHECK(keys.size() == 24);
    CHECK(zeros == std::set<std::tuple<int, int, int, int>>{{0, 0, -1, -1}, {0, 1, 1, -1}});
    CHECK(t.front().a0 == 0);
    CHECK(t.front().eta1 == -1);
    for (const auto& c : t)
        if (c.a0 == 1 && c.n0 == 0 && c.eta1 == 1 && c.eta2 == 1)
            CHECK(c.delta_mod3 != 0);
}

TEST_CASE("residue mod 3 depends only on the reduced tuple")
{
    auto& g = oracle::rng();
    std::uniform_int_distribution<long> A(-1000000, 1000000);
    std::uniform_int_distribution<unsigned long> N(0, 200);
    std::uniform_int_distribution<int> S(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const mpz_class a = A(g);
        const unsigned long n = N(g);
        const int e1 = S(g) ? 1 : -1, e2 = S(g) ? 1 : -1;
        const int a0 = mod3(a);
        const int n0 = static_cast<int>(n % 2);
        CHECK(mod3(cubic_disc(a, n, e1, e2)) == mod3(cubic_disc(a0, n0, e1, e2)));
    }
}

TEST_CASE("square discriminant identity")
{
    const CaseIIIdentity id = caseII_identity();
    CHECK(id.symbolic);
    CHECK(id.numeric);
    CHECK(id.holds());
    CHECK(id.discriminant == id.square);
    CHECK(id.square == BigPoly({9, 3, 1}).pow(2));
    CHECK(cubic_disc_abc(0, -3, 1) == 81);
    CHECK(cubic_disc_abc(1, -4, 1) == 169);
    for (long a = -50; a <= 50; ++a) {
        const mpz_class s = a * a + 3 * a + 9;
        CHECK(disc_by_resultant(a, -(a + 3), 1) == s * s);
    }
}
