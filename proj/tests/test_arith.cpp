#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "fltkit/arith.hpp"
#include "fltkit/errors.hpp"
#include "oracles.hpp"

using namespace fltkit;

TEST_CASE("isqrt examples and range property")
{
    CHECK(isqrt(BigInt(0)) == 0);
    CHECK(isqrt(BigInt(657)) == 25);
    CHECK(isqrt(pow2(64)) == pow2(32));
    CHECK_THROWS_AS(isqrt(BigInt(-1)), DomainError);
    for (long n = 0; n <= 1000000; ++n) {
        const BigInt r = isqrt(BigInt(n));
        if (!(r * r <= n && (r + 1) * (r + 1) > n)) {
            FAIL("isqrt bound fails at " << n);
        }
    }
}

TEST_CASE("is_square, ord2, exact_log2")
{
    CHECK(is_square(BigInt(0)));
    CHECK(is_square(BigInt(81)));
    CHECK_FALSE(is_square(BigInt(82)));
    CHECK_FALSE(is_square(BigInt(-4)));
    CHECK(ord2(BigInt(12)) == 2);
    CHECK(ord2(BigInt(-8)) == 3);
    CHECK_THROWS_AS(ord2(BigInt(0)), DomainError);
    CHECK(ord_p(BigInt(657), BigInt(3)) == 2);
    CHECK(exact_log2(BigInt(1)) == 0);
    CHECK(exact_log2(pow2(100)) == 100);
    CHECK(exact_log2(BigInt(12)) == -1);
    CHECK(exact_log2(BigInt(0)) == -1);
}

TEST_CASE("is_prime examples")
{
    CHECK(is_prime(BigInt(73)));
    CHECK_FALSE(is_prime(BigInt(1)));
    CHECK_FALSE(is_prime(BigInt(0)));
    CHECK(is_prime(BigInt(2)));
    const BigInt big = pow2(64) + 13;
    CHECK(is_prime(big));
    // Independent oracle: no prime factor below 10^6 and Boost's
    // Miller-Rabin over 64 random bases.
    bool small_factor = false;
    for (unsigned long p = 2; p < 1000000; ++p)
        if (mpz_divisible_ui_p(big.get_mpz_t(), p))
            small_factor = true;
    CHECK_FALSE(small_factor);
    namespace mp = boost::multiprecision;
    const mp::cpp_int b = (mp::cpp_int(1) << 64) + 13;
    std::mt19937 gen(7);
    CHECK(mp::miller_rabin_test(b, 64, gen));
    CHECK_FALSE(is_prime(pow2(64) + 1));
}

TEST_CASE("is_prime agrees with trial division below 2*10^5")
{
    for (std::uint64_t n = 0; n < 200000; ++n)
        if (is_prime(BigInt(static_cast<unsigned long>(n))) != oracle::prime_by_trial(n))
            FAIL("mismatch at " << n);
}

TEST_CASE("is_prime on Carmichael numbers and strong pseudoprimes")
{
    for (unsigned long n : {561UL, 1105UL, 1729UL, 2465UL, 2821UL, 6601UL, 8911UL, 3215031751UL, 2152302898747UL,
                            3474749660383UL, 341550071728321UL})
        CHECK_FALSE(is_prime(BigInt(n)));
}

TEST_CASE("factor examples")
{
    const Factorization f = factor(BigInt(657));
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{BigInt(3), 2});
    CHECK(f.factors[1] == PrimePower{BigInt(73), 1});
    CHECK(factor(BigInt(1)).factors.empty());
    const Factorization g = factor(pow2(20) * 3);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == PrimePower{BigInt(2), 20});
    CHECK(g.factors[1] == PrimePower{BigInt(3), 1});
    CHECK_THROWS_AS(factor(BigInt(0)), DomainError);
}

TEST_CASE("factor matches trial division on random inputs")
{
    std::uniform_int_distribution<std::uint64_t> dist(1, 1ULL << 40);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = dist(oracle::rng());
        const Factorization f = factor(BigInt(static_cast<unsigned long>(n)));
        REQUIRE(f.complete());
        const auto ref = oracle::factor_by_trial(n);
        REQUIRE(f.factors.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            CHECK(f.factors[k].prime == BigInt(static_cast<unsigned long>(ref[k].first)));
            CHECK(f.factors[k].exponent == ref[k].second);
        }
    }
}

TEST_CASE("factor of random semiprimes with factors below 10^9")
{
    std::uniform_int_distribution<unsigned long> dist(100000000UL, 1000000000UL);
    auto next_prime = [](unsigned long x) {
        while (!oracle::prime_by_trial(x))
            ++x;
        return x;
    };
    for (int i = 0; i < 40; ++i) {
        unsigned long p = next_prime(dist(oracle::rng())), q = next_prime(dist(oracle::rng()));
        if (p > q)
            std::swap(p, q);
        if (p == q)
            continue;
        const Factorization f = factor(BigInt(p) * q);
        REQUIRE(f.complete());
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0] == PrimePower{BigInt(p), 1});
        CHECK(f.factors[1] == PrimePower{BigInt(q), 1});
    }
}

TEST_CASE("factor reports incomplete results instead of wrong ones")
{
    FactorOptions opts;
    opts.trial_bound = 100;
    opts.rho_step_cap = 10;
    const BigInt p("1000000000000000003"), q("1000000000000000009");
    const Factorization f = factor(p * q, opts);
    CHECK(f.product() == p * q);
    for (const auto& pp : f.factors)
        CHECK(is_prime(pp.prime));
    if (!f.complete()) {
        for (const auto& u : f.unfactored)
            CHECK_FALSE(is_prime(u));
    }
}

TEST_CASE("squarefree decomposition")
{
    const auto [s, r] = squarefree_decomposition(factor(BigInt(657)));
    CHECK(s == 73);
    CHECK(r == 3);
    const auto [s2, r2] = squarefree_decomposition(factor(BigInt(72)), -1);
    CHECK(s2 == -2);
    CHECK(r2 == 6);
    for (std::int64_t n = 1; n < 5000; ++n)
        CHECK(is_squarefree(n) == oracle::squarefree_by_trial(n));
    CHECK(is_squarefree(-7));
}

TEST_CASE("floor and ceiling helpers")
{
    CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
    CHECK(mod_floor(BigInt(-7), BigInt(3)) == 2);
    CHECK(floor_rat(BigRat(-7, 2)) == -4);
    CHECK(ceil_rat(BigRat(-7, 2)) == -3);
    CHECK(ceil_rat(BigRat(6, 2)) == 3);
    BigInt x, y;
    const BigInt g = ext_gcd(BigInt(240), BigInt(46), x, y);
    CHECK(g == 2);
    CHECK(240 * x + 46 * y == 2);
}
