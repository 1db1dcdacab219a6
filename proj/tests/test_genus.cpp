#include "doctest.h"

#include "fltkit/errors.hpp"
#include "fltkit/formclass.hpp"
#include "fltkit/genus.hpp"
#include "oracles.hpp"

using namespace fltkit;

namespace {

bool is_prime_disc(std::int64_t p)
{
    if (p == -4 || p == 8 || p == -8)
        return true;
    const std::int64_t l = p < 0 ? -p : p;
    if (l % 2 == 0 || !oracle::prime_by_trial(static_cast<std::uint64_t>(l)))
        return false;
    return ((l - 1) / 2) % 2 == 0 ? p == l : p == -l;
}

} // namespace

TEST_CASE("fundamental discriminants")
{
    CHECK(fundamental_discriminant(73) == 73);
    CHECK(fundamental_discriminant(3) == 12);
    CHECK(fundamental_discriminant(-1) == -4);
    CHECK(fundamental_discriminant(2) == 8);
    CHECK(fundamental_discriminant(-7) == -7);
    CHECK_THROWS_AS(fundamental_discriminant(12), DomainError);
    CHECK_THROWS_AS(fundamental_discriminant(1), DomainError);
    CHECK(is_fundamental_discriminant(12));
    CHECK_FALSE(is_fundamental_discriminant(3));
    CHECK_FALSE(is_fundamental_discriminant(72));
}

TEST_CASE("prime discriminant factorization examples")
{
    const auto f12 = prime_disc_factorization(12);
    CHECK(f12.factors == std::vector<std::int64_t>{-4, -3});
    CHECK(f12.t() == 2);
    CHECK(prime_disc_factorization(8).factors == std::vector<std::int64_t>{8});
    CHECK(prime_disc_factorization(88).factors == std::vector<std::int64_t>{-8, -11});
    CHECK(prime_disc_factorization(168).factors == std::vector<std::int64_t>{8, -3, -7});
    CHECK_THROWS_AS(prime_disc_factorization(72), DomainError);
}

TEST_CASE("prime discriminant factorizations multiply back for |D| < 10^5")
{
    for (std::int64_t D = -100000; D < 100000; ++D) {
        if (D == 1 || D == 0 || !is_fundamental_discriminant(D))
            continue;
        const auto f = prime_disc_factorization(D);
        std::int64_t prod = 1;
        int two_part = 0;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            const std::int64_t p = f.factors[i];
            prod *= p;
            CHECK(is_prime_disc(p));
            if (p % 2 == 0)
                ++two_part;
            for (std::size_t k = 0; k < i; ++k)
                CHECK(std::gcd(p, f.factors[k]) % 2 == 1);
        }
        CHECK(prod == D);
        CHECK(two_part <= 1);
    }
}

TEST_CASE("two-rank formulas")
{
    CHECK(two_ranks(12).rank_clplus == 1);
    CHECK(two_ranks(12).rank_cl == 0);
    CHECK(two_ranks(8).rank_clplus == 0);
    CHECK(two_ranks(8).rank_cl == 0);
    CHECK(two_ranks(168).rank_clplus == 2);
    CHECK(two_ranks(168).rank_cl == 1);
    CHECK(two_ranks(-84).rank_cl == 2);
    CHECK(two_ranks(5 * 13).rank_cl == 1);
}

TEST_CASE("genus two-rank equals the two-rank of the form class group, D < 2*10^4")
{
    // The full range up to 10^5 runs in the acceptance binary.
    for (std::int64_t D = 5; D < 20000; ++D) {
        if (!is_fundamental_discriminant(D))
            continue;
        const FormClassGroup G = class_group(D);
        CHECK(two_rank_by_composition(G) == two_ranks(D).rank_clplus);
    }
}

TEST_CASE("classification examples")
{
    const QuadFieldReport r3 = classify_conditions(3);
    CHECK(r3.cond_a);
    CHECK(r3.cond_b == true);
    CHECK(r3.cond_c);
    CHECK(r3.all_hold());
    CHECK(r3.eta == -1);
    const QuadFieldReport r7 = classify_conditions(7);
    CHECK(r7.cond_a);
    CHECK(r7.cond_b == false);
    CHECK(r7.cond_c);
    CHECK(r7.eta == 1);
    const QuadFieldReport r2 = classify_conditions(2);
    CHECK(r2.all_hold());
    CHECK_FALSE(r2.eta.has_value());
    CHECK_FALSE(classify_conditions(73).cond_a);
    CHECK_FALSE(classify_conditions(5).cond_a);
    CHECK(classify_conditions(-1).classification_tag == "imaginary-flt-out-of-scope");
    CHECK(classify_conditions(-2).classification_tag == "imaginary-flt-out-of-scope");
    // Reported as computed; only the tag marks them out of scope.
    CHECK(classify_conditions(-1).all_hold());
    CHECK(classify_conditions(-2).all_hold());
}

TEST_CASE("closed-form classification over squarefree d < 10^4 with 2 ramified")
{
    for (std::int64_t d = 2; d < 10000; ++d) {
        if (!oracle::squarefree_by_trial(d) || d % 4 == 1)
            continue;
        const std::int64_t l = d % 2 == 0 ? d / 2 : d;
        const bool expected = d == 2 || (oracle::prime_by_trial(static_cast<std::uint64_t>(l)) && l % 8 == 3);
        CHECK_MESSAGE(classify_conditions(d).all_hold() == expected, "d = " << d);
    }
}

TEST_CASE("eta sign examples and exhaustive check")
{
    CHECK(eta_sign(3) == -1);
    CHECK(eta_sign(7) == 1);
    CHECK(eta_sign(11) == -1);
    CHECK_THROWS_AS(eta_sign(5), DomainError);
    const auto rep = find_norm_pm2(7);
    REQUIRE(rep.has_value());
    CHECK(rep->a * rep->a - 7 * rep->b * rep->b == 2 * rep->eta);
    for (std::uint64_t l = 3; l < 10000; l += 4) {
        if (!oracle::prime_by_trial(l))
            continue;
        const int e = eta_sign(static_cast<std::int64_t>(l));
        CHECK_MESSAGE((e == -1) == (l % 8 == 3), "l = " << l);
        const int e2 = eta_sign(static_cast<std::int64_t>(2 * l));
        CHECK((e2 == 1 || e2 == -1));
    }
}

TEST_CASE("Odlyzko degree bound")
{
    CHECK(odlyzko_max_degree(BigRat(1000000)) == 6);
    CHECK(odlyzko_max_degree(BigRat(1000)) == 4);
    // 29.009^n e^-8.3185 is about 0.000244, 0.00708, 0.2053 for n = 0, 1, 2.
    CHECK(odlyzko_max_degree(BigRat(1)) == 2);
    CHECK(odlyzko_max_degree(BigRat(1, 10)) == 1);
    CHECK(odlyzko_max_degree(BigRat(1, 1000)) == 0);
    CHECK(odlyzko_max_degree(BigRat(1, 10000)) == -1);
    // Oracle: evaluate the same inequality with MPFR at 200 bits.
    for (long bound : {2L, 30L, 500L, 12345L, 10000000L}) {
        long n = -1;
        for (long k = 0; k < 20; ++k) {
            mpfr_t x, y;
            mpfr_init2(x, 200);
            mpfr_init2(y, 200);
            mpfr_set_str(x, "29.009", 10, MPFR_RNDN);
            mpfr_pow_si(x, x, k, MPFR_RNDN);
            mpfr_set_str(y, "-8.3185", 10, MPFR_RNDN);
            mpfr_exp(y, y, MPFR_RNDN);
            mpfr_mul(x, x, y, MPFR_RNDN);
            if (mpfr_cmp_si(x, bound) < 0)
                n = k;
            mpfr_clear(x);
            mpfr_clear(y);
        }
        CHECK(odlyzko_max_degree(BigRat(bound)) == n);
    }
}
