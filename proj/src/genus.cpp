#include "fltkit/genus.hpp"

#include <algorithm>
#include <cstdlib>

#include "fltkit/errors.hpp"
#include "fltkit/highprec.hpp"

namespace fltkit {

namespace {

int mod4(std::int64_t d) { return static_cast<int>(((d % 4) + 4) % 4); }
int mod8(std::int64_t d) { return static_cast<int>(((d % 8) + 8) % 8); }

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

} // namespace

std::int64_t fundamental_discriminant(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw DomainError("fundamental_discriminant: d = " + std::to_string(d) + " is not squarefree");
    return mod4(d) == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    if (mod4(D) == 1)
        return is_squarefree(D);
    if (mod4(D) != 0)
        return false;
    const std::int64_t m = D / 4;
    return (mod4(m) == 2 || mod4(m) == 3) && is_squarefree(m);
}

PrimeDiscFactorization prime_disc_factorization(std::int64_t D)
{
    if (!is_fundamental_discriminant(D))
        throw DomainError("prime_disc_factorization: " + std::to_string(D) + " is not a fundamental discriminant");
    PrimeDiscFactorization out;
    out.D = D;
    std::int64_t odd = abs64(D);
    while (odd % 2 == 0)
        odd /= 2;
    std::vector<std::int64_t> odd_factors;
    std::int64_t odd_product = 1;
    const Factorization f = factor(BigInt(static_cast<long>(odd)));
    for (const auto& pp : f.factors) {
        const std::int64_t l = to_i64(pp.prime);
        const std::int64_t pstar = (l % 4 == 1) ? l : -l;
        odd_factors.push_back(pstar);
        odd_product *= pstar;
    }
    if (D % 2 == 0)
        out.factors.push_back(D / odd_product);
    out.factors.insert(out.factors.end(), odd_factors.begin(), odd_factors.end());
    return out;
}

TwoRanks two_ranks(std::int64_t D)
{
    const PrimeDiscFactorization f = prime_disc_factorization(D);
    const int t = f.t();
    const bool some_negative =
        std::any_of(f.factors.begin(), f.factors.end(), [](std::int64_t x) { return x < 0; });
    TwoRanks r;
    r.rank_clplus = t - 1;
    r.rank_cl = (D < 0 || !some_negative) ? t - 1 : t - 2;
    return r;
}

std::optional<NormTwoRepresentation> find_norm_pm2(std::int64_t d)
{
    if (d < 2 || !is_squarefree(d))
        throw DomainError("find_norm_pm2: d must be squarefree and > 1");
    // Continued fraction of sqrt(d): m, q, a with a_0 = isqrt(d).
    const std::int64_t a0 = to_i64(isqrt(BigInt(static_cast<long>(d))));
    std::int64_t m = 0, q = 1, a = a0;
    BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    bool period_closed = false;
    for (int extra = 0;;) {
        const BigInt p = BigInt(static_cast<long>(a)) * pm1 + pm2;
        const BigInt qq = BigInt(static_cast<long>(a)) * qm1 + qm2;
        const BigInt n = p * p - BigInt(static_cast<long>(d)) * qq * qq;
        if (n == 2 || n == -2)
            return NormTwoRepresentation{p, qq, n > 0 ? 1 : -1};
        pm2 = pm1;
        qm2 = qm1;
        pm1 = p;
        qm1 = qq;
        if (period_closed && ++extra > 1)
            return std::nullopt;
        m = a * q - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        if (a == 2 * a0)
            period_closed = true;
    }
}

int eta_sign(std::int64_t d)
{
    const std::int64_t l = (d % 2 == 0) ? d / 2 : d;
    if (d < 3 || l < 3 || l % 4 != 3 || !is_prime(BigInt(static_cast<long>(l))))
        throw DomainError("eta_sign: d = " + std::to_string(d) + " is not l or 2l with l prime = 3 mod 4");
    const auto rep = find_norm_pm2(d);
    if (!rep)
        throw InternalError("eta_sign: no element of norm +-2 within one period for d = " + std::to_string(d));
    return rep->eta;
}

QuadFieldReport classify_conditions(std::int64_t d)
{
    QuadFieldReport r;
    r.d = d;
    r.D = fundamental_discriminant(d);
    const PrimeDiscFactorization f = prime_disc_factorization(r.D);
    const TwoRanks ranks = two_ranks(r.D);
    r.t = f.t();
    r.two_rank_clplus = ranks.rank_clplus;
    r.two_rank_cl = ranks.rank_cl;
    r.cond_a = mod4(d) == 2 || mod4(d) == 3;
    r.cond_c = ranks.rank_cl == 0;

    if (!r.cond_a) {
        r.classification_tag = mod8(d) == 1 ? "2-split" : "2-inert";
        if (ranks.rank_clplus == 0)
            r.cond_b = true;
        return r;
    }
    if (ranks.rank_clplus == 0) {
        // h+ odd: its 2-part is 1.
        r.cond_b = true;
        r.classification_tag = d < 0 ? "imaginary-flt-out-of-scope" : "narrow-class-number-odd";
        return r;
    }
    if (!r.cond_c) {
        r.classification_tag = "class-number-even";
        return r;
    }
    // h odd, h+ even: d = l or 2l, l = 3 (mod 4), and the 2-part of h+ is 2.
    // The ramified prime has order 2 exactly when its positive generator has
    // norm -2.
    r.eta = eta_sign(d);
    r.cond_b = *r.eta == -1;
    r.classification_tag = *r.cond_b ? "ell-or-2ell-3-mod-8" : "ell-or-2ell-7-mod-8";
    return r;
}

long odlyzko_max_degree(const BigRat& bound)
{
    if (sgn(bound) <= 0)
        throw DomainError("odlyzko_max_degree: bound must be positive");
    const BigRat base(29009, 1000), shift(83185, 10000);
    long best = -1;
    for (long n = 0;; ++n) {
        // n log(29.009) - 8.3185 < log(bound)
        const auto decided = decide_with_escalation([&](long bits) -> std::optional<bool> {
            const HighPrecReal lhs = highprec_log(base, bits) * BigInt(n) -
                                     HighPrecReal::from_rational(shift, bits);
            const HighPrecReal rhs = highprec_log(bound, bits);
            if (lhs.certainly_less(rhs))
                return true;
            if (lhs.certainly_greater(rhs))
                return false;
            return std::nullopt;
        });
        if (!decided)
            throw InternalError("odlyzko_max_degree: comparison undecided at maximum precision");
        if (!*decided)
            return best;
        best = n;
    }
}

} // namespace fltkit
