#include "fltkit/arith.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "fltkit/errors.hpp"

namespace fltkit {

BigInt isqrt(const BigInt& n)
{
    if (sgn(n) < 0)
        throw DomainError("isqrt: negative argument " + n.get_str());
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const BigInt& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

unsigned long ord2(const BigInt& n)
{
    if (sgn(n) == 0)
        throw DomainError("ord2: zero has infinite valuation");
    return mpz_scan1(n.get_mpz_t(), 0);
}

unsigned long ord_p(const BigInt& n, const BigInt& p)
{
    if (sgn(n) == 0)
        throw DomainError("ord_p: zero has infinite valuation");
    BigInt m = abs(n);
    unsigned long e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

BigInt pow2(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

BigInt ipow(const BigInt& base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

long exact_log2(const BigInt& n)
{
    if (sgn(n) <= 0)
        return -1;
    if (mpz_popcount(n.get_mpz_t()) != 1)
        return -1;
    return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
}

std::int64_t to_i64(const BigInt& n)
{
    if (!mpz_fits_slong_p(n.get_mpz_t()))
        throw UnsupportedError("integer does not fit in 64 bits: " + n.get_str());
    return mpz_get_si(n.get_mpz_t());
}

// --------------------------------------------------------------------------
// Primality

namespace {

constexpr unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

// One strong-probable-prime round; n odd, n > 3, n - 1 = d * 2^s.
bool strong_probable_prime(const BigInt& n, const BigInt& nm1, const BigInt& d,
                           unsigned long s, const BigInt& base)
{
    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

} // namespace

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    const BigInt nm1 = n - 1;
    const unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    BigInt d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), nm1.get_mpz_t(), s);

    for (unsigned base : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) {
        if (!strong_probable_prime(n, nm1, d, s, BigInt(base)))
            return false;
    }
    if (mpz_cmp_ui(n.get_mpz_t(), 0) > 0 && mpz_fits_ulong_p(n.get_mpz_t()) &&
        mpz_get_ui(n.get_mpz_t()) < kDeterministicPrimeBound)
        return true;

    // Bases in [2, n-2] from a generator seeded by the low bits of n.
    const std::uint64_t seed = mpz_getlimbn(n.get_mpz_t(), 0) ^ 0x9e3779b97f4a7c15ULL;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(BigInt(static_cast<unsigned long>(seed)));
    const BigInt span = n - 3;
    for (int round = 0; round < 64; ++round) {
        BigInt base = rng.get_z_range(span) + 2;
        if (!strong_probable_prime(n, nm1, d, s, base))
            return false;
    }
    return true;
}

// --------------------------------------------------------------------------
// Factoring

BigInt Factorization::product() const
{
    BigInt p = 1;
    for (const auto& f : factors)
        p *= ipow(f.prime, f.exponent);
    for (const auto& u : unfactored)
        p *= u;
    return p;
}

namespace {

// Brent's variant of Pollard rho with batched gcds. Returns a nontrivial
// factor or 0 when the step budget runs out.
BigInt rho_find_factor(const BigInt& n, unsigned long& budget)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (unsigned long c = 1; budget > 0; ++c) {
        BigInt y = 2, x, q = 1, g = 1, ys, tmp;
        unsigned long r = 1;
        constexpr unsigned long m = 128;
        auto step = [&](BigInt& v) {
            mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
            mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                step(y);
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    step(y);
                    tmp = x - y;
                    mpz_abs(tmp.get_mpz_t(), tmp.get_mpz_t());
                    q = (q * tmp) % n;
                }
                budget = budget > lim ? budget - lim : 0;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Batched product collapsed; replay single steps.
            do {
                step(ys);
                tmp = x - ys;
                mpz_abs(tmp.get_mpz_t(), tmp.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1)
            return g;
    }
    return 0;
}

void split(const BigInt& n, std::map<BigInt, unsigned>& primes, std::vector<BigInt>& rest,
           unsigned long& budget)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++primes[n];
        return;
    }
    BigInt root;
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2;; ++k) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                std::map<BigInt, unsigned> sub;
                std::vector<BigInt> subrest;
                split(root, sub, subrest, budget);
                for (auto& [p, e] : sub)
                    primes[p] += static_cast<unsigned>(e * k);
                for (auto& r : subrest)
                    for (unsigned long i = 0; i < k; ++i)
                        rest.push_back(r);
                return;
            }
        }
    }
    BigInt f = rho_find_factor(n, budget);
    if (f == 0) {
        rest.push_back(n);
        return;
    }
    split(f, primes, rest, budget);
    split(n / f, primes, rest, budget);
}

} // namespace

Factorization factor(const BigInt& n, const FactorOptions& opts)
{
    if (sgn(n) <= 0)
        throw DomainError("factor: argument must be positive, got " + n.get_str());
    std::map<BigInt, unsigned> primes;
    BigInt m = n;
    const unsigned long tz = mpz_scan1(m.get_mpz_t(), 0);
    if (tz > 0) {
        primes[2] = static_cast<unsigned>(tz);
        mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), tz);
    }
    for (unsigned long p = 3; p <= opts.trial_bound && m > 1; p += 2) {
        if (BigInt(p) * p > m)
            break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e)
            primes[BigInt(p)] += e;
    }
    Factorization out;
    if (m > 1) {
        unsigned long budget = opts.rho_step_cap;
        if (m <= BigInt(opts.trial_bound) * opts.trial_bound)
            ++primes[m];
        else
            split(m, primes, out.unfactored, budget);
    }
    for (auto& [p, e] : primes)
        out.factors.push_back({p, e});
    std::sort(out.unfactored.begin(), out.unfactored.end());
    return out;
}

std::pair<BigInt, BigInt> squarefree_decomposition(const Factorization& f, int sign)
{
    if (!f.complete())
        throw DomainError("squarefree_decomposition: incomplete factorization");
    BigInt s = sign < 0 ? -1 : 1;
    BigInt r = 1;
    for (const auto& pp : f.factors) {
        if (pp.exponent % 2)
            s *= pp.prime;
        r *= ipow(pp.prime, pp.exponent / 2);
    }
    return {s, r};
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    if (m % 4 == 0)
        return false;
    if (m % 2 == 0)
        m /= 2;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0)
                return false;
        }
    }
    return true;
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y)
{
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    if (sgn(b) == 0)
        throw DomainError("floor_div: division by zero");
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& b)
{
    if (sgn(b) == 0)
        throw DomainError("mod_floor: modulus zero");
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt floor_rat(const BigRat& x)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

BigInt ceil_rat(const BigRat& x)
{
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const BigRat& x)
{
    BigRat c = x;
    c.canonicalize();
    return c.get_str();
}

} // namespace fltkit
