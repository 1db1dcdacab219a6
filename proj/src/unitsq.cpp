#include "fltkit/unitsq.hpp"

#include "fltkit/errors.hpp"

namespace fltkit {

namespace {

int mod8(std::int64_t d) { return static_cast<int>(((d % 8) + 8) % 8); }

int sqrt_cf_period(std::int64_t d, std::int64_t a0)
{
    std::int64_t m = 0, q = 1, a = a0;
    int period = 0;
    do {
        m = a * q - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        ++period;
    } while (a != 2 * a0);
    return period;
}

// Cube root of eps0 in the maximal order with odd half-coordinates.
std::optional<QuadInt> half_integral_cube_root(const QuadInt& eps0, int norm)
{
    const std::int64_t d = eps0.d();
    const BigInt trace = eps0.trace();
    BigInt u0;
    mpz_root(u0.get_mpz_t(), trace.get_mpz_t(), 3);
    for (BigInt u = u0 - 2; u <= u0 + 2; ++u) {
        if (sgn(u) <= 0 || u * u * u - 3 * norm * u != trace)
            continue;
        const BigInt dv2 = u * u - 4 * norm;
        if (!mpz_divisible_ui_p(dv2.get_mpz_t(), static_cast<unsigned long>(d)))
            continue;
        const BigInt v2 = dv2 / BigInt(static_cast<long>(d));
        if (!is_square(v2))
            continue;
        const BigInt v = isqrt(v2);
        if (mpz_even_p(u.get_mpz_t()) || mpz_even_p(v.get_mpz_t()))
            continue;
        const QuadInt eps(d, u, v);
        if (eps.pow(3) == eps0)
            return eps;
    }
    return std::nullopt;
}

QuadInt residue_pow(const ResidueRing& R, const QuadInt& x, unsigned long e)
{
    QuadInt result = R.reduce(QuadInt::from_int(x.d(), 1)), base = R.reduce(x);
    while (e) {
        if (e & 1)
            result = R.mul(result, base);
        e >>= 1;
        if (e)
            base = R.mul(base, base);
    }
    return result;
}

} // namespace

FundamentalUnit fundamental_unit(std::int64_t d)
{
    if (d < 2 || !is_squarefree(d))
        throw DomainError("fundamental_unit: d = " + std::to_string(d) + " must be squarefree and > 1");
    const std::int64_t a0 = to_i64(isqrt(BigInt(static_cast<long>(d))));
    FundamentalUnit fu;
    fu.d = d;
    fu.cf_period = sqrt_cf_period(d, a0);

    std::int64_t m = 0, q = 1, a = a0;
    BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    for (int k = 0; k <= 2 * fu.cf_period + 1; ++k) {
        const BigInt p = BigInt(static_cast<long>(a)) * pm1 + pm2;
        const BigInt qq = BigInt(static_cast<long>(a)) * qm1 + qm2;
        const BigInt n = p * p - BigInt(static_cast<long>(d)) * qq * qq;
        if (n == 1 || n == -1) {
            fu.norm = n > 0 ? 1 : -1;
            fu.epsilon = QuadInt::from_xy(d, p, qq);
            break;
        }
        pm2 = pm1;
        qm2 = qm1;
        pm1 = p;
        qm1 = qq;
        m = a * q - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
    }
    if (fu.norm == 0)
        throw InternalError("fundamental_unit: no unit found within two periods for d = " + std::to_string(d));
    if (mod8(d) == 5) {
        if (auto root = half_integral_cube_root(fu.epsilon, fu.norm))
            fu.epsilon = *root;
    }
    return fu;
}

std::optional<QuadInt> sqrt_exact(const QuadInt& x)
{
    const std::int64_t d = x.d();
    if (x.is_zero())
        return x;
    const BigInt n = x.norm();
    if (!is_square(n))
        return std::nullopt;
    const BigInt r = isqrt(n);
    for (const BigInt& ny : {r, BigInt(-r)}) {
        const BigInt u2 = x.a() + 2 * ny;
        if (!is_square(u2))
            continue;
        const BigInt u = isqrt(u2);
        for (const BigInt& us : {u, BigInt(-u)}) {
            BigInt v;
            if (sgn(us) != 0) {
                if (!mpz_divisible_p(x.b().get_mpz_t(), us.get_mpz_t()))
                    continue;
                v = x.b() / us;
            } else {
                const BigInt num = 2 * x.a();
                if (sgn(x.b()) != 0 || !mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(d < 0 ? -d : d)))
                    continue;
                BigInt v2 = num / BigInt(static_cast<long>(d));
                if (!is_square(v2))
                    continue;
                v = isqrt(v2);
            }
            try {
                const QuadInt y(d, us, v);
                if (y * y == x)
                    return y;
            } catch (const DomainError&) {
            }
        }
    }
    return std::nullopt;
}

QuadInt CompCritReport::materialize(const SymbolicUnit& u) const
{
    QuadInt x = base_unit.pow(u.exponent);
    return u.sign ? -x : x;
}

CompCritReport compcrit_test(std::int64_t d, const CompCritOptions& opts)
{
    if (opts.v_index == 0 || opts.v_index % 2 == 0)
        throw DomainError("compcrit_test: V must have odd index in the unit group");
    CompCritReport rep;
    rep.d = d;
    const PrimesAbove2 primes = prime_above_2(d);
    rep.splitting = primes.splitting;
    if (primes.splitting == Splitting::split)
        return rep;
    rep.applicable = true;
    const FundamentalUnit fu = fundamental_unit(d);
    rep.base_unit = fu.epsilon.pow(opts.v_index);

    const QuadIdeal I = QuadIdeal::from_generators(d, {QuadInt::from_int(d, 16)}) * primes.ideals.front();
    rep.modulus_norm = I.norm();
    const ResidueRing R(I);
    const unsigned long m = R.element_order(rep.base_unit);
    rep.epsilon_order_mod_16P = m;
    if (m % 2 == 0) {
        const QuadInt half = residue_pow(R, rep.base_unit, m / 2);
        rep.minus_one_in_epsilon_image = half == R.reduce(QuadInt::from_int(d, -1));
    }
    if (rep.minus_one_in_epsilon_image)
        rep.U_generators.push_back({1, m / 2});
    else
        rep.U_generators.push_back({0, m});
    rep.all_squares = true;
    for (const auto& g : rep.U_generators)
        rep.all_squares = rep.all_squares && g.is_square();
    return rep;
}

bool is_s_unit_2(const QuadRat& x)
{
    if (x.is_zero())
        return false;
    const BigInt m = x.denominator();
    if (exact_log2(m) < 0)
        return false;
    const QuadInt y = (x * QuadRat::from_rat(x.d(), BigRat(m))).to_quadint();
    return exact_log2(abs(y.norm())) >= 0;
}

DescentResult descend(const QuadRat& lambda, const QuadIdeal& P, const DescentOptions& opts)
{
    const std::int64_t d = lambda.d();
    const QuadRat one = QuadRat::from_rat(d, 1);
    if (lambda.is_zero() || lambda == one)
        throw DomainError("descend: lambda must not be 0 or 1");
    const QuadRat mu = one - lambda;
    if (opts.require_s_unit && (!is_s_unit_2(lambda) || !is_s_unit_2(mu)))
        throw DomainError("descend: (lambda, 1 - lambda) is not an S-unit solution");

    DescentResult r;
    r.ord_two = ord_at(QuadRat::from_rat(d, 2), P);
    if (ord_at(mu, P) != 0)
        throw DomainError("descend: requires ord_P(1 - lambda) = 0");
    r.ord_lambda = ord_at(lambda, P);
    if (!(r.ord_lambda > 4 * r.ord_two))
        throw DomainError("descend: requires ord_P(lambda) > 4 ord_P(2), got " + std::to_string(r.ord_lambda) +
                          " <= " + std::to_string(4 * r.ord_two));
    if (!mu.is_integral())
        throw DomainError("descend: 1 - lambda is not integral");
    QuadInt eps;
    if (opts.epsilon) {
        eps = *opts.epsilon;
        if (QuadRat(eps * eps) != mu)
            throw DomainError("descend: supplied epsilon does not square to 1 - lambda");
    } else {
        auto root = sqrt_exact(mu.to_quadint());
        if (!root)
            throw DomainError("descend: requires 1 - lambda to be a square");
        eps = *root;
    }
    const BigInt ne = eps.norm();
    if (ne != 1 && ne != -1)
        throw DomainError("descend: epsilon is not a unit");

    const QuadRat e(eps);
    r.lambda1 = one + e;
    r.lambda2 = one - e;
    if (ord_at(r.lambda1, P) < ord_at(r.lambda2, P)) {
        eps = -eps;
        std::swap(r.lambda1, r.lambda2);
    }
    r.epsilon = eps;
    const QuadRat l2sq = r.lambda2 * r.lambda2;
    r.lambda_prime = r.lambda1 * r.lambda1 / l2sq;
    r.mu_prime = QuadRat::from_rat(d, -4) * QuadRat(eps) / l2sq;

    if (r.lambda_prime + r.mu_prime != one)
        throw InternalError("descend: lambda' + mu' != 1");
    if (opts.require_s_unit && (!is_s_unit_2(r.lambda_prime) || !is_s_unit_2(r.mu_prime)))
        throw InternalError("descend: output is not an S-unit solution");
    r.ord_lambda_prime = ord_at(r.lambda_prime, P);
    r.ord_mu_prime = ord_at(r.mu_prime, P);
    if (r.ord_lambda_prime != 2 * r.ord_lambda - 4 * r.ord_two || r.ord_mu_prime != 0)
        throw InternalError("descend: valuation law violated");
    return r;
}

} // namespace fltkit
