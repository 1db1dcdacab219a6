#include "fltkit/highprec.hpp"

#include <algorithm>

#include "fltkit/errors.hpp"

namespace fltkit {

namespace {

BigRat dyadic_value(const BigInt& m, long e)
{
    if (e >= 0) {
        BigInt v;
        mpz_mul_2exp(v.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(e));
        return BigRat(v);
    }
    BigRat r(m, pow2(static_cast<unsigned long>(-e)));
    r.canonicalize();
    return r;
}

// round(x * 2^bits) to nearest, ties upward.
BigInt round_scaled(const BigRat& x, long bits)
{
    BigRat s = x;
    if (bits >= 0)
        mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(bits));
    else
        mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(-bits));
    return floor_rat(s + BigRat(1, 2));
}

// Upper bound for r >= 0 on the 2^-grid lattice.
BigRat relax_up(const BigRat& r, long grid)
{
    if (sgn(r) == 0)
        return r;
    BigRat s = r;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(grid));
    BigRat out(ceil_rat(s), pow2(static_cast<unsigned long>(grid)));
    out.canonicalize();
    return out;
}

BigRat pow2_rat(long e)
{
    if (e >= 0)
        return BigRat(pow2(static_cast<unsigned long>(e)));
    BigRat r(1, pow2(static_cast<unsigned long>(-e)));
    return r;
}

} // namespace

HighPrecReal HighPrecReal::dyadic(BigInt mantissa, long exponent)
{
    HighPrecReal r;
    r.mantissa_ = std::move(mantissa);
    r.exponent_ = exponent;
    return r;
}

HighPrecReal HighPrecReal::from_rational(const BigRat& x, long bits)
{
    HighPrecReal r;
    r.mantissa_ = round_scaled(x, bits);
    r.exponent_ = -bits;
    r.radius_ = abs(x - r.center());
    return r;
}

HighPrecReal HighPrecReal::from_interval(const BigRat& lo, const BigRat& hi, long bits)
{
    if (lo > hi)
        throw DomainError("from_interval: empty interval");
    HighPrecReal r;
    r.mantissa_ = round_scaled((lo + hi) / 2, bits);
    r.exponent_ = -bits;
    const BigRat c = r.center();
    r.radius_ = relax_up(std::max(BigRat(hi - c), BigRat(c - lo)), bits + 16);
    return r;
}

BigRat HighPrecReal::center() const { return dyadic_value(mantissa_, exponent_); }

bool HighPrecReal::contains(const BigRat& x) const { return abs(x - center()) <= radius_; }

HighPrecReal HighPrecReal::rounded(long bits) const
{
    HighPrecReal r = *this;
    if (exponent_ < -bits) {
        const unsigned long shift = static_cast<unsigned long>(-bits - exponent_);
        BigInt half = pow2(shift - 1);
        BigInt m = mantissa_ + half;
        mpz_fdiv_q_2exp(r.mantissa_.get_mpz_t(), m.get_mpz_t(), shift);
        r.exponent_ = -bits;
        r.radius_ = radius_ + abs(center() - r.center());
    }
    r.radius_ = relax_up(r.radius_, bits + 16);
    return r;
}

HighPrecReal operator+(const HighPrecReal& a, const HighPrecReal& b)
{
    HighPrecReal r;
    r.exponent_ = std::min(a.exponent_, b.exponent_);
    BigInt ma, mb;
    mpz_mul_2exp(ma.get_mpz_t(), a.mantissa_.get_mpz_t(), static_cast<unsigned long>(a.exponent_ - r.exponent_));
    mpz_mul_2exp(mb.get_mpz_t(), b.mantissa_.get_mpz_t(), static_cast<unsigned long>(b.exponent_ - r.exponent_));
    r.mantissa_ = ma + mb;
    r.radius_ = a.radius_ + b.radius_;
    return r;
}

HighPrecReal operator-(const HighPrecReal& a)
{
    HighPrecReal r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
}

HighPrecReal operator-(const HighPrecReal& a, const HighPrecReal& b) { return a + (-b); }

HighPrecReal operator*(const HighPrecReal& a, const HighPrecReal& b)
{
    HighPrecReal r;
    r.mantissa_ = a.mantissa_ * b.mantissa_;
    r.exponent_ = a.exponent_ + b.exponent_;
    const BigRat ca = abs(a.center()), cb = abs(b.center());
    r.radius_ = ca * b.radius_ + cb * a.radius_ + a.radius_ * b.radius_;
    const long bits = std::max(-a.exponent_, -b.exponent_);
    return bits > 0 ? r.rounded(bits) : r;
}

HighPrecReal operator*(const HighPrecReal& a, const BigInt& k)
{
    HighPrecReal r = a;
    r.mantissa_ *= k;
    r.radius_ *= BigRat(abs(k));
    return r;
}

HighPrecReal HighPrecReal::divide(const HighPrecReal& a, const HighPrecReal& b, long bits)
{
    const BigRat cb = b.center();
    const BigRat acb = abs(cb);
    if (acb <= b.radius_)
        throw DomainError("HighPrecReal::divide: divisor enclosure contains zero");
    const BigRat ca = a.center();
    HighPrecReal r = from_rational(ca / cb, bits);
    const BigRat prop = (a.radius_ * acb + abs(ca) * b.radius_) / (acb * (acb - b.radius_));
    r.radius_ = relax_up(r.radius_ + prop, bits + 16);
    return r;
}

// --------------------------------------------------------------------------
// Logarithm

namespace {

struct SeriesResult {
    BigInt sum;            // truncated toward zero, scaled by 2^work_bits
    unsigned long err_ulps; // |true - sum| <= err_ulps * 2^-work_bits
};

// atanh(z) = z + z^3/3 + z^5/5 + ... for rational |z| <= 1/2.
SeriesResult atanh_fixed(const BigRat& z, unsigned long work_bits)
{
    SeriesResult out{BigInt(0), 0};
    if (sgn(z) == 0)
        return out;
    const BigInt p = abs(z.get_num());
    const BigInt q = z.get_den();
    // |z| <= 2^-e
    unsigned long e = 0;
    {
        BigRat az(p, q);
        while (az * pow2(e + 1) <= 1)
            ++e;
    }
    if (e == 0)
        throw InternalError("atanh_fixed: argument too large for the series");
    // Tail after N terms <= 2^{-e(2N+1)} * 2/(2N+1) <= 2^{-work_bits}.
    unsigned long n_terms = 1;
    while (e * (2 * n_terms + 1) < work_bits + 1)
        ++n_terms;

    const BigInt p2 = p * p, q2 = q * q;
    BigInt t;
    {
        BigInt num;
        mpz_mul_2exp(num.get_mpz_t(), p.get_mpz_t(), work_bits);
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    }
    BigInt term;
    for (unsigned long j = 0; j < n_terms; ++j) {
        mpz_fdiv_q_ui(term.get_mpz_t(), t.get_mpz_t(), 2 * j + 1);
        out.sum += term;
        t = t * p2;
        mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), q2.get_mpz_t());
        if (sgn(t) == 0)
            break;
    }
    // Propagated power error < 2 ulp, per-term division < 1 ulp, tail < 1 ulp.
    out.err_ulps = 3 * n_terms + 1;
    if (sgn(z) < 0)
        out.sum = -out.sum;
    return out;
}

unsigned long bitlen(const BigInt& n) { return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2); }

} // namespace

HighPrecReal highprec_log(const BigRat& x_in, long bits)
{
    BigRat x = x_in;
    x.canonicalize();
    if (sgn(x) <= 0)
        throw DomainError("highprec_log: argument must be positive, got " + x.get_str());
    if (bits < 32)
        throw DomainError("highprec_log: precision must be at least 32 bits");
    if (x == 1)
        return HighPrecReal::dyadic(0, -bits);

    long k = static_cast<long>(bitlen(x.get_num())) - static_cast<long>(bitlen(x.get_den()));
    BigRat y = x * pow2_rat(-k);
    if (y >= BigRat(4, 3)) {
        y /= 2;
        ++k;
    } else if (y < BigRat(3, 4)) {
        y *= 2;
        --k;
    }
    const BigRat z = (y - 1) / (y + 1);

    const unsigned long abs_k = static_cast<unsigned long>(k < 0 ? -k : k);
    const unsigned long work = static_cast<unsigned long>(bits) + 32 + bitlen(BigInt(abs_k));

    SeriesResult sy = atanh_fixed(z, work);
    BigInt total = 2 * sy.sum;
    BigInt err = 2 * BigInt(sy.err_ulps);
    if (k != 0) {
        SeriesResult s2 = atanh_fixed(BigRat(1, 3), work);
        total += 2 * s2.sum * BigInt(k);
        err += 2 * BigInt(s2.err_ulps) * BigInt(abs_k);
    }
    // err ulps are in units of 2^-work; round the result to `bits`.
    HighPrecReal r = HighPrecReal::dyadic(total, -static_cast<long>(work));
    HighPrecReal widened = r + HighPrecReal::from_interval(-BigRat(err, pow2(work)), BigRat(err, pow2(work)),
                                                          static_cast<long>(work));
    HighPrecReal out = widened.rounded(bits);
    if (out.radius() > pow2_rat(-bits))
        throw InternalError("highprec_log: radius budget exceeded");
    return out;
}

HighPrecReal highprec_log(const HighPrecReal& x, long bits)
{
    if (!x.is_certainly_positive())
        throw DomainError("highprec_log: enclosure not certainly positive");
    if (x.is_exact())
        return highprec_log(x.center(), bits);
    const HighPrecReal lo = highprec_log(x.lower(), bits + 2);
    const HighPrecReal hi = highprec_log(x.upper(), bits + 2);
    return HighPrecReal::from_interval(lo.lower(), hi.upper(), bits + 2);
}

HighPrecReal highprec_sqrt(const BigInt& n, long bits)
{
    if (sgn(n) < 0)
        throw DomainError("highprec_sqrt: negative argument");
    BigInt scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), n.get_mpz_t(), 2 * static_cast<unsigned long>(bits));
    const BigInt s = isqrt(scaled);
    if (s * s == scaled)
        return HighPrecReal::dyadic(s, -bits);
    const BigInt den = pow2(static_cast<unsigned long>(bits));
    return HighPrecReal::from_interval(BigRat(s, den), BigRat(s + 1, den), bits + 1);
}

HighPrecReal highprec_log_quadratic(const BigRat& a, const BigRat& b, const BigInt& d, long bits)
{
    if (sgn(d) <= 0)
        throw DomainError("highprec_log_quadratic: d must be positive");
    // Exact sign test of a + b sqrt(d).
    {
        const int sa = sgn(a), sb = sgn(b);
        bool positive;
        if (sb == 0)
            positive = sa > 0;
        else if (sa >= 0 && sb > 0)
            positive = true;
        else if (sa <= 0 && sb < 0)
            positive = false;
        else {
            const BigRat a2 = a * a, b2d = b * b * BigRat(d);
            positive = sa > 0 ? a2 > b2d : b2d > a2;
        }
        if (!positive)
            throw DomainError("highprec_log_quadratic: argument is not positive");
    }
    if (sgn(b) == 0)
        return highprec_log(a, bits);
    long m = bits + 8 + static_cast<long>(bitlen(ceil_rat(abs(b)) + 1));
    for (int attempt = 0; attempt < 64; ++attempt, m += 32) {
        const HighPrecReal s = highprec_sqrt(d, m);
        BigRat v1 = a + b * s.lower(), v2 = a + b * s.upper();
        if (v1 > v2)
            std::swap(v1, v2);
        if (sgn(v1) <= 0)
            continue;
        const HighPrecReal lo = highprec_log(v1, bits + 4);
        const HighPrecReal hi = highprec_log(v2, bits + 4);
        HighPrecReal r = HighPrecReal::from_interval(lo.lower(), hi.upper(), bits + 4);
        if (r.radius() <= pow2_rat(-bits))
            return r;
    }
    throw InternalError("highprec_log_quadratic: failed to reach requested precision");
}

// --------------------------------------------------------------------------
// Continued fractions

std::size_t ContinuedFraction::certified_count() const
{
    return static_cast<std::size_t>(std::count(term_certified.begin(), term_certified.end(), true));
}

namespace {

std::vector<Convergent> convergents_of(const std::vector<BigInt>& terms)
{
    std::vector<Convergent> out;
    BigInt p, q;
    // Seeds (p_{-1}, q_{-1}) = (1, 0), (p_{-2}, q_{-2}) = (0, 1).
    BigInt pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    for (const auto& a : terms) {
        p = a * pm1 + pm2;
        q = a * qm1 + qm2;
        out.push_back({p, q});
        pm2 = pm1;
        qm2 = qm1;
        pm1 = p;
        qm1 = q;
    }
    return out;
}

// Expansion of an exact rational; stops early when the expansion ends.
std::vector<BigInt> rational_terms(BigRat x, std::size_t n_terms)
{
    std::vector<BigInt> terms;
    while (terms.size() < n_terms) {
        const BigInt a = floor_rat(x);
        terms.push_back(a);
        const BigRat frac = x - a;
        if (sgn(frac) == 0)
            break;
        x = 1 / frac;
    }
    return terms;
}

} // namespace

ContinuedFraction continued_fraction(const BigRat& x, std::size_t n_terms)
{
    ContinuedFraction cf;
    cf.terms = rational_terms(x, n_terms);
    cf.term_certified.assign(cf.terms.size(), true);
    cf.convergents = convergents_of(cf.terms);
    cf.certified = true;
    return cf;
}

ContinuedFraction continued_fraction(const HighPrecReal& x, std::size_t n_terms)
{
    if (x.is_exact()) {
        ContinuedFraction cf = continued_fraction(x.center(), n_terms);
        cf.precision_bits = -x.exponent();
        return cf;
    }
    ContinuedFraction cf;
    cf.precision_bits = -x.exponent();
    BigRat lo = x.lower(), hi = x.upper();
    std::vector<BigInt> certified;
    while (certified.size() < n_terms) {
        const BigInt al = floor_rat(lo), ah = floor_rat(hi);
        if (al != ah || lo == BigRat(al))
            break;
        certified.push_back(al);
        const BigRat new_lo = 1 / (hi - al);
        const BigRat new_hi = 1 / (lo - al);
        lo = new_lo;
        hi = new_hi;
    }
    if (certified.size() == n_terms) {
        cf.terms = std::move(certified);
        cf.term_certified.assign(cf.terms.size(), true);
        cf.certified = true;
    } else {
        // Fill from the center; its expansion shares the certified prefix.
        cf.terms = rational_terms(x.center(), n_terms);
        cf.term_certified.assign(cf.terms.size(), false);
        for (std::size_t i = 0; i < certified.size() && i < cf.terms.size(); ++i) {
            if (cf.terms[i] != certified[i])
                throw InternalError("continued_fraction: center left its own enclosure");
            cf.term_certified[i] = true;
        }
        cf.certified = false;
    }
    cf.convergents = convergents_of(cf.terms);
    return cf;
}

ContinuedFraction certified_continued_fraction(const std::function<HighPrecReal(long)>& make,
                                               std::size_t n_terms, long start_bits, long max_bits)
{
    ContinuedFraction cf;
    for (long bits = start_bits; bits <= max_bits; bits *= 2) {
        cf = continued_fraction(make(bits), n_terms);
        cf.precision_bits = bits;
        if (cf.certified)
            return cf;
    }
    return cf;
}

std::optional<bool> decide_with_escalation(const std::function<std::optional<bool>(long)>& try_bits,
                                           long start_bits, long max_bits)
{
    for (long bits = start_bits; bits <= max_bits; bits *= 2) {
        if (auto r = try_bits(bits))
            return r;
    }
    return std::nullopt;
}

} // namespace fltkit
