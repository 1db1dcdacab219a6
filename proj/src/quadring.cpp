#include "fltkit/quadring.hpp"

#include <cmath>
#include <sstream>

#include "fltkit/errors.hpp"

namespace fltkit {

namespace {

int mod4(std::int64_t d) { return static_cast<int>(((d % 4) + 4) % 4); }
int mod8(std::int64_t d) { return static_cast<int>(((d % 8) + 8) % 8); }

bool half_pair_integral(std::int64_t d, const BigInt& a, const BigInt& b)
{
    const bool ae = mpz_even_p(a.get_mpz_t()) != 0;
    const bool be = mpz_even_p(b.get_mpz_t()) != 0;
    if (mod4(d) == 1)
        return ae == be;
    return ae && be;
}

void require_same_d(std::int64_t d1, std::int64_t d2)
{
    if (d1 != d2)
        throw DomainError("quadratic elements from different fields: d = " + std::to_string(d1) +
                          " and d = " + std::to_string(d2));
}

} // namespace

// --------------------------------------------------------------------------
// QuadInt

QuadInt::QuadInt(std::int64_t d, BigInt a, BigInt b) : d_(d), a_(std::move(a)), b_(std::move(b))
{
    if (d_ == 0 || d_ == 1)
        throw DomainError("QuadInt: d must not be 0 or 1");
    if (!half_pair_integral(d_, a_, b_))
        throw DomainError("QuadInt: (" + a_.get_str() + " + " + b_.get_str() + "*sqrt(" +
                          std::to_string(d_) + "))/2 is not integral");
}

QuadInt QuadInt::omega(std::int64_t d)
{
    if (mod4(d) == 1)
        return {d, BigInt(1), BigInt(1)};
    return {d, BigInt(0), BigInt(2)};
}

std::pair<BigInt, BigInt> QuadInt::basis_coords() const
{
    if (mod4(d_) == 1)
        return {BigInt((a_ - b_) / 2), b_};
    return {BigInt(a_ / 2), BigInt(b_ / 2)};
}

QuadInt QuadInt::from_basis_coords(std::int64_t d, const BigInt& p, const BigInt& q)
{
    if (mod4(d) == 1)
        return {d, 2 * p + q, q};
    return {d, 2 * p, 2 * q};
}

BigInt QuadInt::norm() const
{
    BigInt n = a_ * a_ - BigInt(d_) * b_ * b_;
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

QuadInt& QuadInt::operator+=(const QuadInt& o)
{
    require_same_d(d_, o.d_);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o)
{
    require_same_d(d_, o.d_);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& o)
{
    require_same_d(d_, o.d_);
    BigInt na = a_ * o.a_ + BigInt(d_) * b_ * o.b_;
    BigInt nb = a_ * o.b_ + b_ * o.a_;
    mpz_divexact_ui(na.get_mpz_t(), na.get_mpz_t(), 2);
    mpz_divexact_ui(nb.get_mpz_t(), nb.get_mpz_t(), 2);
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadInt QuadInt::pow(unsigned long e) const
{
    QuadInt result = from_int(d_, 1), base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

QuadInt QuadInt::div_exact(const BigInt& k) const
{
    if (sgn(k) == 0)
        throw DomainError("QuadInt::div_exact: division by zero");
    if (!mpz_divisible_p(a_.get_mpz_t(), k.get_mpz_t()) || !mpz_divisible_p(b_.get_mpz_t(), k.get_mpz_t()))
        throw DomainError("QuadInt::div_exact: " + to_string() + " not divisible by " + k.get_str());
    return {d_, a_ / k, b_ / k};
}

int QuadInt::real_sign() const
{
    if (d_ < 0)
        throw DomainError("QuadInt::real_sign: imaginary field");
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0)
        return sa;
    if (sa == 0)
        return sb;
    if (sa == sb)
        return sa;
    const BigInt a2 = a_ * a_, b2d = b_ * b_ * BigInt(d_);
    if (a2 == b2d)
        return 0;
    return a2 > b2d ? sa : sb;
}

double QuadInt::to_double() const
{
    return (a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_))) / 2.0;
}

std::string QuadInt::to_string() const
{
    std::ostringstream os;
    const bool whole = mpz_even_p(a_.get_mpz_t()) && mpz_even_p(b_.get_mpz_t());
    const BigInt x = whole ? BigInt(a_ / 2) : a_;
    const BigInt y = whole ? BigInt(b_ / 2) : b_;
    if (!whole)
        os << "(";
    os << x.get_str();
    if (sgn(y) != 0)
        os << (sgn(y) < 0 ? " - " : " + ") << BigInt(abs(y)).get_str() << "*sqrt(" << d_ << ")";
    if (!whole)
        os << ")/2";
    return os.str();
}

// --------------------------------------------------------------------------
// QuadRat

QuadRat::QuadRat(std::int64_t d, BigRat x, BigRat y) : d_(d), x_(std::move(x)), y_(std::move(y))
{
    if (d_ == 0 || d_ == 1)
        throw DomainError("QuadRat: d must not be 0 or 1");
    x_.canonicalize();
    y_.canonicalize();
}

QuadRat::QuadRat(const QuadInt& z) : QuadRat(z.d(), BigRat(z.a(), 2), BigRat(z.b(), 2)) {}

bool QuadRat::is_integral() const
{
    const BigRat A = 2 * x_, B = 2 * y_;
    if (A.get_den() != 1 || B.get_den() != 1)
        return false;
    return half_pair_integral(d_, A.get_num(), B.get_num());
}

QuadInt QuadRat::to_quadint() const
{
    if (!is_integral())
        throw DomainError("QuadRat: " + to_string() + " is not integral");
    return {d_, BigRat(2 * x_).get_num(), BigRat(2 * y_).get_num()};
}

BigInt QuadRat::denominator() const
{
    const BigRat A = 2 * x_, B = 2 * y_;
    BigInt m;
    mpz_lcm(m.get_mpz_t(), A.get_den_mpz_t(), B.get_den_mpz_t());
    const QuadRat scaled = *this * QuadRat::from_rat(d_, BigRat(m));
    return scaled.is_integral() ? m : BigInt(2 * m);
}

QuadRat QuadRat::inverse() const
{
    if (is_zero())
        throw DomainError("QuadRat::inverse: zero");
    const BigRat n = norm();
    return {d_, x_ / n, -y_ / n};
}

QuadRat& QuadRat::operator+=(const QuadRat& o)
{
    require_same_d(d_, o.d_);
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

QuadRat& QuadRat::operator-=(const QuadRat& o)
{
    require_same_d(d_, o.d_);
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

QuadRat& QuadRat::operator*=(const QuadRat& o)
{
    require_same_d(d_, o.d_);
    BigRat nx = x_ * o.x_ + BigRat(d_) * y_ * o.y_;
    BigRat ny = x_ * o.y_ + y_ * o.x_;
    x_ = std::move(nx);
    y_ = std::move(ny);
    return *this;
}

QuadRat QuadRat::pow(long e) const
{
    QuadRat base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    QuadRat result = from_rat(d_, 1);
    while (n) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return result;
}

std::string QuadRat::to_string() const
{
    std::ostringstream os;
    os << x_.get_str();
    if (sgn(y_) != 0)
        os << (sgn(y_) < 0 ? " - " : " + ") << BigRat(abs(y_)).get_str() << "*sqrt(" << d_ << ")";
    return os.str();
}

// --------------------------------------------------------------------------

unsigned long ord_sqrt2(const QuadInt& x)
{
    if (x.d() != 2)
        throw DomainError("ord_sqrt2: element not in Z[sqrt 2]");
    if (x.is_zero())
        throw DomainError("ord_sqrt2: zero has infinite valuation");
    // x = s + t sqrt2, and ord(s) = 2 ord2(s), ord(t sqrt2) = 2 ord2(t) + 1
    // never coincide, so the valuation is the minimum.
    const BigInt s = x.a() / 2, t = x.b() / 2;
    unsigned long best = ~0ul;
    if (sgn(s) != 0)
        best = 2 * ord2(s);
    if (sgn(t) != 0)
        best = std::min(best, 2 * ord2(t) + 1);
    return best;
}

// --------------------------------------------------------------------------
// QuadIdeal

namespace {

std::pair<BigInt, BigInt> times_omega(std::int64_t d, const BigInt& p, const BigInt& q)
{
    // (p + q w) w, with w^2 = d or w^2 = w + (d-1)/4.
    if (mod4(d) == 1)
        return {q * BigInt((d - 1) / 4), p + q};
    return {q * BigInt(d), p};
}

} // namespace

QuadIdeal QuadIdeal::from_generators(std::int64_t d, const std::vector<QuadInt>& gens)
{
    std::vector<std::pair<BigInt, BigInt>> vecs;
    for (const auto& g : gens) {
        require_same_d(d, g.d());
        auto c = g.basis_coords();
        vecs.push_back(c);
        vecs.push_back(times_omega(d, c.first, c.second));
    }
    BigInt P = 0, Q = 0, U = 0;
    for (auto& [p, q] : vecs) {
        if (sgn(q) == 0) {
            mpz_gcd(U.get_mpz_t(), U.get_mpz_t(), p.get_mpz_t());
            continue;
        }
        if (sgn(Q) == 0) {
            P = p;
            Q = q;
            continue;
        }
        BigInt s, t;
        const BigInt g = ext_gcd(Q, q, s, t);
        const BigInt zero_first = (q / g) * P - (Q / g) * p;
        P = s * P + t * p;
        Q = g;
        mpz_gcd(U.get_mpz_t(), U.get_mpz_t(), zero_first.get_mpz_t());
    }
    if (sgn(Q) == 0 || sgn(U) == 0)
        throw DomainError("QuadIdeal: generators span the zero ideal");
    if (sgn(Q) < 0) {
        P = -P;
        Q = -Q;
    }
    QuadIdeal I;
    I.d_ = d;
    I.u_ = abs(U);
    I.w_ = Q;
    I.v_ = mod_floor(P, I.u_);
    return I;
}

bool QuadIdeal::contains(const QuadInt& x) const
{
    require_same_d(d_, x.d());
    auto [p, q] = x.basis_coords();
    if (!mpz_divisible_p(q.get_mpz_t(), w_.get_mpz_t()))
        return false;
    const BigInt r = p - (q / w_) * v_;
    return mpz_divisible_p(r.get_mpz_t(), u_.get_mpz_t()) != 0;
}

std::vector<QuadInt> QuadIdeal::basis() const
{
    return {QuadInt::from_basis_coords(d_, u_, 0), QuadInt::from_basis_coords(d_, v_, w_)};
}

QuadIdeal QuadIdeal::conj() const
{
    std::vector<QuadInt> gens;
    for (const auto& g : basis())
        gens.push_back(g.conj());
    return from_generators(d_, gens);
}

QuadIdeal operator*(const QuadIdeal& I, const QuadIdeal& J)
{
    require_same_d(I.d_, J.d_);
    std::vector<QuadInt> gens;
    for (const auto& x : I.basis())
        for (const auto& y : J.basis())
            gens.push_back(x * y);
    return QuadIdeal::from_generators(I.d_, gens);
}

QuadIdeal QuadIdeal::pow(unsigned e) const
{
    QuadIdeal r = unit(d_);
    for (unsigned i = 0; i < e; ++i)
        r = r * *this;
    return r;
}

std::string QuadIdeal::to_string() const
{
    return "[" + u_.get_str() + ", " + v_.get_str() + " + " + w_.get_str() + "*w]";
}

const char* to_string(Splitting s)
{
    switch (s) {
    case Splitting::ramified:
        return "ramified";
    case Splitting::inert:
        return "inert";
    case Splitting::split:
        return "split";
    }
    return "?";
}

PrimesAbove2 prime_above_2(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw DomainError("prime_above_2: d = " + std::to_string(d) + " is not a squarefree field datum");
    PrimesAbove2 out;
    const QuadInt two = QuadInt::from_int(d, 2);
    const QuadInt w = QuadInt::omega(d);
    const QuadInt one = QuadInt::from_int(d, 1);
    if (mod4(d) == 2) {
        out.splitting = Splitting::ramified;
        out.ideals.push_back(QuadIdeal::from_generators(d, {two, w}));
    } else if (mod4(d) == 3) {
        out.splitting = Splitting::ramified;
        out.ideals.push_back(QuadIdeal::from_generators(d, {two, w + one}));
    } else if (mod8(d) == 1) {
        out.splitting = Splitting::split;
        out.ideals.push_back(QuadIdeal::from_generators(d, {two, w}));
        out.ideals.push_back(QuadIdeal::from_generators(d, {two, w - one}));
    } else {
        out.splitting = Splitting::inert;
        out.ideals.push_back(QuadIdeal::from_generators(d, {two}));
    }
    return out;
}

namespace {

long ord_integral(const QuadInt& z, const QuadIdeal& P)
{
    long e = 0;
    QuadIdeal J = P;
    while (J.contains(z)) {
        ++e;
        J = J * P;
    }
    return e;
}

} // namespace

long ord_at(const QuadRat& x, const QuadIdeal& P)
{
    if (x.is_zero())
        throw DomainError("ord_at: zero has infinite valuation");
    if (P.norm() == 1)
        throw DomainError("ord_at: unit ideal is not prime");
    const BigInt m = x.denominator();
    const QuadInt y = (x * QuadRat::from_rat(x.d(), BigRat(m))).to_quadint();
    long e = ord_integral(y, P);
    if (m != 1)
        e -= ord_integral(QuadInt::from_int(x.d(), m), P);
    return e;
}

// --------------------------------------------------------------------------
// ResidueRing

ResidueRing::ResidueRing(QuadIdeal I) : ideal_(std::move(I)) {}

QuadInt ResidueRing::reduce(const QuadInt& x) const
{
    auto [p, q] = x.basis_coords();
    const BigInt q2 = mod_floor(q, ideal_.w());
    const BigInt k = (q - q2) / ideal_.w();
    const BigInt p2 = mod_floor(p - k * ideal_.v(), ideal_.u());
    return QuadInt::from_basis_coords(ideal_.d(), p2, q2);
}

bool ResidueRing::is_one(const QuadInt& x) const
{
    return reduce(x) == reduce(QuadInt::from_int(ideal_.d(), 1));
}

bool ResidueRing::is_unit(const QuadInt& x) const
{
    std::vector<QuadInt> gens = ideal_.basis();
    gens.push_back(x);
    return QuadIdeal::from_generators(ideal_.d(), gens).norm() == 1;
}

std::vector<QuadInt> ResidueRing::elements() const
{
    if (size() > BigInt(static_cast<unsigned long>(kMaxEnumeration)))
        throw UnsupportedError("ResidueRing: quotient of size " + size().get_str() + " exceeds the enumeration limit");
    std::vector<QuadInt> out;
    const unsigned long u = ideal_.u().get_ui(), w = ideal_.w().get_ui();
    for (unsigned long q = 0; q < w; ++q)
        for (unsigned long p = 0; p < u; ++p)
            out.push_back(QuadInt::from_basis_coords(ideal_.d(), BigInt(p), BigInt(q)));
    return out;
}

BigInt ResidueRing::unit_group_order() const
{
    unsigned long count = 0;
    for (const auto& x : elements())
        if (is_unit(x))
            ++count;
    return BigInt(count);
}

unsigned long ResidueRing::element_order(const QuadInt& x) const
{
    if (!is_unit(x))
        throw DomainError("ResidueRing::element_order: " + x.to_string() + " is not a unit");
    const QuadInt base = reduce(x);
    QuadInt y = base;
    unsigned long n = 1;
    while (!is_one(y)) {
        y = mul(y, base);
        ++n;
    }
    return n;
}

} // namespace fltkit
