#include "fltkit/poly.hpp"

#include <algorithm>
#include <sstream>

#include "fltkit/errors.hpp"

namespace fltkit {

BigPoly::BigPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

BigPoly::BigPoly(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    normalize();
}

BigPoly BigPoly::constant(const BigInt& c) { return BigPoly(std::vector<BigInt>{c}); }

BigPoly BigPoly::monomial(const BigInt& c, unsigned degree)
{
    std::vector<BigInt> v(degree + 1, BigInt(0));
    v[degree] = c;
    return BigPoly(std::move(v));
}

void BigPoly::normalize()
{
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
        coeffs_.pop_back();
}

BigInt BigPoly::operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

const BigInt& BigPoly::leading() const
{
    if (coeffs_.empty())
        throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

BigInt BigPoly::eval(const BigInt& x) const
{
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

BigRat BigPoly::eval(const BigRat& x) const
{
    // Homogenized Horner to stay in integers until the final division.
    const BigInt& p = x.get_num();
    const BigInt& q = x.get_den();
    BigInt acc = 0, qpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * p + *it * qpow;
        qpow *= q;
    }
    if (coeffs_.empty())
        return 0;
    BigRat r(acc, qpow / q);
    r.canonicalize();
    return r;
}

BigPoly BigPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return BigPoly(std::move(d));
}

BigPoly BigPoly::shift(const BigInt& c) const
{
    // Taylor shift by repeated synthetic division.
    std::vector<BigInt> a = coeffs_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j)
            a[j - 1] += c * a[j];
    return BigPoly(std::move(a));
}

BigInt BigPoly::content() const
{
    BigInt g = 0;
    for (const auto& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (!coeffs_.empty() && sgn(coeffs_.back()) < 0)
        g = -g;
    return g;
}

BigPoly BigPoly::primitive_part() const
{
    if (is_zero())
        return {};
    const BigInt g = content();
    std::vector<BigInt> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return BigPoly(std::move(v));
}

BigPoly& BigPoly::operator+=(const BigPoly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

BigPoly& BigPoly::operator-=(const BigPoly& o)
{
    if (o.coeffs_.size() > coeffs_.size())
        coeffs_.resize(o.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

BigPoly& BigPoly::operator*=(const BigPoly& o)
{
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
    }
    coeffs_ = std::move(r);
    normalize();
    return *this;
}

BigPoly& BigPoly::operator*=(const BigInt& c)
{
    for (auto& x : coeffs_)
        x *= c;
    normalize();
    return *this;
}

BigPoly BigPoly::pow(unsigned e) const
{
    BigPoly result = constant(1), base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

std::string BigPoly::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (sgn(c) == 0)
            continue;
        BigInt mag = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || mag != 1)
            os << mag.get_str();
        if (i >= 1)
            os << var;
        if (i >= 2)
            os << '^' << i;
    }
    return os.str();
}

BigPoly signed_prem(const BigPoly& a, const BigPoly& b)
{
    if (b.is_zero())
        throw DomainError("signed_prem: division by zero polynomial");
    if (a.degree() < b.degree())
        return a;
    std::vector<BigInt> r = a.coefficients();
    const auto& bc = b.coefficients();
    const int db = b.degree();
    const BigInt lb = bc.back();
    const BigInt alb = abs(lb);
    const int steps = a.degree() - db + 1;
    // r <- |lb| r - sign(lb) r_lead x^k b, repeated; each step multiplies the
    // remainder by |lb| > 0.
    for (int k = a.degree() - db; k >= 0; --k) {
        const BigInt lead = r[static_cast<std::size_t>(k + db)];
        for (auto& x : r)
            x *= alb;
        if (sgn(lead) != 0) {
            const BigInt factor = sgn(lb) > 0 ? lead : BigInt(-lead);
            for (int i = 0; i <= db; ++i)
                r[static_cast<std::size_t>(k + i)] -= factor * bc[static_cast<std::size_t>(i)];
        }
        r.pop_back();
    }
    (void)steps;
    return BigPoly(std::move(r));
}

BigPoly poly_gcd(const BigPoly& a, const BigPoly& b)
{
    BigPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        BigPoly r = signed_prem(x, y).primitive_part();
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.primitive_part();
}

BigPoly exact_div(const BigPoly& a, const BigPoly& b)
{
    if (b.is_zero())
        throw DomainError("exact_div: division by zero polynomial");
    if (a.is_zero())
        return {};
    if (a.degree() < b.degree())
        throw DomainError("exact_div: divisor degree exceeds dividend");
    std::vector<BigInt> r = a.coefficients();
    const auto& bc = b.coefficients();
    const int db = b.degree();
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree() - db; k >= 0; --k) {
        BigInt& lead = r[static_cast<std::size_t>(k + db)];
        if (!mpz_divisible_p(lead.get_mpz_t(), bc.back().get_mpz_t()))
            throw DomainError("exact_div: not divisible over Z");
        BigInt c;
        mpz_divexact(c.get_mpz_t(), lead.get_mpz_t(), bc.back().get_mpz_t());
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(k + i)] -= c * bc[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(k)] = c;
    }
    for (const auto& x : r)
        if (sgn(x) != 0)
            throw DomainError("exact_div: nonzero remainder");
    return BigPoly(std::move(q));
}

namespace {

int sign_at_infinity(const BigPoly& p, bool negative)
{
    int s = sgn(p.leading());
    if (negative && p.degree() % 2 != 0)
        s = -s;
    return s;
}

int sign_changes(const std::vector<int>& signs)
{
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

SturmReport sturm_real_roots(const BigPoly& f)
{
    if (f.is_zero())
        throw DomainError("sturm_real_roots: zero polynomial");
    SturmReport rep;
    rep.polynomial = f;
    BigPoly p = f.primitive_part();
    if (p.degree() >= 1) {
        BigPoly g = poly_gcd(p, p.derivative());
        if (g.degree() > 0) {
            rep.is_squarefree = false;
            p = exact_div(p, g).primitive_part();
        }
    }
    if (p.degree() <= 0) {
        rep.real_root_count = 0;
        return rep;
    }
    std::vector<BigPoly> seq{p, p.derivative().primitive_part()};
    while (seq.back().degree() > 0) {
        BigPoly r = signed_prem(seq[seq.size() - 2], seq.back());
        if (r.is_zero())
            break;
        // Negated remainder; dividing by the positive content keeps signs.
        BigInt c = abs(r.content());
        r = -r;
        std::vector<BigInt> v = r.coefficients();
        for (auto& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
        seq.emplace_back(std::move(v));
    }
    std::vector<int> neg, pos;
    for (const auto& s : seq) {
        neg.push_back(sign_at_infinity(s, true));
        pos.push_back(sign_at_infinity(s, false));
    }
    rep.real_root_count = sign_changes(neg) - sign_changes(pos);
    return rep;
}

NewtonPolygon newton_polygon_2adic(const BigPoly& f)
{
    if (f.is_zero())
        throw DomainError("newton_polygon_2adic: zero polynomial");
    NewtonPolygon np;
    const auto& c = f.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) != 0)
            np.points.push_back({static_cast<int>(i), ord2(c[i])});

    // Monotone-chain lower hull; points are already sorted by index.
    std::vector<NewtonPoint> hull;
    auto cross = [](const NewtonPoint& o, const NewtonPoint& a, const NewtonPoint& b) {
        // (a - o) x (b - o) in (index, valuation) coordinates.
        BigInt ax = a.index - o.index, ay = BigInt(a.valuation) - BigInt(o.valuation);
        BigInt bx = b.index - o.index, by = BigInt(b.valuation) - BigInt(o.valuation);
        return BigInt(ax * by - ay * bx);
    };
    for (const auto& p : np.points) {
        while (hull.size() >= 2 && sgn(cross(hull[hull.size() - 2], hull.back(), p)) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        NewtonSegment s;
        s.start_index = hull[i].index;
        s.start_valuation = hull[i].valuation;
        s.end_index = hull[i + 1].index;
        s.end_valuation = hull[i + 1].valuation;
        s.slope = BigRat(BigInt(s.end_valuation) - BigInt(s.start_valuation), BigInt(s.length()));
        s.slope.canonicalize();
        np.hull.push_back(s);
    }
    return np;
}

} // namespace fltkit
