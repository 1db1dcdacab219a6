#pragma once

// Arithmetic in quadratic fields Q(sqrt d) and their maximal orders.
// Integral elements are kept as (a + b sqrt d)/2 for every d; field
// elements carry rational coordinates x + y sqrt d. Ideals of the maximal
// order are Hermite-form Z-lattices over the integral basis {1, omega},
// with omega = sqrt d when d != 1 (mod 4) and (1 + sqrt d)/2 otherwise.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fltkit/arith.hpp"

namespace fltkit {

class QuadInt {
public:
    QuadInt() = default;
    // (a + b sqrt d)/2; throws DomainError when the pair is not integral
    // or d is 0 or 1. Squarefreeness of d is the caller's contract.
    QuadInt(std::int64_t d, BigInt a, BigInt b);

    static QuadInt from_int(std::int64_t d, const BigInt& n) { return {d, 2 * n, BigInt(0)}; }
    // x + y sqrt d with integers x, y.
    static QuadInt from_xy(std::int64_t d, const BigInt& x, const BigInt& y) { return {d, 2 * x, 2 * y}; }
    static QuadInt omega(std::int64_t d);

    std::int64_t d() const { return d_; }
    // Half-coordinates: the element is (a + b sqrt d)/2.
    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    // Coordinates (p, q) over the integral basis {1, omega}.
    std::pair<BigInt, BigInt> basis_coords() const;
    static QuadInt from_basis_coords(std::int64_t d, const BigInt& p, const BigInt& q);

    BigInt norm() const;
    BigInt trace() const { return a_; }
    QuadInt conj() const { return {d_, a_, -b_}; }

    QuadInt& operator+=(const QuadInt& o);
    QuadInt& operator-=(const QuadInt& o);
    QuadInt& operator*=(const QuadInt& o);
    friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
    friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
    friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
    friend QuadInt operator-(const QuadInt& x) { return {x.d_, -x.a_, -x.b_}; }
    friend QuadInt operator*(const QuadInt& x, const BigInt& k) { return {x.d_, x.a_ * k, x.b_ * k}; }
    friend bool operator==(const QuadInt&, const QuadInt&) = default;

    QuadInt pow(unsigned long e) const;
    // Exact division by a rational integer; throws when not integral.
    QuadInt div_exact(const BigInt& k) const;

    // Sign of the real embedding with sqrt d > 0; requires d > 0.
    int real_sign() const;
    double to_double() const;
    std::string to_string() const;

private:
    std::int64_t d_ = 2;
    BigInt a_ = 0;
    BigInt b_ = 0;
};

// Field element x + y sqrt d with rational coordinates.
class QuadRat {
public:
    QuadRat() = default;
    QuadRat(std::int64_t d, BigRat x, BigRat y);
    QuadRat(const QuadInt& z);
    static QuadRat from_rat(std::int64_t d, const BigRat& x) { return {d, x, BigRat(0)}; }

    std::int64_t d() const { return d_; }
    const BigRat& x() const { return x_; }
    const BigRat& y() const { return y_; }
    bool is_zero() const { return sgn(x_) == 0 && sgn(y_) == 0; }
    bool is_rational() const { return sgn(y_) == 0; }
    bool is_integral() const;
    // Throws DomainError when not integral.
    QuadInt to_quadint() const;
    // Least positive integer m with m * this integral.
    BigInt denominator() const;

    BigRat norm() const { return x_ * x_ - BigRat(d_) * y_ * y_; }
    BigRat trace() const { return 2 * x_; }
    QuadRat conj() const { return {d_, x_, -y_}; }
    QuadRat inverse() const;

    QuadRat& operator+=(const QuadRat& o);
    QuadRat& operator-=(const QuadRat& o);
    QuadRat& operator*=(const QuadRat& o);
    QuadRat& operator/=(const QuadRat& o) { return *this *= o.inverse(); }
    friend QuadRat operator+(QuadRat p, const QuadRat& q) { return p += q; }
    friend QuadRat operator-(QuadRat p, const QuadRat& q) { return p -= q; }
    friend QuadRat operator*(QuadRat p, const QuadRat& q) { return p *= q; }
    friend QuadRat operator/(QuadRat p, const QuadRat& q) { return p /= q; }
    friend QuadRat operator-(const QuadRat& p) { return {p.d_, -p.x_, -p.y_}; }
    friend bool operator==(const QuadRat& p, const QuadRat& q)
    {
        return p.d_ == q.d_ && p.x_ == q.x_ && p.y_ == q.y_;
    }
    // Lexicographic on (x, y); used only for canonical ordering.
    friend bool operator<(const QuadRat& p, const QuadRat& q)
    {
        return p.x_ != q.x_ ? p.x_ < q.x_ : p.y_ < q.y_;
    }

    QuadRat pow(long e) const;
    std::string to_string() const;

private:
    std::int64_t d_ = 2;
    BigRat x_ = 0;
    BigRat y_ = 0;
};

// Exact sqrt(2)-adic valuation in Z[sqrt 2]; throws DomainError for 0 or
// d != 2.
unsigned long ord_sqrt2(const QuadInt& x);

// Z-lattice u*Z + (v + w*omega)*Z in Hermite form: u, w > 0, 0 <= v < u.
class QuadIdeal {
public:
    QuadIdeal() = default;
    static QuadIdeal from_generators(std::int64_t d, const std::vector<QuadInt>& gens);
    static QuadIdeal unit(std::int64_t d) { return from_generators(d, {QuadInt::from_int(d, 1)}); }

    std::int64_t d() const { return d_; }
    const BigInt& u() const { return u_; }
    const BigInt& v() const { return v_; }
    const BigInt& w() const { return w_; }
    BigInt norm() const { return u_ * w_; }
    bool contains(const QuadInt& x) const;
    QuadIdeal conj() const;
    std::vector<QuadInt> basis() const;

    friend QuadIdeal operator*(const QuadIdeal& I, const QuadIdeal& J);
    friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
    QuadIdeal pow(unsigned e) const;
    std::string to_string() const;

private:
    std::int64_t d_ = 2;
    BigInt u_ = 1, v_ = 0, w_ = 1;
};

enum class Splitting { ramified, inert, split };
const char* to_string(Splitting s);

struct PrimesAbove2 {
    Splitting splitting = Splitting::ramified;
    std::vector<QuadIdeal> ideals; // two for split, one otherwise
};

// Primes of the maximal order above 2. For split d the first ideal is
// (2, omega), the second (2, omega - 1). Throws for non-squarefree d.
PrimesAbove2 prime_above_2(std::int64_t d);

// Valuation of a nonzero field element at a prime ideal P. Integral
// elements use repeated membership in P^e; denominators are removed
// first. Intended for primes of small norm.
long ord_at(const QuadRat& x, const QuadIdeal& P);

// The quotient ring O/I. Representatives are (p + q omega) with
// 0 <= q < w and 0 <= p < u after reduction along the Hermite basis.
class ResidueRing {
public:
    static constexpr unsigned long kMaxEnumeration = 1ul << 16;

    explicit ResidueRing(QuadIdeal I);

    const QuadIdeal& ideal() const { return ideal_; }
    BigInt size() const { return ideal_.norm(); }
    QuadInt reduce(const QuadInt& x) const;
    QuadInt add(const QuadInt& x, const QuadInt& y) const { return reduce(x + y); }
    QuadInt mul(const QuadInt& x, const QuadInt& y) const { return reduce(x * y); }
    bool is_one(const QuadInt& x) const;
    bool is_unit(const QuadInt& x) const;
    // All residues in canonical order; throws UnsupportedError past the
    // enumeration limit.
    std::vector<QuadInt> elements() const;
    // |(O/I)^x| by enumeration.
    BigInt unit_group_order() const;
    // Multiplicative order of a unit; throws DomainError for non-units.
    unsigned long element_order(const QuadInt& x) const;

private:
    QuadIdeal ideal_;
};

} // namespace fltkit
