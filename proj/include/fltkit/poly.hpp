#pragma once

// Dense univariate polynomials over Z, with the real-root and 2-adic
// analyses needed for the polynomial families: Sturm counting and the
// 2-adic Newton polygon.

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "fltkit/arith.hpp"

namespace fltkit {

// coefficients()[i] is the coefficient of x^i. The zero polynomial has an
// empty coefficient list and degree() == -1; otherwise the leading
// coefficient is nonzero.
class BigPoly {
public:
    BigPoly() = default;
    explicit BigPoly(std::vector<BigInt> coeffs);
    BigPoly(std::initializer_list<long> coeffs);

    static BigPoly constant(const BigInt& c);
    static BigPoly monomial(const BigInt& c, unsigned degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    // Coefficient of x^i (0 past the degree).
    BigInt operator[](std::size_t i) const;
    const BigInt& leading() const;

    BigInt eval(const BigInt& x) const;
    BigRat eval(const BigRat& x) const;

    BigPoly derivative() const;
    // f(x + c)
    BigPoly shift(const BigInt& c) const;
    // gcd of the coefficients, sign of the leading coefficient.
    BigInt content() const;
    BigPoly primitive_part() const;

    BigPoly& operator+=(const BigPoly& o);
    BigPoly& operator-=(const BigPoly& o);
    BigPoly& operator*=(const BigPoly& o);
    BigPoly& operator*=(const BigInt& c);
    friend BigPoly operator+(BigPoly a, const BigPoly& b) { return a += b; }
    friend BigPoly operator-(BigPoly a, const BigPoly& b) { return a -= b; }
    friend BigPoly operator*(BigPoly a, const BigPoly& b) { return a *= b; }
    friend BigPoly operator*(BigPoly a, const BigInt& c) { return a *= c; }
    friend BigPoly operator-(const BigPoly& a) { return a * BigInt(-1); }
    friend bool operator==(const BigPoly&, const BigPoly&) = default;

    BigPoly pow(unsigned e) const;

    std::string to_string(char var = 'x') const;

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

// Pseudo-remainder of a by b scaled by |lc(b)|^(deg a - deg b + 1), so the
// sign of the remainder matches the true remainder over Q.
BigPoly signed_prem(const BigPoly& a, const BigPoly& b);

// gcd over Q[x], returned primitive with positive leading coefficient.
BigPoly poly_gcd(const BigPoly& a, const BigPoly& b);

// Exact division over Z; throws DomainError if b does not divide a.
BigPoly exact_div(const BigPoly& a, const BigPoly& b);

struct SturmReport {
    BigPoly polynomial;
    int real_root_count = 0;
    bool is_squarefree = true;
};

// Number of distinct real roots. A non-squarefree input is reduced to
// f / gcd(f, f') first and the report flags it.
SturmReport sturm_real_roots(const BigPoly& f);

// Lower convex hull of the points (i, ord_2(c_i)) over nonzero c_i.
// Segment slopes are geometric (rise over run), so a segment with slope
// -h/n carries n roots of 2-adic valuation h/n.
struct NewtonSegment {
    int start_index = 0;
    unsigned long start_valuation = 0;
    int end_index = 0;
    unsigned long end_valuation = 0;
    BigRat slope;
    int length() const { return end_index - start_index; }
};

struct NewtonPoint {
    int index = 0;
    unsigned long valuation = 0;
};

struct NewtonPolygon {
    std::vector<NewtonPoint> points;
    std::vector<NewtonSegment> hull;
};

NewtonPolygon newton_polygon_2adic(const BigPoly& f);

} // namespace fltkit
