#pragma once

// Rigorous fixed-point reals. A HighPrecReal is a dyadic center
// mantissa * 2^exponent together with an absolute rational error radius;
// the represented real is guaranteed to lie in [center - radius,
// center + radius]. Every operation widens the radius to cover its own
// rounding, so enclosures never shrink below the truth.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fltkit/arith.hpp"

namespace fltkit {

class HighPrecReal {
public:
    HighPrecReal() = default;

    // Exact dyadic value m * 2^e with zero radius.
    static HighPrecReal dyadic(BigInt mantissa, long exponent);
    // x rounded to the 2^-bits grid; radius is the exact rounding error.
    static HighPrecReal from_rational(const BigRat& x, long bits);
    // Smallest enclosure of [lo, hi] centered on the 2^-bits grid.
    static HighPrecReal from_interval(const BigRat& lo, const BigRat& hi, long bits);

    const BigInt& mantissa() const { return mantissa_; }
    long exponent() const { return exponent_; }
    const BigRat& radius() const { return radius_; }
    BigRat center() const;
    BigRat lower() const { return center() - radius_; }
    BigRat upper() const { return center() + radius_; }
    bool is_exact() const { return sgn(radius_) == 0; }
    bool contains(const BigRat& x) const;
    // Enclosure excludes zero.
    bool is_certainly_positive() const { return sgn(lower()) > 0; }
    bool is_certainly_negative() const { return sgn(upper()) < 0; }

    bool certainly_less(const BigRat& x) const { return upper() < x; }
    bool certainly_greater(const BigRat& x) const { return lower() > x; }
    bool certainly_less(const HighPrecReal& o) const { return upper() < o.lower(); }
    bool certainly_greater(const HighPrecReal& o) const { return lower() > o.upper(); }

    // Rounds the center to the 2^-bits grid and relaxes the radius to a
    // dyadic upper bound on a slightly finer grid.
    HighPrecReal rounded(long bits) const;

    friend HighPrecReal operator+(const HighPrecReal& a, const HighPrecReal& b);
    friend HighPrecReal operator-(const HighPrecReal& a, const HighPrecReal& b);
    friend HighPrecReal operator-(const HighPrecReal& a);
    friend HighPrecReal operator*(const HighPrecReal& a, const HighPrecReal& b);
    friend HighPrecReal operator*(const HighPrecReal& a, const BigInt& k);
    // Quotient rounded to `bits`; throws DomainError when the divisor's
    // enclosure contains zero.
    static HighPrecReal divide(const HighPrecReal& a, const HighPrecReal& b, long bits);

    double to_double() const { return center().get_d(); }

private:
    BigInt mantissa_ = 0;
    long exponent_ = 0;
    BigRat radius_ = 0;
};

/// log(x) for rational x > 0 with radius <= 2^-bits; bits >= 32.
/// Argument reduction to x = 2^k y with y in [2/3, 3/2), then the series
/// log y = 2 (z + z^3/3 + ...) with z = (y-1)/(y+1) and a rigorous tail.
HighPrecReal highprec_log(const BigRat& x, long bits);

/// log of a positive enclosure, by monotonicity on its endpoints.
HighPrecReal highprec_log(const HighPrecReal& x, long bits);

/// Enclosure of sqrt(n) for integer n >= 0 with radius <= 2^-bits.
HighPrecReal highprec_sqrt(const BigInt& n, long bits);

/// log(a + b sqrt(d)) for rationals a, b and squarefree d > 0, requiring
/// a + b sqrt(d) > 0, with radius <= 2^-bits.
HighPrecReal highprec_log_quadratic(const BigRat& a, const BigRat& b, const BigInt& d, long bits);

struct Convergent {
    BigInt p;
    BigInt q;
};

// Partial quotients a_0, a_1, ... of a real enclosure. A term is certified
// when both enclosure endpoints produce it, which forces every real in the
// enclosure to share the prefix. Uncertified trailing terms (from the
// center) are returned with their flag cleared.
struct ContinuedFraction {
    std::vector<BigInt> terms;
    std::vector<Convergent> convergents;
    std::vector<bool> term_certified;
    bool certified = false; // all requested terms certified
    long precision_bits = 0;
    std::size_t certified_count() const;
};

ContinuedFraction continued_fraction(const HighPrecReal& x, std::size_t n_terms);
ContinuedFraction continued_fraction(const BigRat& x, std::size_t n_terms);

// Recomputes `make(bits)` with doubling precision, starting at start_bits,
// until the expansion is certified or max_bits is exceeded. The returned
// expansion reports the last precision tried.
ContinuedFraction certified_continued_fraction(const std::function<HighPrecReal(long)>& make,
                                               std::size_t n_terms, long start_bits = 256,
                                               long max_bits = 4096);

// Evaluates a threshold predicate on an enclosure with escalating
// precision. Returns nullopt when every precision up to max_bits leaves the
// answer undecided.
std::optional<bool> decide_with_escalation(const std::function<std::optional<bool>(long)>& try_bits,
                                           long start_bits = 128, long max_bits = 4096);

} // namespace fltkit
