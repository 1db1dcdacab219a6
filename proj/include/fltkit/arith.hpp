#pragma once

// Exact integer arithmetic: GMP-backed big integers and rationals plus the
// number-theoretic primitives (integer square roots, primality, factoring)
// used throughout the toolkit.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fltkit {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// floor(sqrt(n)); throws DomainError for n < 0.
BigInt isqrt(const BigInt& n);

/// True when n >= 0 is a perfect square.
bool is_square(const BigInt& n);

/// 2-adic valuation of a nonzero integer; throws DomainError for 0.
unsigned long ord2(const BigInt& n);

/// Valuation of n at the prime p; n != 0.
unsigned long ord_p(const BigInt& n, const BigInt& p);

BigInt pow2(unsigned long e);
BigInt ipow(const BigInt& base, unsigned long e);

/// Returns log2(n) when n is a positive power of two, -1 otherwise.
long exact_log2(const BigInt& n);

std::int64_t to_i64(const BigInt& n);

// Miller-Rabin with a fixed witness set {2,3,5,7,11,13,17}; this is
// deterministic for n < 341550071728321 (> 3.3e14). Above that bound the
// test additionally runs 64 rounds with bases drawn from a generator seeded
// by n itself, so results are reproducible; the error probability is below
// 4^-64.
inline constexpr std::uint64_t kDeterministicPrimeBound = 341550071728321ULL;
bool is_prime(const BigInt& n);

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactorOptions {
    // Trial division bound before switching to Pollard rho.
    unsigned long trial_bound = 10000;
    // Maximum rho iterations spent on a single composite cofactor (summed
    // over all restarts) before it is reported as unfactored.
    unsigned long rho_step_cap = 4'000'000;
};

// A factorization in which `factors` are proven-prime (by is_prime) power
// factors, and `unfactored` holds composite cofactors that exhausted the
// rho budget. complete() iff unfactored is empty. The product of all
// factors and all unfactored entries always equals the input.
struct Factorization {
    std::vector<PrimePower> factors;
    std::vector<BigInt> unfactored;
    bool complete() const { return unfactored.empty(); }
    BigInt product() const;
};

/// Factors n > 0; throws DomainError for n <= 0. Primes sorted ascending.
Factorization factor(const BigInt& n, const FactorOptions& opts = {});

/// Squarefree part s and root r with n = s * r^2, from a complete
/// factorization; s keeps the sign of n.
std::pair<BigInt, BigInt> squarefree_decomposition(const Factorization& f, int sign = 1);

/// Squarefree test for machine-size integers (|n| >= 1).
bool is_squarefree(std::int64_t n);

/// Extended gcd: returns g = gcd(a, b) >= 0 with x*a + y*b = g.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y);

/// floor(a / b) for b != 0.
BigInt floor_div(const BigInt& a, const BigInt& b);
/// a mod b in [0, |b|).
BigInt mod_floor(const BigInt& a, const BigInt& b);

BigInt floor_rat(const BigRat& x);
BigInt ceil_rat(const BigRat& x);

std::string to_string(const BigInt& n);
std::string to_string(const BigRat& x);

} // namespace fltkit
