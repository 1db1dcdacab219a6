#pragma once

// The exponential Diophantine equation 2^s1 + eta 2^s2 = P_k, with
// P_k = (tau^k - tau^-k)/(2 sqrt 2) and tau = 3 + 2 sqrt 2: small-k brute
// force, an explicit Baker-Wustholz bound, continued-fraction reduction of
// that bound, and the closing factorization check 2^(2 s1 + 3) + 1 = l w^2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fltkit/arith.hpp"
#include "fltkit/highprec.hpp"

namespace fltkit {

struct DioSolution {
    unsigned long k = 0;
    int eta = 0;
    unsigned long s1 = 0;
    unsigned long s2 = 0;
    friend bool operator==(const DioSolution&, const DioSolution&) = default;
};

/// P_k by P_{k+1} = 6 P_k - P_{k-1}, P_0 = 0, P_1 = 2.
BigInt pell_value(unsigned long k);
/// P_k read off tau^k = x + P_k sqrt 2 in Z[sqrt 2].
BigInt pell_value_direct(unsigned long k);

/// ord_2(k) + 1; throws DomainError for k = 0.
unsigned long s2_bound(unsigned long k);

/// Solutions with 1 <= k <= k_max and s2 <= s2_bound(k), ordered by k then
/// eta descending. `jobs` > 1 splits the k range across threads.
std::vector<DioSolution> brute_force(unsigned long k_max, unsigned jobs = 1);
/// Same search with s2 up to the bit length of P_k.
std::vector<DioSolution> brute_force_unbounded(unsigned long k_max);

struct LinFormBound {
    BigRat C_lower, C_upper;
    BigRat a_upper, b_upper;
    BigInt k_max;
    long precision_bits = 0;
};

/// x < a + b log x implies x < 2(a + max(0, b log b)); returns the ceiling
/// of a rigorous upper bound for the right-hand side.
BigInt smart_bound(const BigRat& a_upper, const BigRat& b_upper, long bits = 256);

LinFormBound bw_constant(long bits = 256);

/// log tau / log sqrt 2 to the given precision.
HighPrecReal log_ratio(long bits);

struct CfReduction {
    BigInt k_upper;
    std::size_t convergent_index = 0; // zero-based; index 29 is the 30th
    BigInt p, q;
    bool convergent_certified = false;
    bool approximation_ok = false;    // |p/q - theta| < 1/q^2
    bool q_exceeds_twice_bound = false;
    BigRat a_prime_upper, b_prime_upper;
    BigInt reduced_bound;
    long precision_bits = 0;
};

struct CfReduceOptions {
    // Use this convergent instead of the first certified one with
    // q > 2 k_upper.
    std::optional<std::size_t> convergent_index;
    std::size_t max_terms = 60;
};

/// Throws InternalError when no admissible certified convergent exists.
CfReduction cf_reduce(const BigInt& k_upper, const CfReduceOptions& opts = {});

struct DioProof {
    std::vector<DioSolution> solutions;    // k >= 1
    std::string k0_family;                 // descriptor of the k = 0 family
    LinFormBound bound;
    CfReduction reduction;
    CfReduction second_pass;               // informational
    unsigned long brute_force_limit = 1000;
    std::vector<std::pair<std::string, std::string>> log;
};

/// Full pipeline; throws InternalError naming the failed stage.
DioProof solve(long bits = 256);

struct TailRow {
    unsigned long s1 = 0;
    BigInt value;                 // 2^(2 s1 + 3) + 1
    bool factorization_complete = false;
    BigInt squarefree_part;       // when complete
    bool admits_solution = false; // squarefree part a prime = 1 mod 24
    unsigned mod9 = 0;
    bool excluded_by_mod9 = false;
    // For 3 | s1 with t = s1/3: the cubic factors, their gcd and whether
    // both 3 x^2 equations fail modulo 4 (or t = 0 reduces to 9).
    bool cubic_split = false;
    BigInt factor1, factor2, factor_gcd;
    bool excluded_by_mod4 = false;
};

struct TailCheck {
    std::vector<TailRow> rows;
    std::vector<std::pair<unsigned long, BigInt>> gcds; // (t, gcd) for t = 1..t_max
    std::vector<unsigned long> flagged;                 // incomplete factorizations
    bool ok = false;
};

TailCheck tail_check(unsigned long s1_max, unsigned long t_max = 20);

} // namespace fltkit
