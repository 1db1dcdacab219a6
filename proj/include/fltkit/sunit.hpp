#pragma once

// The S-unit equation lambda + mu = 1 over Q(sqrt l), l = 1 mod 24, with
// S the two primes above 2: the parametrized search over
// (eta1, eta2, r1, r2, v), the lemma predicates evaluated on its output,
// the S3 orbit action and Frey curve invariants.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fltkit/arith.hpp"
#include "fltkit/quadring.hpp"

namespace fltkit {

/// Distinct images of z under z -> 1/z, 1-z, 1/(1-z), z/(z-1), (z-1)/z,
/// sorted. Throws DomainError for z in {0, 1}.
std::vector<QuadRat> s3_orbit(const QuadRat& z);

/// (eta1 2^r1 - eta2 2^r2 + 1)^2 - eta1 2^(r1+2).
BigInt param_value(int eta1, int eta2, unsigned long r1, unsigned long r2);
/// (eta2 2^r2 - eta1 2^r1 + 1)^2 - eta2 2^(r2+2); equal to param_value.
BigInt param_value_conjugate(int eta1, int eta2, unsigned long r1, unsigned long r2);

struct ParamSolution {
    BigInt ell;
    int eta1 = 0, eta2 = 0;
    unsigned long r1 = 0, r2 = 0;
    BigInt v;
    // lambda = (eta1 2^r1 - eta2 2^r2 + 1 + v sqrt l)/2 and mu = 1 - lambda,
    // present when l fits in 64 bits.
    std::optional<QuadInt> lambda, mu;
};

struct UnresolvedTuple {
    int eta1 = 0, eta2 = 0;
    unsigned long r1 = 0, r2 = 0;
    BigInt value;
};

struct ParamSearchOptions {
    // l = residue mod modulus; nullopt accepts every prime.
    std::optional<std::pair<unsigned long, unsigned long>> ell_congruence = std::make_pair(24UL, 1UL);
    // Restrict to a single l; decided by divisibility, no factoring.
    std::optional<BigInt> ell;
    FactorOptions factor_options;
};

struct ParamSearchResult {
    std::vector<ParamSolution> solutions; // both signs of v
    std::vector<UnresolvedTuple> unresolved;
};

/// Enumerates eta1, eta2 = +-1 and 0 <= r2 <= r1 <= r1_max and keeps the
/// tuples whose value is l v^2 with l a prime passing the filter.
ParamSearchResult param_search(unsigned long r1_max, const ParamSearchOptions& opts = {});

struct LemmaChecks {
    bool parity = false;              // eta_i = -1 iff r_i odd, i = 1, 2
    bool r2_positive = false;
    bool sign_applicable = false;     // r1 >= 6
    bool sign = true;                 // eta1 = eta2 = -1 when applicable
    bool small_r1_applicable = false; // r1 <= 5
    bool small_r1 = true;             // l = 73 with lambda from the exceptional orbit
    bool all_pass() const { return parity && r2_positive && sign && small_r1; }
};

LemmaChecks filter_lemmas(const ParamSolution& sol);

/// Positive odd (a, b) with a^2 - b^2 = eta 2^k: a = 2^(k-2) + eta,
/// b = 2^(k-2) - eta. nullopt for k < 3.
std::optional<std::pair<BigInt, BigInt>> solve_odd_square_difference(unsigned long k, int eta);

/// The exceptional pair for l = 73: lambda = (-23 + 3 sqrt 73)/2.
QuadInt exceptional_lambda_73();

struct FreyInvariants {
    QuadRat c4, c6, delta, j;
    bool relation_holds = false; // c4^3 - c6^2 = 1728 delta
    // ord_P(j) = 8 ord_P(2) - 2t for t = ord_P(lambda) > 4 ord_P(2).
    bool valuation_law_applicable = false;
    bool valuation_law_holds = false;
    long ord_lambda = 0, ord_j = 0;
};

/// Throws DomainError for lambda in {0, 1}. When P is given and the
/// valuation hypothesis holds, the j-valuation law is checked too.
FreyInvariants frey_invariants(const QuadRat& lambda, const std::optional<QuadIdeal>& P = std::nullopt);

struct KrausVerdict {
    BigInt ell;
    unsigned long r1_max = 0;
    std::vector<ParamSolution> solutions;
    std::vector<LemmaChecks> checks;
    // Orbits under S3 and Galois conjugation, each a sorted set of lambdas.
    std::vector<std::vector<QuadRat>> orbits;
    bool lemmas_hold = false;
    bool dio_closure = false; // dio::solve found only the known solutions
    bool tail_closure = false;
    bool expected = false;    // one orbit for l = 73, none otherwise
    std::string verdict;      // "exceptional-orbit", "no-relevant-solutions", "unexpected-solutions"
};

/// Throws DomainError unless l is a prime = 1 mod 24 of at most 62 bits.
KrausVerdict kraus_verify(const BigInt& ell, unsigned long r1_max, bool with_closure = true);

} // namespace fltkit
