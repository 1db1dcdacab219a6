#pragma once

// Genus theory of quadratic fields: prime-discriminant factorizations,
// 2-ranks of the class group and the narrow class group, and the
// closed-form classification of real quadratic fields in which 2 ramifies.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fltkit/arith.hpp"

namespace fltkit {

/// d if d = 1 (mod 4), 4d otherwise. Throws DomainError for d in {0, 1}
/// or d not squarefree.
std::int64_t fundamental_discriminant(std::int64_t d);

/// True for D = d or 4d as above.
bool is_fundamental_discriminant(std::int64_t D);

struct PrimeDiscFactorization {
    std::int64_t D = 0;
    // The 2-part (-4, 8 or -8) first when present, then odd prime
    // discriminants by increasing absolute value.
    std::vector<std::int64_t> factors;
    int t() const { return static_cast<int>(factors.size()); }
};

PrimeDiscFactorization prime_disc_factorization(std::int64_t D);

struct TwoRanks {
    int rank_clplus = 0;
    int rank_cl = 0;
};

TwoRanks two_ranks(std::int64_t D);

// Conditions for a quadratic field K = Q(sqrt d):
//   a: 2 ramifies in K;
//   b: the 2-part of h+ divides the order of the narrow class of the
//      prime above 2;
//   c: h is odd.
// cond_b is nullopt when genus theory alone does not decide it (h even).
struct QuadFieldReport {
    std::int64_t d = 0;
    std::int64_t D = 0;
    int t = 0;
    int two_rank_clplus = 0;
    int two_rank_cl = 0;
    bool cond_a = false;
    std::optional<bool> cond_b;
    bool cond_c = false;
    std::string classification_tag;
    std::optional<int> eta;

    bool all_hold() const { return cond_a && cond_b.value_or(false) && cond_c; }
};

QuadFieldReport classify_conditions(std::int64_t d);

/// Sign eta of a^2 - d b^2 = 2 eta, for d = l or 2l with l prime = 3 (mod
/// 4), found among the convergents of sqrt(d) over one period plus one
/// term. Throws DomainError outside that family and InternalError when no
/// representation appears.
int eta_sign(std::int64_t d);

struct NormTwoRepresentation {
    BigInt a, b;
    int eta = 0;
};
std::optional<NormTwoRepresentation> find_norm_pm2(std::int64_t d);

/// Largest n >= 0 with 29.009^n * exp(-8.3185) < bound, decided with
/// rigorous enclosures; -1 when even n = 0 fails.
long odlyzko_max_degree(const BigRat& bound);

} // namespace fltkit
