#pragma once

// Fundamental units of real quadratic fields, the square-unit test modulo
// 16P for fields with a single prime P above 2, and the descent step that
// turns one S-unit solution into another of larger valuation at P.

#include <cstdint>
#include <optional>
#include <vector>

#include "fltkit/quadring.hpp"

namespace fltkit {

struct FundamentalUnit {
    std::int64_t d = 0;
    QuadInt epsilon; // > 1 in the embedding with sqrt(d) > 0
    int norm = 0;
    int cf_period = 0; // period length of the expansion of sqrt(d)
};

// First convergent p/q of sqrt(d) with p^2 - d q^2 = +-1 gives the unit of
// Z[sqrt d]; for d = 5 (mod 8) a cube root in the maximal order replaces
// it when one exists.
FundamentalUnit fundamental_unit(std::int64_t d);

// Exact square root in the maximal order, or nullopt.
std::optional<QuadInt> sqrt_exact(const QuadInt& x);

// A unit (-1)^sign * base^exponent kept symbolically; exponents for the
// kernel can be large enough that the materialized element is unwieldy.
struct SymbolicUnit {
    int sign = 0;             // 0 or 1
    unsigned long exponent = 0;
    bool is_square() const { return sign == 0 && exponent % 2 == 0; }
};

struct CompCritReport {
    std::int64_t d = 0;
    bool applicable = false;
    Splitting splitting = Splitting::ramified;
    BigInt modulus_norm;            // N(16P)
    unsigned long epsilon_order_mod_16P = 0;
    bool minus_one_in_epsilon_image = false;
    QuadInt base_unit;              // generator of V modulo torsion
    std::vector<SymbolicUnit> U_generators;
    bool all_squares = false;

    QuadInt materialize(const SymbolicUnit& u) const;
};

struct CompCritOptions {
    // V = {+-1} x <epsilon^v_index>. Odd indices only; the caller asserts
    // 2-saturation of the resulting subgroup.
    unsigned long v_index = 1;
};

// Kernel U of V -> (O/16P)^x and whether all of U consists of squares of
// units. d = 1 (mod 8) yields applicable = false.
CompCritReport compcrit_test(std::int64_t d, const CompCritOptions& opts = {});

bool is_s_unit_2(const QuadRat& x);

struct DescentResult {
    QuadRat lambda_prime;
    QuadRat mu_prime;
    QuadInt epsilon;   // mu = epsilon^2, sign chosen so ord(1+eps) >= ord(1-eps)
    QuadRat lambda1;   // 1 + epsilon
    QuadRat lambda2;   // 1 - epsilon
    long ord_lambda = 0;
    long ord_two = 0;
    long ord_lambda_prime = 0;
    long ord_mu_prime = 0;
};

struct DescentOptions {
    std::optional<QuadInt> epsilon;
    // The S-unit check on (lambda, 1 - lambda) can be disabled to exercise
    // the valuation law on synthetic inputs.
    bool require_s_unit = true;
};

// From 1 - lambda = eps^2 with ord_P(1 - lambda) = 0 and
// ord_P(lambda) > 4 ord_P(2), builds lambda' = (1+eps)^2/(1-eps)^2 and
// mu' = -4 eps/(1-eps)^2. Throws DomainError naming the failed
// precondition.
DescentResult descend(const QuadRat& lambda, const QuadIdeal& P, const DescentOptions& opts = {});

} // namespace fltkit
