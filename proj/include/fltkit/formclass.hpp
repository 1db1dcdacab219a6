#pragma once

// Narrow class groups of real quadratic fields through primitive
// indefinite binary quadratic forms a x^2 + b x y + c y^2. Proper classes
// are identified by their cycle of reduced forms. Coefficients are 64-bit;
// the class-group envelope D < 10^7 keeps every intermediate in range.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fltkit {

struct IndefiniteForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t disc() const { return b * b - 4 * a * c; }
    friend bool operator==(const IndefiniteForm&, const IndefiniteForm&) = default;
    std::string to_string() const;
};

struct FormHash {
    std::size_t operator()(const IndefiniteForm& f) const noexcept;
};

// Checked constructor: D > 0 non-square, gcd(a, b, c) = 1.
IndefiniteForm make_form(std::int64_t a, std::int64_t b, std::int64_t c);

// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced(const IndefiniteForm& f);

// One reduction step (a, b, c) -> (c, t, (t^2 - D)/4c) with t = -b mod 2c
// normalized against sqrt(D); on reduced forms this walks the cycle.
IndefiniteForm rho(const IndefiniteForm& f);

IndefiniteForm reduce(const IndefiniteForm& f);

std::vector<IndefiniteForm> cycle(const IndefiniteForm& reduced);

IndefiniteForm principal_form(std::int64_t D);

// Proper inverse class: (a, -b, c), returned reduced.
IndefiniteForm inverse(const IndefiniteForm& f);

// Dirichlet composition followed by reduction.
IndefiniteForm compose(const IndefiniteForm& f, const IndefiniteForm& g);

struct FormClassGroup {
    static constexpr std::int64_t kMaxDisc = 10'000'000;

    std::int64_t D = 0;
    std::vector<IndefiniteForm> reduced_forms;
    std::vector<std::vector<IndefiniteForm>> cycles; // cycles[0] is principal
    std::unordered_map<IndefiniteForm, int, FormHash> cycle_of;
    long h_plus = 0;
    long two_sylow_order = 0;

    // Class index of any primitive form of discriminant D.
    int class_of(const IndefiniteForm& f) const;
    IndefiniteForm representative(int cls) const { return cycles.at(static_cast<std::size_t>(cls)).front(); }
    unsigned long order_of(const IndefiniteForm& f) const;
};

FormClassGroup class_group(std::int64_t D);

// dim over F_2 of Cl+[2], counted as the classes x with x^2 = 1.
int two_rank_by_composition(const FormClassGroup& G);

// Norm-2 form (2, b, (b^2 - D)/8) for the prime above 2 selected by
// `which` (0 or 1; 1 picks the conjugate when 2 splits). Throws
// DomainError when 2 is inert.
IndefiniteForm prime_form_above_2(std::int64_t D, int which = 0);

struct PrimeClassOrder {
    unsigned long order = 0;
    bool inert = false; // (2) itself, principal with a totally positive generator
};

// Order of the narrow class of the prime above 2. Inert 2 throws unless
// `lenient`, in which case order 1 is returned with the flag set.
PrimeClassOrder order_of_prime_class(std::int64_t D, int which = 0, bool lenient = false);

struct DirectConditions {
    std::int64_t d = 0;
    std::int64_t D = 0;
    bool cond_a = false;
    std::optional<bool> cond_b; // undefined when 2 splits
    bool cond_c = false;
    long h = 0;
    long h_plus = 0;
    int unit_norm = 0;
    std::optional<unsigned long> prime_class_order;
};

// Conditions evaluated from the class group itself: splitting of 2, the
// prime class order against the 2-part of h+, and parity of
// h = h+ / [N(eps) = +1 ? 2 : 1].
DirectConditions conditions_abc_direct(std::int64_t d);

} // namespace fltkit
