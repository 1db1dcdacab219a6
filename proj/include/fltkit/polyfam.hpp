#pragma once

// The family f_n = ((1 + s)(x + s)^n - (1 - s)(x - s)^n) / 2s, s = sqrt(-7),
// with checks that f_n is totally real and that 2 is totally ramified in
// the field it defines. The same checks run on polynomial lists read from
// files.

#include <optional>
#include <string>
#include <vector>

#include "fltkit/poly.hpp"

namespace fltkit {

struct FamilyPolynomial {
    unsigned n = 0;
    BigPoly f;
    BigPoly A, B; // (x + sqrt(-7))^n = A + B sqrt(-7)
};

/// n >= 1; f = A + B. Throws InternalError if f is not monic of degree n.
FamilyPolynomial gen_fn(unsigned n);

/// True iff f has deg f distinct real roots. Throws DomainError when f is
/// not squarefree or is constant.
bool check_totally_real(const BigPoly& f);
bool check_totally_real(const FamilyPolynomial& fp);

enum class RamificationStatus { certified, inconclusive };
const char* to_string(RamificationStatus s);

struct RamificationCertificate {
    RamificationStatus status = RamificationStatus::inconclusive;
    long shift = 0; // c with f(x + c) pure
    BigRat slope;   // h/n, the valuation of each root of f(x + c)
    std::vector<long> shifts_tried;
};

/// Tries c = 0, -1, 1, -2, 2, ... within [-window, window]; certifies when
/// the 2-adic Newton polygon of f(x + c) is one segment from (0, h) to
/// (n, 0) with gcd(h, n) = 1. Requires f monic.
RamificationCertificate certify_2_ramified(const BigPoly& f, long window = 4);
RamificationCertificate certify_2_ramified(const FamilyPolynomial& fp, long window = 4);

/// Parses "c0,c1,...,cn" (ascending coefficients); throws DomainError on
/// malformed input.
BigPoly parse_poly_line(const std::string& line);

struct PolyListEntry {
    std::size_t line_number = 0; // 1-based
    std::string text;
    std::optional<BigPoly> poly;
    std::optional<bool> totally_real;
    std::optional<RamificationCertificate> ramification;
    std::string error; // empty when every applicable check ran
};

/// One entry per non-blank line; lines starting with '#' are skipped.
/// Throws DomainError when the file cannot be opened.
std::vector<PolyListEntry> ingest_poly_list(const std::string& path, long window = 4);

} // namespace fltkit
