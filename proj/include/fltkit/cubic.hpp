#pragma once

// Discriminants of the cubics X^3 + a X^2 + (eta1 2^n - 1 + eta2 - a) X - eta2,
// their residues mod 3 over the 24 classes (a mod 3, n mod 2, eta1, eta2),
// and the square discriminant of X^3 + a X^2 - (a + 3) X + 1.

#include <vector>

#include "fltkit/arith.hpp"
#include "fltkit/poly.hpp"

namespace fltkit {

/// 18abc - 4a^3 c + a^2 b^2 - 4b^3 - 27c^2 for X^3 + a X^2 + b X + c.
BigInt cubic_disc_abc(const BigInt& a, const BigInt& b, const BigInt& c);

/// The cubic X^3 + a X^2 + (eta1 2^n - 1 + eta2 - a) X - eta2.
BigPoly family_cubic(const BigInt& a, unsigned long n, int eta1, int eta2);

BigInt cubic_disc(const BigInt& a, unsigned long n, int eta1, int eta2);

struct CubicCase {
    int a0 = 0;  // a mod 3
    int n0 = 0;  // n mod 2
    int eta1 = 0, eta2 = 0;
    int delta_mod3 = 0;
};

/// All 24 cases, ordered by a0, n0, eta1, eta2 with -1 before +1.
std::vector<CubicCase> mod3_table();

struct CaseIIIdentity {
    BigPoly discriminant; // in the variable a
    BigPoly square;       // (a^2 + 3a + 9)^2
    bool symbolic = false;
    bool numeric = false; // a in [-1000, 1000]
    bool holds() const { return symbolic && numeric; }
};

CaseIIIdentity caseII_identity();

} // namespace fltkit
