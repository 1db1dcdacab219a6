#include "fltkit/cubic.hpp"

#include "fltkit/errors.hpp"

namespace fltkit {

namespace {

void check_eta(int eta)
{
    if (eta != 1 && eta != -1)
        throw DomainError("cubic: eta must be +-1");
}

BigInt linear_coeff(const BigInt& a, unsigned long n, int eta1, int eta2)
{
    check_eta(eta1);
    check_eta(eta2);
    return eta1 * pow2(n) - 1 + eta2 - a;
}

} // namespace

BigInt cubic_disc_abc(const BigInt& a, const BigInt& b, const BigInt& c)
{
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

BigPoly family_cubic(const BigInt& a, unsigned long n, int eta1, int eta2)
{
    return BigPoly(std::vector<BigInt>{BigInt(-eta2), linear_coeff(a, n, eta1, eta2), a, BigInt(1)});
}

BigInt cubic_disc(const BigInt& a, unsigned long n, int eta1, int eta2)
{
    return cubic_disc_abc(a, linear_coeff(a, n, eta1, eta2), BigInt(-eta2));
}

std::vector<CubicCase> mod3_table()
{
    std::vector<CubicCase> out;
    for (int a0 = 0; a0 < 3; ++a0)
        for (int n0 = 0; n0 < 2; ++n0)
            for (int eta1 : {-1, 1})
                for (int eta2 : {-1, 1}) {
                    const BigInt D = cubic_disc(BigInt(a0), static_cast<unsigned long>(n0), eta1, eta2);
                    out.push_back({a0, n0, eta1, eta2, static_cast<int>(mod_floor(D, BigInt(3)).get_si())});
                }
    return out;
}

CaseIIIdentity caseII_identity()
{
    CaseIIIdentity r;
    const BigPoly a{0, 1};
    const BigPoly b{-3, -1};
    const BigPoly c{1};
    auto k = [](long n) { return BigPoly::constant(BigInt(n)); };
    r.discriminant = k(18) * a * b * c - k(4) * a.pow(3) * c + a * a * b * b - k(4) * b.pow(3) - k(27) * c * c;
    r.square = BigPoly{9, 3, 1}.pow(2);
    r.symbolic = r.discriminant == r.square;
    r.numeric = true;
    for (long x = -1000; x <= 1000; ++x) {
        const BigInt ax(x);
        const BigInt s = ax * ax + 3 * ax + 9;
        r.numeric = r.numeric && cubic_disc_abc(ax, -(ax + 3), BigInt(1)) == s * s;
    }
    return r;
}

} // namespace fltkit
