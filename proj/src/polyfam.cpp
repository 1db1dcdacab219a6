#include "fltkit/polyfam.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "fltkit/errors.hpp"

namespace fltkit {

FamilyPolynomial gen_fn(unsigned n)
{
    if (n < 1)
        throw DomainError("gen_fn: n must be >= 1");
    FamilyPolynomial fp;
    fp.n = n;
    // (A + B s)(x + s) = (x A - 7 B) + (A + x B) s
    const BigPoly x{0, 1};
    BigPoly A{1}, B;
    for (unsigned i = 0; i < n; ++i) {
        BigPoly nA = x * A - B * BigInt(7);
        BigPoly nB = A + x * B;
        A = std::move(nA);
        B = std::move(nB);
    }
    fp.A = A;
    fp.B = B;
    fp.f = A + B;
    if (fp.f.degree() != static_cast<int>(n) || !fp.f.is_monic())
        throw InternalError("gen_fn: f_" + std::to_string(n) + " is not monic of degree n");
    return fp;
}

bool check_totally_real(const BigPoly& f)
{
    if (f.degree() < 1)
        throw DomainError("check_totally_real: constant polynomial");
    if (poly_gcd(f, f.derivative()).degree() > 0)
        throw DomainError("check_totally_real: " + f.to_string() + " is not squarefree");
    return sturm_real_roots(f).real_root_count == f.degree();
}

bool check_totally_real(const FamilyPolynomial& fp) { return check_totally_real(fp.f); }

const char* to_string(RamificationStatus s)
{
    return s == RamificationStatus::certified ? "certified-totally-ramified" : "inconclusive";
}

RamificationCertificate certify_2_ramified(const BigPoly& f, long window)
{
    if (!f.is_monic())
        throw DomainError("certify_2_ramified: polynomial must be monic");
    RamificationCertificate cert;
    const int n = f.degree();
    for (long k = 0; k <= 2 * window; ++k) {
        const long c = (k % 2 == 1) ? -(k + 1) / 2 : k / 2;
        cert.shifts_tried.push_back(c);
        const BigPoly g = f.shift(BigInt(c));
        if (sgn(g[0]) == 0)
            continue;
        const NewtonPolygon np = newton_polygon_2adic(g);
        if (np.hull.size() != 1 || np.hull[0].start_index != 0 || np.hull[0].end_index != n)
            continue;
        const unsigned long h = np.hull[0].start_valuation;
        if (std::gcd(h, static_cast<unsigned long>(n)) != 1)
            continue;
        cert.status = RamificationStatus::certified;
        cert.shift = c;
        cert.slope = BigRat(BigInt(h), BigInt(n));
        cert.slope.canonicalize();
        return cert;
    }
    return cert;
}

RamificationCertificate certify_2_ramified(const FamilyPolynomial& fp, long window)
{
    return certify_2_ramified(fp.f, window);
}

BigPoly parse_poly_line(const std::string& line)
{
    std::vector<BigInt> coeffs;
    std::stringstream ss(line);
    std::string field;
    std::size_t count = 0;
    while (std::getline(ss, field, ',')) {
        ++count;
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        if (b == std::string::npos)
            throw DomainError("empty coefficient at position " + std::to_string(count));
        std::string tok = field.substr(b, e - b + 1);
        if (tok.rfind("\xE2\x88\x92", 0) == 0) // U+2212 minus sign
            tok = "-" + tok.substr(3);
        const std::size_t digits = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (digits == tok.size() || tok.find_first_not_of("0123456789", digits) != std::string::npos)
            throw DomainError("malformed coefficient '" + tok + "' at position " + std::to_string(count));
        if (tok[0] == '+')
            tok.erase(0, 1);
        coeffs.emplace_back(tok);
    }
    if (!line.empty() && line.back() == ',')
        throw DomainError("empty coefficient at position " + std::to_string(count + 1));
    if (coeffs.empty())
        throw DomainError("no coefficients");
    return BigPoly(std::move(coeffs));
}

std::vector<PolyListEntry> ingest_poly_list(const std::string& path, long window)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("ingest_poly_list: cannot open " + path);
    std::vector<PolyListEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#')
            continue;
        PolyListEntry e;
        e.line_number = lineno;
        e.text = line;
        try {
            e.poly = parse_poly_line(line);
            if (e.poly->degree() < 1)
                throw DomainError("degree must be at least 1");
            e.totally_real = check_totally_real(*e.poly);
            if (!e.poly->is_monic())
                throw DomainError("ramification check requires a monic polynomial");
            e.ramification = certify_2_ramified(*e.poly, window);
        } catch (const DomainError& err) {
            e.error = err.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace fltkit
