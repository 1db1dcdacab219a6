#include "fltkit/formclass.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fltkit/arith.hpp"
#include "fltkit/errors.hpp"
#include "fltkit/genus.hpp"
#include "fltkit/unitsq.hpp"

namespace fltkit {

namespace {

using i128 = __int128;

std::int64_t isqrt64(std::int64_t n) { return to_i64(isqrt(BigInt(static_cast<long>(n)))); }

std::int64_t mod_pos(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_pos128(i128 a, std::int64_t m)
{
    i128 r = a % m;
    if (r < 0)
        r += m;
    return static_cast<std::int64_t>(r);
}

// x a + y b = g >= 0
std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y)
{
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

void check_disc(std::int64_t D)
{
    if (D <= 0)
        throw DomainError("indefinite form: discriminant must be positive");
    const std::int64_t s = isqrt64(D);
    if (s * s == D)
        throw DomainError("indefinite form: discriminant " + std::to_string(D) + " is a square");
}

} // namespace

std::string IndefiniteForm::to_string() const
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

std::size_t FormHash::operator()(const IndefiniteForm& f) const noexcept
{
    std::size_t h = std::hash<std::int64_t>{}(f.a);
    h ^= std::hash<std::int64_t>{}(f.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(f.c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

IndefiniteForm make_form(std::int64_t a, std::int64_t b, std::int64_t c)
{
    IndefiniteForm f{a, b, c};
    check_disc(f.disc());
    if (std::gcd(std::gcd(a, b), c) != 1)
        throw DomainError("form " + f.to_string() + " is not primitive");
    return f;
}

bool is_reduced(const IndefiniteForm& f)
{
    const std::int64_t s = isqrt64(f.disc());
    const std::int64_t a2 = 2 * (f.a < 0 ? -f.a : f.a);
    return f.b > 0 && f.b <= s && a2 + f.b > s && a2 - f.b <= s;
}

IndefiniteForm rho(const IndefiniteForm& f)
{
    const std::int64_t D = f.disc();
    const std::int64_t s = isqrt64(D);
    const std::int64_t ac = f.c < 0 ? -f.c : f.c;
    const std::int64_t m = 2 * ac;
    std::int64_t t;
    if (ac > s) {
        t = mod_pos(-f.b, m);
        if (t > ac)
            t -= m;
    } else {
        t = s - mod_pos(s + f.b, m);
    }
    const i128 num = static_cast<i128>(t) * t - D;
    return {f.c, t, static_cast<std::int64_t>(num / (4 * static_cast<i128>(f.c)))};
}

IndefiniteForm reduce(const IndefiniteForm& f)
{
    check_disc(f.disc());
    IndefiniteForm g = f;
    while (!is_reduced(g))
        g = rho(g);
    return g;
}

std::vector<IndefiniteForm> cycle(const IndefiniteForm& reduced)
{
    if (!is_reduced(reduced))
        throw DomainError("cycle: form " + reduced.to_string() + " is not reduced");
    std::vector<IndefiniteForm> out{reduced};
    for (IndefiniteForm g = rho(reduced); !(g == reduced); g = rho(g))
        out.push_back(g);
    return out;
}

IndefiniteForm principal_form(std::int64_t D)
{
    check_disc(D);
    const std::int64_t s = isqrt64(D);
    const std::int64_t b = ((s - D) % 2 == 0) ? s : s - 1;
    return {1, b, (b * b - D) / 4};
}

IndefiniteForm inverse(const IndefiniteForm& f) { return reduce({f.a, -f.b, f.c}); }

IndefiniteForm compose(const IndefiniteForm& f, const IndefiniteForm& g)
{
    const std::int64_t D = f.disc();
    if (g.disc() != D)
        throw DomainError("compose: discriminants differ");
    const std::int64_t s = (f.b + g.b) / 2;
    std::int64_t x, y, x2, w;
    const std::int64_t g1 = egcd(f.a, g.a, x, y);
    const std::int64_t e = egcd(g1, s, x2, w);
    const i128 v = static_cast<i128>(x2) * y;
    const std::int64_t a3 = static_cast<std::int64_t>(static_cast<i128>(f.a) * g.a / (static_cast<i128>(e) * e));
    const i128 b3raw = static_cast<i128>(g.b) +
                       2 * static_cast<i128>(g.a / e) * (v * ((f.b - g.b) / 2) - static_cast<i128>(w) * g.c);
    const std::int64_t aa = a3 < 0 ? -a3 : a3;
    std::int64_t b3 = mod_pos128(b3raw, 2 * aa);
    if (b3 > aa)
        b3 -= 2 * aa;
    const i128 num = static_cast<i128>(b3) * b3 - D;
    if (num % (4 * static_cast<i128>(a3)) != 0)
        throw InternalError("compose: non-integral third coefficient");
    return reduce({a3, b3, static_cast<std::int64_t>(num / (4 * static_cast<i128>(a3)))});
}

// --------------------------------------------------------------------------

int FormClassGroup::class_of(const IndefiniteForm& f) const
{
    if (f.disc() != D)
        throw DomainError("class_of: form of discriminant " + std::to_string(f.disc()) + " in group of " +
                          std::to_string(D));
    const auto it = cycle_of.find(reduce(f));
    if (it == cycle_of.end())
        throw InternalError("class_of: reduced form " + reduce(f).to_string() + " missing from enumeration");
    return it->second;
}

unsigned long FormClassGroup::order_of(const IndefiniteForm& f) const
{
    IndefiniteForm x = reduce(f);
    unsigned long n = 1;
    while (class_of(x) != 0) {
        x = compose(x, f);
        if (++n > static_cast<unsigned long>(h_plus))
            throw InternalError("order_of: order exceeds h+");
    }
    return n;
}

FormClassGroup class_group(std::int64_t D)
{
    if (D >= FormClassGroup::kMaxDisc)
        throw UnsupportedError("class_group: D = " + std::to_string(D) + " exceeds the envelope D < 10^7");
    if (D <= 0 || !is_fundamental_discriminant(D))
        throw DomainError("class_group: " + std::to_string(D) + " is not a positive fundamental discriminant");
    FormClassGroup G;
    G.D = D;
    const std::int64_t s = isqrt64(D);
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        const std::int64_t N = (D - b * b) / 4;
        const std::int64_t lo = std::max<std::int64_t>(1, (s - b) / 2 + 1);
        const std::int64_t hi = (s + b) / 2;
        for (std::int64_t A = lo; A <= hi; ++A) {
            if (N % A != 0)
                continue;
            const std::int64_t C = N / A;
            if (std::gcd(std::gcd(A, b), C) != 1)
                continue;
            G.reduced_forms.push_back({A, b, -C});
            G.reduced_forms.push_back({-A, b, C});
        }
    }
    std::sort(G.reduced_forms.begin(), G.reduced_forms.end(), [](const auto& x, const auto& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });

    auto add_cycle = [&](const IndefiniteForm& start) {
        const int id = static_cast<int>(G.cycles.size());
        G.cycles.push_back(cycle(start));
        for (const auto& g : G.cycles.back()) {
            if (!G.cycle_of.emplace(g, id).second)
                throw InternalError("class_group: form " + g.to_string() + " on two cycles");
        }
    };
    add_cycle(principal_form(D));
    for (const auto& f : G.reduced_forms)
        if (!G.cycle_of.count(f))
            add_cycle(f);
    if (G.cycle_of.size() != G.reduced_forms.size())
        throw InternalError("class_group: cycles left the reduced-form enumeration");
    G.h_plus = static_cast<long>(G.cycles.size());
    G.two_sylow_order = G.h_plus & -G.h_plus;
    return G;
}

int two_rank_by_composition(const FormClassGroup& G)
{
    long count = 0;
    for (int cls = 0; cls < G.h_plus; ++cls) {
        const IndefiniteForm r = G.representative(cls);
        if (G.class_of(compose(r, r)) == 0)
            ++count;
    }
    const long rank = exact_log2(BigInt(count));
    if (rank < 0)
        throw InternalError("two_rank_by_composition: 2-torsion count " + std::to_string(count) +
                            " is not a power of 2");
    return static_cast<int>(rank);
}

IndefiniteForm prime_form_above_2(std::int64_t D, int which)
{
    check_disc(D);
    const std::int64_t r = mod_pos(D, 8);
    if (r == 5)
        throw DomainError("prime_form_above_2: 2 is inert for D = " + std::to_string(D));
    std::int64_t b = -1;
    for (std::int64_t t = 0; t < 4; ++t)
        if ((t * t) % 8 == r)
            b = t;
    if (b < 0)
        throw DomainError("prime_form_above_2: no norm-2 form for D = " + std::to_string(D));
    if (which == 1)
        b = -b;
    return {2, b, (b * b - D) / 8};
}

PrimeClassOrder order_of_prime_class(std::int64_t D, int which, bool lenient)
{
    if (mod_pos(D, 8) == 5) {
        if (!lenient)
            throw DomainError("order_of_prime_class: 2 is inert for D = " + std::to_string(D));
        return {1, true};
    }
    const FormClassGroup G = class_group(D);
    return {G.order_of(prime_form_above_2(D, which)), false};
}

DirectConditions conditions_abc_direct(std::int64_t d)
{
    if (d < 2)
        throw DomainError("conditions_abc_direct: d must be > 1");
    DirectConditions out;
    out.d = d;
    out.D = fundamental_discriminant(d);
    const FormClassGroup G = class_group(out.D);
    const FundamentalUnit fu = fundamental_unit(d);
    out.unit_norm = fu.norm;
    out.h_plus = G.h_plus;
    out.h = fu.norm == -1 ? G.h_plus : G.h_plus / 2;
    const PrimesAbove2 p2 = prime_above_2(d);
    out.cond_a = p2.splitting == Splitting::ramified;
    if (p2.splitting == Splitting::inert) {
        out.prime_class_order = 1;
        out.cond_b = G.two_sylow_order == 1;
    } else if (p2.splitting == Splitting::ramified) {
        out.prime_class_order = G.order_of(prime_form_above_2(out.D));
        out.cond_b = *out.prime_class_order % static_cast<unsigned long>(G.two_sylow_order) == 0;
    }
    out.cond_c = out.h % 2 == 1;
    return out;
}

} // namespace fltkit
