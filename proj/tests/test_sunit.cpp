#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <tuple>

#include "fltkit/errors.hpp"
#include "fltkit/sunit.hpp"
#include "oracles.hpp"

using namespace fltkit;
using boost::multiprecision::cpp_int;

namespace {

QuadRat lambda73() { return QuadRat(exceptional_lambda_73()); }

std::vector<QuadRat> images(const QuadRat& z)
{
    const QuadRat one = QuadRat::from_rat(z.d(), 1);
    return {z.inverse(), one - z, (one - z).inverse(), z / (z - one), (z - one) / z};
}

// (l, eta1, eta2, r1, r2, |v|) found by trial division on the norm value.
using Key = std::tuple<long, int, int, unsigned long, unsigned long, long>;

std::set<Key> oracle_param_search(unsigned long r1_max)
{
    std::set<Key> out;
    for (unsigned long r1 = 0; r1 <= r1_max; ++r1)
        for (unsigned long r2 = 0; r2 <= r1; ++r2)
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    const cpp_int p1 = cpp_int(e1) << r1, p2 = cpp_int(e2) << r2;
                    const cpp_int t = p1 - p2 + 1;
                    const cpp_int N = t * t - 4 * p1;
                    if (N <= 0)
                        continue;
                    long n = N.convert_to<long>();
                    long sq = 1, rest = 1;
                    for (long p = 2; p * p <= n; ++p) {
                        int e = 0;
                        while (n % p == 0) {
                            n /= p;
                            ++e;
                        }
                        for (int i = 0; i < e / 2; ++i)
                            sq *= p;
                        if (e % 2)
                            rest *= p;
                    }
                    rest *= n;
                    if (!oracle::prime_by_trial(rest))
                        continue;
                    out.emplace(rest, e1, e2, r1, r2, sq);
                }
    return out;
}

} // namespace

TEST_CASE("S3 orbits")
{
    const auto o2 = s3_orbit(QuadRat::from_rat(2, 2));
    CHECK(o2.size() == 3);
    CHECK(std::count(o2.begin(), o2.end(), QuadRat::from_rat(2, BigRat(1, 2))) == 1);
    CHECK(std::count(o2.begin(), o2.end(), QuadRat::from_rat(2, -1)) == 1);

    const auto o = s3_orbit(lambda73());
    CHECK(o.size() == 6);
    for (const auto& z : o)
        for (const auto& w : images(z))
            CHECK(std::binary_search(o.begin(), o.end(), w));
    CHECK(std::is_sorted(o.begin(), o.end()));
    CHECK_THROWS_AS(s3_orbit(QuadRat::from_rat(2, 0)), DomainError);
    CHECK_THROWS_AS(s3_orbit(QuadRat::from_rat(2, 1)), DomainError);
    // The order-3 point of the action has a 2-element orbit.
    const QuadRat rho(-3, BigRat(1, 2), BigRat(1, 2));
    CHECK(s3_orbit(rho).size() == 2);
}

TEST_CASE("exceptional pair")
{
    const QuadInt l = exceptional_lambda_73();
    const QuadInt m = QuadInt::from_int(73, 1) - l;
    CHECK(l.norm() == -32);
    CHECK(m.norm() == -8);
    CHECK(m == QuadInt(73, 25, -3));
    CHECK(factor(BigInt(657)).factors == std::vector<PrimePower>{{3, 2}, {73, 1}});
}

TEST_CASE("parametrization values")
{
    for (unsigned long r1 = 0; r1 <= 30; ++r1)
        for (unsigned long r2 = 0; r2 <= r1; ++r2)
            for (int e1 : {1, -1})
                for (int e2 : {1, -1}) {
                    const BigInt v = param_value(e1, e2, r1, r2);
                    CHECK(v == param_value_conjugate(e1, e2, r1, r2));
                    const cpp_int p1 = cpp_int(e1) << r1, p2 = cpp_int(e2) << r2;
                    const cpp_int t = p2 - p1 + 1;
                    CHECK(v.get_str() == cpp_int(t * t - 4 * p2).str());
                }
}

TEST_CASE("parametrized search, l = 1 mod 24")
{
    const ParamSearchResult r = param_search(5);
    CHECK(r.unresolved.empty());
    REQUIRE(r.solutions.size() == 2);
    std::set<long> vs;
    for (const auto& s : r.solutions) {
        CHECK(s.ell == 73);
        CHECK(s.eta1 == -1);
        CHECK(s.eta2 == -1);
        CHECK(s.r1 == 5);
        CHECK(s.r2 == 3);
        CHECK(s.ell * s.v * s.v == 657);
        vs.insert(s.v.get_si());
        REQUIRE(s.lambda);
        CHECK(s.lambda->norm() == -32);
        CHECK(s.mu->norm() == -8);
        const auto o = s3_orbit(lambda73());
        const QuadRat l(*s.lambda);
        CHECK((std::binary_search(o.begin(), o.end(), l) || std::binary_search(o.begin(), o.end(), l.conj())));
    }
    CHECK(vs == std::set<long>{-3, 3});
    CHECK(param_search(0).solutions.empty());
}

TEST_CASE("unfiltered search matches a trial-division oracle")
{
    ParamSearchOptions opts;
    opts.ell_congruence.reset();
    for (unsigned long rmax : {0UL, 5UL, 9UL}) {
        const ParamSearchResult r = param_search(rmax, opts);
        std::set<Key> got;
        for (const auto& s : r.solutions)
            if (sgn(s.v) > 0)
                got.emplace(s.ell.get_si(), s.eta1, s.eta2, s.r1, s.r2, s.v.get_si());
        CHECK(got == oracle_param_search(rmax));
        CHECK(r.solutions.size() == 2 * got.size());
    }
    const ParamSearchResult r0 = param_search(0, opts);
    // (1, -1), (-1, 1), (-1, -1) at r1 = r2 = 0 all give 5
    REQUIRE(r0.solutions.size() == 6);
    for (const auto& s : r0.solutions)
        CHECK(s.ell == 5);
}

TEST_CASE("search restricted to one l")
{
    ParamSearchOptions opts;
    opts.ell = BigInt(73);
    CHECK(param_search(12, opts).solutions.size() == 2);
    opts.ell = BigInt(97);
    CHECK(param_search(12, opts).solutions.empty());
}

TEST_CASE("filter lemmas")
{
    const ParamSearchResult r = param_search(5);
    for (const auto& s : r.solutions) {
        const LemmaChecks c = filter_lemmas(s);
        CHECK(c.parity);
        CHECK(c.r2_positive);
        CHECK_FALSE(c.sign_applicable);
        CHECK(c.small_r1_applicable);
        CHECK(c.small_r1);
        CHECK(c.all_pass());
    }
    ParamSolution bad{73, 1, -1, 3, 1, 3, std::nullopt, std::nullopt};
    const LemmaChecks c = filter_lemmas(bad);
    CHECK_FALSE(c.parity);
    CHECK_FALSE(c.small_r1);
    CHECK_FALSE(c.all_pass());
    ParamSolution big{97, 1, 1, 8, 0, 1, std::nullopt, std::nullopt};
    const LemmaChecks cb = filter_lemmas(big);
    CHECK(cb.parity);
    CHECK_FALSE(cb.r2_positive);
    CHECK(cb.sign_applicable);
    CHECK_FALSE(cb.sign);
    CHECK_FALSE(cb.small_r1_applicable);
}

TEST_CASE("odd square differences")
{
    for (unsigned long k = 0; k <= 14; ++k) {
        for (int eta : {1, -1}) {
            std::vector<std::pair<long, long>> found;
            const long target = eta * (1L << k);
            for (long b = 1; b < (1L << k) + 4; b += 2)
                for (long a = 1; a < (1L << k) + 4; a += 2)
                    if (a * a - b * b == target)
                        found.emplace_back(a, b);
            const auto s = solve_odd_square_difference(k, eta);
            if (found.empty()) {
                CHECK_FALSE(s.has_value());
            } else {
                REQUIRE(found.size() == 1);
                REQUIRE(s);
                CHECK(s->first == found[0].first);
                CHECK(s->second == found[0].second);
            }
        }
    }
    CHECK_THROWS_AS(solve_odd_square_difference(5, 0), DomainError);
}

TEST_CASE("Frey curve invariants")
{
    for (const BigRat& q : {BigRat(2), BigRat(1, 2), BigRat(-1)}) {
        const FreyInvariants f = frey_invariants(QuadRat::from_rat(2, q));
        CHECK(f.relation_holds);
        CHECK(f.j == QuadRat::from_rat(2, 1728));
    }
    const FreyInvariants f2 = frey_invariants(QuadRat::from_rat(2, 2));
    CHECK(f2.c4 == QuadRat::from_rat(2, 48));
    CHECK(f2.delta == QuadRat::from_rat(2, 64));
    CHECK_THROWS_AS(frey_invariants(QuadRat::from_rat(2, 1)), DomainError);

    const auto orbit = s3_orbit(lambda73());
    const QuadRat j0 = frey_invariants(orbit.front()).j;
    for (const auto& z : orbit) {
        const FreyInvariants f = frey_invariants(z);
        CHECK(f.j == j0);
        CHECK(f.c4 * f.c4 * f.c4 / f.delta == f.j);
    }
    const PrimesAbove2 p = prime_above_2(73);
    REQUIRE(p.ideals.size() == 2);
    int applicable = 0;
    for (const auto& P : p.ideals) {
        const FreyInvariants f = frey_invariants(lambda73(), P);
        if (f.valuation_law_applicable) {
            ++applicable;
            CHECK(f.ord_lambda == 5);
            CHECK(f.ord_j == -2);
            CHECK(f.valuation_law_holds);
        } else {
            CHECK(f.ord_lambda == 0);
        }
    }
    CHECK(applicable == 1);
}

TEST_CASE("Kraus verification")
{
    const KrausVerdict k73 = kraus_verify(73, 40);
    CHECK(k73.verdict == "exceptional-orbit");
    CHECK(k73.expected);
    CHECK(k73.lemmas_hold);
    CHECK(k73.dio_closure);
    CHECK(k73.tail_closure);
    REQUIRE(k73.orbits.size() == 1);
    CHECK(k73.orbits[0].size() == 12);

    const KrausVerdict k97 = kraus_verify(97, 40, false);
    CHECK(k97.verdict == "no-relevant-solutions");
    CHECK(k97.expected);
    CHECK(k97.orbits.empty());
    CHECK_THROWS_AS(kraus_verify(25, 10, false), DomainError);
    CHECK_THROWS_AS(kraus_verify(5, 10, false), DomainError);
}
