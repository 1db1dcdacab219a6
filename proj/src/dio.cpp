#include "fltkit/dio.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "fltkit/errors.hpp"
#include "fltkit/quadring.hpp"

namespace fltkit {

BigInt pell_value(unsigned long k)
{
    BigInt prev = 0, cur = 2;
    if (k == 0)
        return prev;
    for (unsigned long i = 1; i < k; ++i) {
        BigInt next = 6 * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BigInt pell_value_direct(unsigned long k)
{
    const QuadInt tau = QuadInt::from_xy(2, 3, 2);
    return tau.pow(k).b() / 2;
}

unsigned long s2_bound(unsigned long k)
{
    if (k == 0)
        throw DomainError("s2_bound: k = 0 is handled as a separate family");
    return ord2(BigInt(k)) + 1;
}

namespace {

void search_k(unsigned long k, const BigInt& P, unsigned long s2_max, std::vector<DioSolution>& out)
{
    for (unsigned long s2 = 0; s2 <= s2_max; ++s2) {
        const BigInt t = pow2(s2);
        for (int eta : {1, -1}) {
            const BigInt r = P - eta * t;
            const long s1 = exact_log2(r);
            if (s1 >= 0 && static_cast<unsigned long>(s1) >= s2)
                out.push_back({k, eta, static_cast<unsigned long>(s1), s2});
        }
    }
}

void sort_solutions(std::vector<DioSolution>& v)
{
    std::sort(v.begin(), v.end(), [](const DioSolution& x, const DioSolution& y) {
        if (x.k != y.k)
            return x.k < y.k;
        if (x.eta != y.eta)
            return x.eta > y.eta;
        return x.s2 < y.s2;
    });
}

} // namespace

std::vector<DioSolution> brute_force(unsigned long k_max, unsigned jobs)
{
    if (k_max < 1)
        throw DomainError("brute_force: k_max must be >= 1");
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<unsigned long>(k_max, 64))));
    std::vector<std::vector<DioSolution>> parts(jobs);
    auto worker = [&](unsigned j) {
        const unsigned long lo = 1 + k_max * j / jobs, hi = k_max * (j + 1) / jobs;
        if (lo > hi)
            return;
        BigInt prev = pell_value(lo - 1), cur = pell_value(lo);
        for (unsigned long k = lo; k <= hi; ++k) {
            search_k(k, cur, s2_bound(k), parts[j]);
            BigInt next = 6 * cur - prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j)
            threads.emplace_back(worker, j);
        for (auto& t : threads)
            t.join();
    }
    std::vector<DioSolution> out;
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    sort_solutions(out);
    return out;
}

std::vector<DioSolution> brute_force_unbounded(unsigned long k_max)
{
    std::vector<DioSolution> out;
    BigInt prev = 0, cur = 2;
    for (unsigned long k = 1; k <= k_max; ++k) {
        search_k(k, cur, mpz_sizeinbase(cur.get_mpz_t(), 2) + 1, out);
        BigInt next = 6 * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    sort_solutions(out);
    return out;
}

// --------------------------------------------------------------------------

BigInt smart_bound(const BigRat& a_upper, const BigRat& b_upper, long bits)
{
    if (sgn(b_upper) <= 0)
        throw DomainError("smart_bound: b must be positive");
    BigRat blogb = 0;
    if (b_upper > 1)
        blogb = b_upper * highprec_log(b_upper, bits).upper();
    return ceil_rat(2 * (a_upper + blogb));
}

namespace {

HighPrecReal log_tau(long bits) { return highprec_log_quadratic(3, 2, 2, bits); }

HighPrecReal log_sqrt2(long bits)
{
    const HighPrecReal l2 = highprec_log(BigRat(2), bits + 1);
    return HighPrecReal::from_interval(l2.lower() / 2, l2.upper() / 2, bits + 1);
}

std::string rat_str(const BigRat& x, int digits = 6)
{
    // Decimal with `digits` significant digits, via the double value.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, x.get_d());
    return buf;
}

} // namespace

HighPrecReal log_ratio(long bits)
{
    return HighPrecReal::divide(log_tau(bits + 16), log_sqrt2(bits + 16), bits);
}

LinFormBound bw_constant(long bits)
{
    // 18 (n+1)! n^(n+1) (32 d)^(n+2) log(2 n d) h(sqrt 2) h(tau), n = d = 2,
    // h(sqrt 2) = 1/2, h(tau) = log(tau)/2.
    const BigInt factor = BigInt(18) * 6 * 8 * ipow(BigInt(64), 4);
    const HighPrecReal l8 = highprec_log(BigRat(8), bits);
    const HighPrecReal lt = log_tau(bits);
    const BigRat quarter(1, 4);
    LinFormBound out;
    out.precision_bits = bits;
    out.C_lower = BigRat(factor) * l8.lower() * lt.lower() * quarter;
    out.C_upper = BigRat(factor) * l8.upper() * lt.upper() * quarter;
    const BigRat l6 = highprec_log(BigRat(6), bits).upper();
    const BigRat l12 = highprec_log(BigRat(12), bits).upper();
    out.a_upper = (out.C_upper * l6 + l12) / lt.lower();
    out.b_upper = (out.C_upper + 1) / lt.lower();
    out.a_upper.canonicalize();
    out.b_upper.canonicalize();
    out.k_max = smart_bound(out.a_upper, out.b_upper, bits);
    return out;
}

CfReduction cf_reduce(const BigInt& k_upper, const CfReduceOptions& opts)
{
    CfReduction r;
    r.k_upper = k_upper;
    const ContinuedFraction cf = certified_continued_fraction(log_ratio, opts.max_terms);
    r.precision_bits = cf.precision_bits;
    std::optional<std::size_t> idx = opts.convergent_index;
    if (!idx) {
        for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
            if (cf.term_certified[i] && cf.convergents[i].q > 2 * k_upper) {
                idx = i;
                break;
            }
        }
    }
    if (!idx || *idx >= cf.convergents.size() || !cf.term_certified[*idx])
        throw InternalError("cf_reduce: no certified convergent with q > 2 k_upper");
    r.convergent_index = *idx;
    r.p = cf.convergents[*idx].p;
    r.q = cf.convergents[*idx].q;
    r.convergent_certified = true;
    r.q_exceeds_twice_bound = r.q > 2 * k_upper;
    if (!r.q_exceeds_twice_bound)
        throw InternalError("cf_reduce: convergent denominator does not exceed 2 k_upper");

    const long bits = std::max<long>(cf.precision_bits, 256);
    const HighPrecReal theta = log_ratio(bits);
    const BigRat pq(r.p, r.q);
    const BigRat dev = std::max(BigRat(abs(pq - theta.lower())), BigRat(abs(theta.upper() - pq)));
    r.approximation_ok = dev < BigRat(1, r.q * r.q);

    // 1/(2qk) < 12/(log sqrt2 tau^k) gives
    // k < log(k)/log(tau) + log(24 q / log sqrt2)/log(tau).
    const HighPrecReal lt = log_tau(bits), ls = log_sqrt2(bits);
    const BigRat arg = BigRat(24 * r.q) / ls.lower();
    r.a_prime_upper = highprec_log(arg, bits).upper() / lt.lower();
    r.b_prime_upper = BigRat(1) / lt.lower();
    r.a_prime_upper.canonicalize();
    r.b_prime_upper.canonicalize();
    r.reduced_bound = smart_bound(r.a_prime_upper, r.b_prime_upper, bits);
    return r;
}

DioProof solve(long bits)
{
    DioProof proof;
    proof.k0_family = "k=0, eta=-1, s1=s2 (any s1 >= 0)";
    proof.bound = bw_constant(bits);
    const LinFormBound& b = proof.bound;
    proof.reduction = cf_reduce(b.k_max);
    if (!proof.reduction.approximation_ok)
        throw InternalError("solve: reduction stage: convergent fails |p/q - theta| < 1/q^2");
    if (proof.reduction.reduced_bound > BigInt(proof.brute_force_limit))
        throw InternalError("solve: reduction stage: reduced bound exceeds the brute-force range");
    try {
        proof.second_pass = cf_reduce(proof.reduction.reduced_bound);
    } catch (const InternalError&) {
        // Informational only.
    }
    proof.solutions = brute_force(proof.brute_force_limit);

    auto& log = proof.log;
    log.emplace_back("C_lower", rat_str(b.C_lower, 9));
    log.emplace_back("C_upper", rat_str(b.C_upper, 9));
    log.emplace_back("a_upper", rat_str(b.a_upper, 9));
    log.emplace_back("b_upper", rat_str(b.b_upper, 9));
    log.emplace_back("k_max", b.k_max.get_str());
    log.emplace_back("convergent_index", std::to_string(proof.reduction.convergent_index));
    log.emplace_back("p", proof.reduction.p.get_str());
    log.emplace_back("q", proof.reduction.q.get_str());
    log.emplace_back("cf_precision_bits", std::to_string(proof.reduction.precision_bits));
    log.emplace_back("a_prime_upper", rat_str(proof.reduction.a_prime_upper, 9));
    log.emplace_back("reduced_bound", proof.reduction.reduced_bound.get_str());
    log.emplace_back("brute_force_limit", std::to_string(proof.brute_force_limit));
    log.emplace_back("solutions", std::to_string(proof.solutions.size()));
    return proof;
}

// --------------------------------------------------------------------------

TailCheck tail_check(unsigned long s1_max, unsigned long t_max)
{
    TailCheck out;
    bool chain_ok = true, none_admitted = true;
    for (unsigned long s1 = 0; s1 <= s1_max; ++s1) {
        TailRow row;
        row.s1 = s1;
        row.value = pow2(2 * s1 + 3) + 1;
        const Factorization f = factor(row.value);
        row.factorization_complete = f.complete();
        if (row.factorization_complete) {
            row.squarefree_part = squarefree_decomposition(f).first;
            row.admits_solution = is_prime(row.squarefree_part) && row.squarefree_part % 24 == 1;
        } else {
            out.flagged.push_back(s1);
        }
        row.mod9 = static_cast<unsigned>(BigInt(row.value % 9).get_ui());
        // 3 | value and 3 does not divide l, so 3 | w and 9 | value.
        row.excluded_by_mod9 = row.value % 3 == 0 && row.mod9 != 0;
        if (s1 % 3 == 0) {
            const unsigned long t = s1 / 3;
            row.cubic_split = true;
            row.factor1 = pow2(2 * t + 1) + 1;
            row.factor2 = pow2(4 * t + 2) - pow2(2 * t + 1) + 1;
            mpz_gcd(row.factor_gcd.get_mpz_t(), row.factor1.get_mpz_t(), row.factor2.get_mpz_t());
            if (row.factor1 * row.factor2 != row.value)
                throw InternalError("tail_check: cubic factorization mismatch");
            if (t == 0) {
                // l w^2 = 9 forces l in {1, 9}, neither prime.
                row.excluded_by_mod4 = row.value == 9;
            } else {
                auto impossible = [](const BigInt& x) {
                    const unsigned long m = BigInt(x % 4).get_ui();
                    return m != 0 && m != 3; // 3 x^2 is 0 or 3 mod 4
                };
                row.excluded_by_mod4 = row.factor_gcd == 3 && impossible(row.factor1) && impossible(row.factor2);
            }
        }
        if (!(row.excluded_by_mod9 || row.excluded_by_mod4))
            chain_ok = false;
        if (row.admits_solution)
            none_admitted = false;
        out.rows.push_back(std::move(row));
    }
    bool gcd_ok = true;
    for (unsigned long t = 1; t <= t_max; ++t) {
        const BigInt f1 = pow2(2 * t + 1) + 1, f2 = pow2(4 * t + 2) - pow2(2 * t + 1) + 1;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), f1.get_mpz_t(), f2.get_mpz_t());
        out.gcds.emplace_back(t, g);
        gcd_ok = gcd_ok && g == 3;
    }
    out.ok = chain_ok && none_admitted && gcd_ok;
    return out;
}

} // namespace fltkit
