#include "commands.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "scan.hpp"
#include "serialize.hpp"

namespace fltkit::cli {

namespace {

Json envelope_header(const char* command)
{
    Json j;
    j["schema"] = kSchemaVersion;
    j["toolkit"] = FLTKIT_VERSION;
    j["command"] = command;
    j["timestamp"] = utc_timestamp();
    return j;
}

std::string yn(bool b) { return b ? "true" : "false"; }
std::string yn(const std::optional<bool>& b) { return b ? yn(*b) : "undetermined"; }

std::string dec(const BigRat& x)
{
    std::ostringstream s;
    s << std::setprecision(12) << x.get_d();
    return s.str();
}

std::string interval(const BigRat& lo, const BigRat& hi) { return "[" + dec(lo) + ", " + dec(hi) + "]"; }

const std::vector<DioSolution>& known_solutions()
{
    static const std::vector<DioSolution> v{{1, 1, 0, 0}, {1, -1, 2, 1}, {2, 1, 3, 2}, {2, -1, 4, 2}};
    return v;
}

} // namespace

int cmd_quad(std::int64_t d, bool json, std::ostream& out, std::ostream& err)
{
    if (d == 0 || d == 1 || !is_squarefree(d)) {
        err << "quad: d = " << d << " is not a squarefree integer other than 0, 1\n";
        return kUsage;
    }
    Json j = envelope_header("quad");
    const QuadFieldReport g = classify_conditions(d);
    j["genus"] = to_json(g);
    std::optional<DirectConditions> direct;
    std::optional<int> rank_forms;
    std::optional<CompCritReport> cc;
    bool agree = true;
    if (d > 1) {
        try {
            direct = conditions_abc_direct(d);
            rank_forms = two_rank_by_composition(class_group(g.D));
            cc = compcrit_test(d);
        } catch (const UnsupportedError& e) {
            err << "quad: " << e.what() << '\n';
            return kEnvelope;
        }
        agree = conditions_agree(g, *direct) && *rank_forms == g.two_rank_clplus;
        j["direct"] = to_json(*direct);
        j["two_rank_by_composition"] = *rank_forms;
        j["compcrit"] = to_json(*cc);
    }
    j["cross_check"] = agree;

    if (json) {
        out << j.dump() << '\n';
    } else {
        out << "d = " << g.d << ", D = " << g.D << ", t = " << g.t << '\n';
        out << "2-rank of Cl+ = " << g.two_rank_clplus << ", 2-rank of Cl = " << g.two_rank_cl << '\n';
        out << "(a) 2 ramified: " << yn(g.cond_a) << '\n';
        out << "(b) narrow 2-part divides the order of the prime above 2: " << yn(g.cond_b) << '\n';
        out << "(c) h odd: " << yn(g.cond_c) << '\n';
        out << "tag: " << g.classification_tag << '\n';
        if (g.eta)
            out << "eta: " << *g.eta << '\n';
        if (direct) {
            out << "class group: h+ = " << direct->h_plus << ", h = " << direct->h << ", N(eps) = " << direct->unit_norm;
            if (direct->prime_class_order)
                out << ", order of the prime above 2 = " << *direct->prime_class_order;
            out << '\n';
            out << "direct (a)(b)(c): " << yn(direct->cond_a) << ' ' << yn(direct->cond_b) << ' ' << yn(direct->cond_c)
                << '\n';
            out << "2-rank by composition: " << *rank_forms << '\n';
        }
        if (cc) {
            if (cc->applicable)
                out << "unit criterion: order of eps mod 16P = " << cc->epsilon_order_mod_16P
                    << ", -1 in image: " << yn(cc->minus_one_in_epsilon_image)
                    << ", all squares: " << yn(cc->all_squares) << '\n';
            else
                out << "unit criterion: not applicable (2 splits)\n";
        }
        out << "cross-check: " << (agree ? "ok" : "MISMATCH") << '\n';
    }
    return agree ? kOk : kCrossCheck;
}

int cmd_dio(long precision_bits, bool json, std::ostream& out, std::ostream& err)
{
    DioProof p;
    CfReduction r30;
    TailCheck tail;
    try {
        p = solve(precision_bits);
        CfReduceOptions o;
        o.convergent_index = 29;
        r30 = cf_reduce(p.bound.k_max, o);
        tail = tail_check(30);
    } catch (const InternalError& e) {
        err << "dio: " << e.what() << '\n';
        return kCrossCheck;
    }
    const bool ok = p.solutions == known_solutions() && tail.ok && r30.approximation_ok;
    Json j = envelope_header("dio");
    j["proof"] = to_json(p);
    j["reduction_30"] = to_json(r30);
    j["tail"] = to_json(tail);
    j["ok"] = ok;
    if (json) {
        out << j.dump() << '\n';
    } else {
        const auto& b = p.bound;
        out << "linear form bound (" << b.precision_bits << " bits)\n";
        out << "  C in " << interval(b.C_lower, b.C_upper) << '\n';
        out << "  a <= " << dec(b.a_upper) << ", b <= " << dec(b.b_upper) << '\n';
        out << "  k_max = " << b.k_max << '\n';
        for (const CfReduction* r : {&p.reduction, &r30}) {
            out << "reduction with convergent " << r->convergent_index + 1 << " (precision " << r->precision_bits
                << " bits)\n";
            out << "  p = " << r->p << ", q = " << r->q << '\n';
            out << "  q > 2 k_max: " << yn(r->q_exceeds_twice_bound) << ", |p/q - theta| < 1/q^2: "
                << yn(r->approximation_ok) << '\n';
            out << "  a' <= " << dec(r->a_prime_upper) << ", b' <= " << dec(r->b_prime_upper) << '\n';
            out << "  reduced bound k < " << r->reduced_bound << '\n';
        }
        out << "second pass from " << p.second_pass.k_upper << ": k < " << p.second_pass.reduced_bound << '\n';
        out << "brute force 1 <= k <= " << p.brute_force_limit << ":\n";
        for (const auto& s : p.solutions)
            out << "  (k, eta, s1, s2) = (" << s.k << ", " << s.eta << ", " << s.s1 << ", " << s.s2 << ")\n";
        out << "  plus " << p.k0_family << '\n';
        out << "tail check s1 <= 30: " << (tail.ok ? "ok" : "FAILED") << ", flagged " << tail.flagged.size() << '\n';
        out << (ok ? "ok" : "FAILED") << '\n';
    }
    return ok ? kOk : kCrossCheck;
}

int cmd_cubic(bool json, std::ostream& out, std::ostream&)
{
    const auto table = mod3_table();
    const CaseIIIdentity id = caseII_identity();
    std::vector<CubicCase> zeros;
    for (const auto& c : table)
        if (c.delta_mod3 == 0)
            zeros.push_back(c);
    const bool zeros_ok = zeros.size() == 2 && zeros[0].a0 == 0 && zeros[0].n0 == 0 && zeros[0].eta1 == -1 &&
                          zeros[0].eta2 == -1 && zeros[1].a0 == 0 && zeros[1].n0 == 1 && zeros[1].eta1 == 1 &&
                          zeros[1].eta2 == -1;
    const bool ok = zeros_ok && id.holds();
    if (json) {
        Json j = envelope_header("cubic");
        Json t = Json::array();
        for (const auto& c : table)
            t.push_back(to_json(c));
        j["table"] = t;
        j["zero_count"] = zeros.size();
        j["identity_symbolic"] = id.symbolic;
        j["identity_numeric"] = id.numeric;
        j["discriminant"] = to_json(id.discriminant);
        j["ok"] = ok;
        out << j.dump() << '\n';
    } else {
        out << "a0 n0 eta1 eta2  disc mod 3\n";
        for (const auto& c : table)
            out << std::setw(2) << c.a0 << std::setw(3) << c.n0 << std::setw(5) << c.eta1 << std::setw(5) << c.eta2
                << std::setw(8) << c.delta_mod3 << '\n';
        out << "zero rows: " << zeros.size() << '\n';
        out << "disc(X^3 + aX^2 - (a+3)X + 1) = " << id.discriminant.to_string('a') << '\n';
        out << "equals (a^2 + 3a + 9)^2: symbolic " << yn(id.symbolic) << ", numeric on [-1000, 1000] "
            << yn(id.numeric) << '\n';
        out << (ok ? "ok" : "FAILED") << '\n';
    }
    return ok ? kOk : kCrossCheck;
}

int cmd_polyfam(std::optional<unsigned> n, std::optional<std::string> list, long window, bool json,
                std::ostream& out, std::ostream& err)
{
    if (!n && !list) {
        err << "polyfam: give --n or --list\n";
        return kUsage;
    }
    Json j = envelope_header("polyfam");
    bool ok = true;
    if (n) {
        if (*n < 1) {
            err << "polyfam: n must be >= 1\n";
            return kUsage;
        }
        const FamilyPolynomial fp = gen_fn(*n);
        const bool tr = check_totally_real(fp);
        const RamificationCertificate cert = certify_2_ramified(fp, window);
        ok = tr;
        Json e;
        e["n"] = *n;
        e["f"] = to_json(fp.f);
        e["totally_real"] = tr;
        e["ramification"] = to_json(cert);
        j["family"] = e;
        if (!json) {
            out << "f_" << *n << " = " << fp.f.to_string() << '\n';
            out << "totally real: " << yn(tr) << '\n';
            out << "2-adic: " << to_string(cert.status);
            if (cert.status == RamificationStatus::certified)
                out << " (shift " << cert.shift << ", slope " << cert.slope << ")";
            out << '\n';
        }
    }
    if (list) {
        std::vector<PolyListEntry> entries;
        try {
            entries = ingest_poly_list(*list, window);
        } catch (const DomainError& e) {
            err << "polyfam: " << e.what() << '\n';
            return kUsage;
        }
        Json arr = Json::array();
        for (const auto& e : entries) {
            Json r;
            r["line"] = e.line_number;
            r["poly"] = e.poly ? to_json(*e.poly) : Json(nullptr);
            r["totally_real"] = e.totally_real ? Json(*e.totally_real) : Json(nullptr);
            r["ramification"] = e.ramification ? to_json(*e.ramification) : Json(nullptr);
            r["error"] = e.error.empty() ? Json(nullptr) : Json(e.error);
            arr.push_back(r);
            if (!json) {
                out << "line " << e.line_number << ": ";
                if (e.poly)
                    out << e.poly->to_string();
                if (e.totally_real)
                    out << ", totally real " << yn(*e.totally_real);
                if (e.ramification)
                    out << ", 2-adic " << to_string(e.ramification->status);
                if (!e.error.empty())
                    out << (e.poly ? ", " : "") << "error: " << e.error;
                out << '\n';
            }
        }
        j["list"] = arr;
    }
    j["ok"] = ok;
    if (json)
        out << j.dump() << '\n';
    return ok ? kOk : kCrossCheck;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Number-theoretic verification toolkit for real quadratic fields", "fltkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(FLTKIT_VERSION));
    bool json = false;
    app.add_flag("--json", json, "Machine-readable JSON output");

    std::int64_t d = 0;
    auto* quad = app.add_subcommand("quad", "Report on Q(sqrt d)");
    quad->add_option("--d", d, "Squarefree d")->required();

    ScanOptions so;
    auto* scan = app.add_subcommand("scan", "Range scan to JSON lines");
    scan->add_option("--what", so.what, "genus | abc | compcrit | kraus")->required();
    scan->add_option("--dmax", so.dmax, "Largest d");
    scan->add_option("--lmax", so.lmax, "Largest l (kraus)");
    scan->add_option("--r1max", so.r1max, "Largest r1 (kraus)");
    scan->add_option("--out", so.out, "Output file; enables the resume cursor");
    scan->add_option("--jobs", so.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

    long bits = 256;
    auto* dio = app.add_subcommand("dio", "Solve 2^s1 + eta 2^s2 = P_k with a proof log");
    dio->add_option("--precision-bits", bits, "Working precision")->check(CLI::Range(64L, 4096L));

    auto* cubic = app.add_subcommand("cubic", "Cubic discriminant table mod 3");

    std::optional<unsigned> n;
    std::optional<std::string> list;
    long window = 4;
    auto* poly = app.add_subcommand("polyfam", "Totally real family and 2-adic certificates");
    poly->add_option("--n", n, "Degree");
    poly->add_option("--list", list, "File of polynomials c0,c1,...,cn");
    poly->add_option("--window", window, "Shift search window")->check(CLI::Range(0L, 64L));

    for (auto* sub : {quad, scan, dio, cubic, poly})
        sub->add_flag("--json", json, "Machine-readable JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, ea;
        const int rc = app.exit(e, o, ea);
        out << o.str();
        err << ea.str();
        return rc == 0 ? kOk : kUsage;
    }
    try {
        if (quad->parsed())
            return cmd_quad(d, json, out, err);
        if (scan->parsed())
            return run_scan(so, out, err);
        if (dio->parsed())
            return cmd_dio(bits, json, out, err);
        if (cubic->parsed())
            return cmd_cubic(json, out, err);
        if (poly->parsed())
            return cmd_polyfam(n, list, window, json, out, err);
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kEnvelope;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kCrossCheck;
    }
    return kUsage;
}

} // namespace fltkit::cli
