#include "serialize.hpp"

#include <chrono>
#include <ctime>

namespace fltkit::cli {

namespace {

std::string str(const BigInt& n) { return n.get_str(); }
std::string str(const BigRat& x) { return x.get_str(); }

Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json quad_int(const QuadInt& x)
{
    Json j;
    j["d"] = x.d();
    j["a"] = str(x.a());
    j["b"] = str(x.b());
    return j;
}

QuadInt quad_int_from(const Json& j)
{
    return QuadInt(j.at("d").get<std::int64_t>(), BigInt(j.at("a").get<std::string>()),
                   BigInt(j.at("b").get<std::string>()));
}

Json quad_rat(const QuadRat& x)
{
    Json j;
    j["x"] = str(x.x());
    j["y"] = str(x.y());
    return j;
}

Splitting splitting_from(const std::string& s)
{
    for (Splitting v : {Splitting::ramified, Splitting::inert, Splitting::split})
        if (s == to_string(v))
            return v;
    throw DomainError("unknown splitting '" + s + "'");
}

} // namespace

Json to_json(const QuadFieldReport& r)
{
    Json j;
    j["d"] = r.d;
    j["D"] = r.D;
    j["t"] = r.t;
    j["two_rank_clplus"] = r.two_rank_clplus;
    j["two_rank_cl"] = r.two_rank_cl;
    j["cond_a"] = r.cond_a;
    j["cond_b"] = opt_bool(r.cond_b);
    j["cond_c"] = r.cond_c;
    j["all_hold"] = r.all_hold();
    j["tag"] = r.classification_tag;
    j["eta"] = r.eta ? Json(*r.eta) : Json(nullptr);
    return j;
}

QuadFieldReport quad_report_from_json(const Json& j)
{
    QuadFieldReport r;
    r.d = j.at("d").get<std::int64_t>();
    r.D = j.at("D").get<std::int64_t>();
    r.t = j.at("t").get<int>();
    r.two_rank_clplus = j.at("two_rank_clplus").get<int>();
    r.two_rank_cl = j.at("two_rank_cl").get<int>();
    r.cond_a = j.at("cond_a").get<bool>();
    if (!j.at("cond_b").is_null())
        r.cond_b = j.at("cond_b").get<bool>();
    r.cond_c = j.at("cond_c").get<bool>();
    r.classification_tag = j.at("tag").get<std::string>();
    if (!j.at("eta").is_null())
        r.eta = j.at("eta").get<int>();
    return r;
}

Json to_json(const DirectConditions& r)
{
    Json j;
    j["d"] = r.d;
    j["D"] = r.D;
    j["cond_a"] = r.cond_a;
    j["cond_b"] = opt_bool(r.cond_b);
    j["cond_c"] = r.cond_c;
    j["h"] = r.h;
    j["h_plus"] = r.h_plus;
    j["unit_norm"] = r.unit_norm;
    j["prime_class_order"] = r.prime_class_order ? Json(*r.prime_class_order) : Json(nullptr);
    return j;
}

Json to_json(const CompCritReport& r)
{
    Json j;
    j["d"] = r.d;
    j["applicable"] = r.applicable;
    j["splitting"] = to_string(r.splitting);
    j["modulus_norm"] = str(r.modulus_norm);
    j["epsilon_order"] = r.epsilon_order_mod_16P;
    j["minus_one_in_image"] = r.minus_one_in_epsilon_image;
    j["base_unit"] = quad_int(r.base_unit);
    Json gens = Json::array();
    for (const auto& g : r.U_generators)
        gens.push_back(Json{{"sign", g.sign}, {"exponent", g.exponent}});
    j["U_generators"] = gens;
    j["all_squares"] = r.all_squares;
    return j;
}

CompCritReport compcrit_report_from_json(const Json& j)
{
    CompCritReport r;
    r.d = j.at("d").get<std::int64_t>();
    r.applicable = j.at("applicable").get<bool>();
    r.splitting = splitting_from(j.at("splitting").get<std::string>());
    r.modulus_norm = BigInt(j.at("modulus_norm").get<std::string>());
    r.epsilon_order_mod_16P = j.at("epsilon_order").get<unsigned long>();
    r.minus_one_in_epsilon_image = j.at("minus_one_in_image").get<bool>();
    r.base_unit = quad_int_from(j.at("base_unit"));
    for (const auto& g : j.at("U_generators"))
        r.U_generators.push_back({g.at("sign").get<int>(), g.at("exponent").get<unsigned long>()});
    r.all_squares = j.at("all_squares").get<bool>();
    return r;
}

Json to_json(const KrausVerdict& v)
{
    Json j;
    j["ell"] = str(v.ell);
    j["r1_max"] = v.r1_max;
    Json sols = Json::array();
    for (std::size_t i = 0; i < v.solutions.size(); ++i) {
        const auto& s = v.solutions[i];
        Json e;
        e["eta1"] = s.eta1;
        e["eta2"] = s.eta2;
        e["r1"] = s.r1;
        e["r2"] = s.r2;
        e["v"] = str(s.v);
        e["lambda"] = s.lambda ? quad_int(*s.lambda) : Json(nullptr);
        e["lemmas_pass"] = v.checks[i].all_pass();
        sols.push_back(e);
    }
    j["solutions"] = sols;
    Json orbits = Json::array();
    for (const auto& o : v.orbits) {
        Json a = Json::array();
        for (const auto& x : o)
            a.push_back(quad_rat(x));
        orbits.push_back(a);
    }
    j["orbits"] = orbits;
    j["lemmas_hold"] = v.lemmas_hold;
    j["verdict"] = v.verdict;
    j["expected"] = v.expected;
    return j;
}

Json to_json(const CfReduction& r)
{
    Json j;
    j["k_upper"] = str(r.k_upper);
    j["convergent_index"] = r.convergent_index;
    j["p"] = str(r.p);
    j["q"] = str(r.q);
    j["certified"] = r.convergent_certified;
    j["approximation_ok"] = r.approximation_ok;
    j["q_exceeds_twice_bound"] = r.q_exceeds_twice_bound;
    j["a_prime_upper"] = str(r.a_prime_upper);
    j["b_prime_upper"] = str(r.b_prime_upper);
    j["reduced_bound"] = str(r.reduced_bound);
    j["precision_bits"] = r.precision_bits;
    return j;
}

Json to_json(const DioProof& p)
{
    Json j;
    Json sols = Json::array();
    for (const auto& s : p.solutions)
        sols.push_back(Json{{"k", s.k}, {"eta", s.eta}, {"s1", s.s1}, {"s2", s.s2}});
    j["solutions"] = sols;
    j["k0_family"] = p.k0_family;
    Json b;
    b["C_lower"] = str(p.bound.C_lower);
    b["C_upper"] = str(p.bound.C_upper);
    b["a_upper"] = str(p.bound.a_upper);
    b["b_upper"] = str(p.bound.b_upper);
    b["k_max"] = str(p.bound.k_max);
    b["precision_bits"] = p.bound.precision_bits;
    j["bound"] = b;
    j["reduction"] = to_json(p.reduction);
    j["second_pass"] = to_json(p.second_pass);
    j["brute_force_limit"] = p.brute_force_limit;
    return j;
}

Json to_json(const TailCheck& t)
{
    Json j;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json e;
        e["s1"] = r.s1;
        e["value"] = str(r.value);
        e["factorization_complete"] = r.factorization_complete;
        e["squarefree_part"] = str(r.squarefree_part);
        e["admits_solution"] = r.admits_solution;
        e["mod9"] = r.mod9;
        e["excluded_by_mod9"] = r.excluded_by_mod9;
        e["excluded_by_mod4"] = r.excluded_by_mod4;
        rows.push_back(e);
    }
    j["rows"] = rows;
    Json g = Json::array();
    for (const auto& [t_, gcd] : t.gcds)
        g.push_back(Json{{"t", t_}, {"gcd", str(gcd)}});
    j["gcds"] = g;
    j["flagged"] = t.flagged;
    j["ok"] = t.ok;
    return j;
}

Json to_json(const CubicCase& c)
{
    return Json{{"a0", c.a0}, {"n0", c.n0}, {"eta1", c.eta1}, {"eta2", c.eta2}, {"delta_mod3", c.delta_mod3}};
}

Json to_json(const RamificationCertificate& c)
{
    Json j;
    j["status"] = to_string(c.status);
    j["shift"] = c.status == RamificationStatus::certified ? Json(c.shift) : Json(nullptr);
    j["slope"] = c.status == RamificationStatus::certified ? Json(str(c.slope)) : Json(nullptr);
    j["shifts_tried"] = c.shifts_tried;
    return j;
}

Json to_json(const BigPoly& f)
{
    Json a = Json::array();
    for (const auto& c : f.coefficients())
        a.push_back(str(c));
    return a;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace fltkit::cli
