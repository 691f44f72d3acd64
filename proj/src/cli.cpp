#include "dioph/cli.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dioph/error.hpp"
#include "dioph/gap.hpp"
#include "dioph/search.hpp"
#include "dioph/tuples.hpp"

namespace dioph
{

using json = nlohmann::ordered_json;

namespace
{

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string str(const Int &x)
{
    return x.get_str();
}

json elem_json(const RingElem &z)
{
    return json::array({str(z.u()), str(z.v())});
}

json tuple_json(const DiophTuple &t)
{
    json j;
    j["d"] = std::to_string(t.spec().d());
    json elems = json::array(), pretty = json::array(), wits = json::array();
    for (const auto &e : t.elems())
    {
        elems.push_back(elem_json(e));
        pretty.push_back(to_pretty(e));
    }
    for (const auto &w : t.witnesses())
        wits.push_back(json::array({std::to_string(w.i), std::to_string(w.j), elem_json(w.root)}));
    j["elems"] = std::move(elems);
    j["pretty"] = std::move(pretty);
    j["witnesses"] = std::move(wits);
    return j;
}

json interval_json(const Interval &x)
{
    return json{{"lo", x.lo_str()}, {"hi", x.hi_str()}};
}

json checks_json(const std::vector<NamedCheck> &checks)
{
    json out = json::array();
    for (const auto &c : checks)
        out.push_back(json{{"name", c.name}, {"holds", c.holds}});
    return out;
}

json constants_json()
{
    return json{{"K", std::to_string(gap_constant_base) + "^" + std::to_string(gap_constant_exponent)},
                {"K_base", std::to_string(gap_constant_base)},
                {"quoted_K_base", std::to_string(quoted_gap_constant_base)}};
}

RingSpec parse_ring(std::int64_t d)
{
    try
    {
        return RingSpec(d);
    }
    catch (const Error &e)
    {
        throw UsageError(e.what());
    }
}

std::vector<RingElem> parse_elems_usage(const RingSpec &spec, const std::string &text)
{
    try
    {
        return parse_elems(spec, text);
    }
    catch (const Error &e)
    {
        throw UsageError(e.what());
    }
}

Int bound_sq(long bound)
{
    if (bound < 0)
        throw UsageError("--bound must be nonnegative");
    Int b(bound);
    return b * b;
}

// Indented "key: value" rendering of a report.
void render_text(std::ostream &os, const json &j, int indent)
{
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [&](const json &v) {
        std::function<std::string(const json &)> f = [&](const json &x) -> std::string {
            if (!x.is_array())
                return scalar(x);
            std::string s = "(";
            for (std::size_t i = 0; i < x.size(); ++i)
                s += (i ? " " : "") + f(x[i]);
            return s + ")";
        };
        return f(v);
    };
    auto all_scalar = [](const json &v) {
        std::function<bool(const json &)> f = [&](const json &x) {
            if (x.is_object())
                return false;
            if (x.is_array())
                return std::all_of(x.begin(), x.end(), f);
            return true;
        };
        return f(v);
    };
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const json &v = it.value();
        if (v.is_object())
        {
            os << pad << it.key() << ":\n";
            render_text(os, v, indent + 1);
        }
        else if (v.is_array() && !all_scalar(v))
        {
            os << pad << it.key() << ": " << v.size() << " entries\n";
            for (const auto &e : v)
            {
                os << pad << "  -\n";
                if (e.is_object())
                    render_text(os, e, indent + 2);
                else
                    os << pad << "    " << flat(e) << "\n";
            }
        }
        else
        {
            os << pad << it.key() << ": " << flat(v) << "\n";
        }
    }
}

struct Common
{
    std::string format = "text";
};

json base_report(const std::string &command, const std::vector<std::string> &args)
{
    json r;
    r["schema"] = 1;
    r["command"] = command;
    r["args"] = args;
    return r;
}

void emit(std::ostream &out, const Common &c, json report)
{
    report["constants"] = constants_json();
    if (c.format == "json")
        out << report.dump(2) << "\n";
    else
        render_text(out, report, 0);
}

} // namespace

std::vector<RingElem> parse_elems(const RingSpec &spec, const std::string &text)
{
    static const std::regex item(R"(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*)");
    std::vector<RingElem> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';'))
    {
        std::smatch m;
        if (!std::regex_match(part, m, item))
            throw Error(Errc::InvalidArgument, "bad element \"" + part + "\", expected u,v");
        auto digits = [](std::string s) {
            if (!s.empty() && s[0] == '+')
                s.erase(0, 1);
            return Int(s);
        };
        out.emplace_back(spec, digits(m[1].str()), digits(m[2].str()));
    }
    if (out.empty() || (!text.empty() && text.back() == ';'))
        throw Error(Errc::InvalidArgument, "bad element list \"" + text + "\"");
    return out;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Diophantine m-tuples in imaginary quadratic rings"};
    app.require_subcommand(1);
    Common common;
    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    // search
    auto *search = app.add_subcommand("search", "Exhaustive search for m-tuples");
    std::optional<std::int64_t> s_d;
    bool s_sweep = false, s_expect_empty = false;
    long s_bound = 0;
    std::size_t s_size = 0;
    long s_min_abs_sq = 1;
    std::string s_mode = "all";
    unsigned s_threads = 0;
    auto *opt_d = search->add_option("--d", s_d, "Squarefree d < 0");
    auto *opt_sweep = search->add_flag("--sweep", s_sweep, "All rings needed for completeness");
    opt_d->excludes(opt_sweep);
    search->add_option("--bound", s_bound, "Bound on |z|")->required();
    search->add_option("--size", s_size, "Tuple size m")->required()->check(CLI::Range(2, 64));
    search->add_option("--min-abs-sq", s_min_abs_sq, "Lower bound on abs_sq of elements")->check(CLI::NonNegativeNumber);
    search->add_option("--mode", s_mode, "all | first | count")->check(CLI::IsMember({"all", "first", "count"}));
    search->add_flag("--expect-empty", s_expect_empty, "Exit 1 if anything is found");
    search->add_option("--threads", s_threads, "Worker threads, 0 = all cores");
    add_format(search);

    // verify
    auto *verify = app.add_subcommand("verify", "Check a candidate tuple");
    std::int64_t v_d = 0;
    std::string v_elems;
    verify->add_option("--d", v_d, "Squarefree d < 0")->required();
    verify->add_option("--elems", v_elems, "Elements u,v;u,v;...")->required();
    add_format(verify);

    // gap
    auto *gap = app.add_subcommand("gap", "Gap principle for a triple a, b, c");
    std::int64_t g_d = 0;
    std::string g_elems;
    gap->add_option("--d", g_d, "Squarefree d < 0")->required();
    gap->add_option("--elems", g_elems, "Three elements u,v;u,v;u,v")->required();
    add_format(gap);

    // chain
    auto *chain = app.add_subcommand("chain", "Lower-bound chain for an m-tuple");
    int c_m = 0;
    chain->add_option("--m", c_m, "Tuple size")->required()->check(CLI::Range(4, 100000));
    add_format(chain);

    // extend
    auto *extend = app.add_subcommand("extend", "Elements extending a tuple");
    std::int64_t e_d = 0;
    std::string e_elems;
    long e_bound = 0;
    extend->add_option("--d", e_d, "Squarefree d < 0")->required();
    extend->add_option("--elems", e_elems, "Elements u,v;u,v;...")->required();
    extend->add_option("--bound", e_bound, "Bound on |z|")->required();
    add_format(extend);

    try
    {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (search->parsed())
        {
            if (!s_d && !s_sweep)
                throw UsageError("search needs --d or --sweep");
            Int bsq = bound_sq(s_bound);
            if (bsq < 1)
                throw UsageError("--bound must be at least 1");
            json r = base_report("search", args);
            json cfg;
            cfg["ring"] = s_sweep ? "sweep" : std::to_string(*s_d);
            cfg["bound"] = std::to_string(s_bound);
            cfg["max_abs_sq"] = str(bsq);
            cfg["min_abs_sq"] = std::to_string(s_min_abs_sq);
            cfg["size"] = std::to_string(s_size);
            cfg["mode"] = s_mode;
            cfg["expect_empty"] = s_expect_empty;
            r["config"] = cfg;
            auto cache = ResultCache::from_env();
            std::size_t found = 0;
            json payload;
            if (s_sweep)
            {
                if (s_mode != "all" || s_min_abs_sq > 1)
                    throw UsageError("--sweep supports --mode all and --min-abs-sq 1 only");
                SweepConfig sc;
                sc.max_abs_sq = bsq;
                sc.target_size = s_size;
                sc.threads = s_threads;
                if (cache)
                    sc.cache_dir = std::getenv("DIOPH_CACHE_DIR");
                SweepReport rep = quintuple_sweep(sc);
                found = rep.tuples.size() + rep.rational_tuples.size();
                const auto &c = rep.completeness;
                payload["completeness"] = json{{"rings_searched", std::to_string(c.rings_searched)},
                                               {"ring_cutoff", std::to_string(c.ring_cutoff)},
                                               {"complex_element_cutoff", std::to_string(c.complex_cutoff)},
                                               {"witness_bound", str(c.witness_bound)},
                                               {"quoted_cutoff", std::to_string(c.quoted_cutoff)}};
                std::uint64_t elements = 0;
                json nonempty = json::array();
                for (const auto &ring : rep.rings)
                {
                    elements += ring.elements;
                    if (ring.tuples > 0)
                        nonempty.push_back(json{{"d", std::to_string(ring.d)}, {"tuples", std::to_string(ring.tuples)}});
                }
                payload["elements_enumerated"] = std::to_string(elements);
                payload["rings_with_tuples"] = std::move(nonempty);
                payload["count"] = std::to_string(found);
                json tuples = json::array();
                for (const auto &t : rep.tuples)
                    tuples.push_back(tuple_json(t));
                payload["tuples"] = std::move(tuples);
                json rational = json::array();
                for (const auto &t : rep.rational_tuples)
                {
                    json row = json::array();
                    for (const auto &x : t)
                        row.push_back(str(x));
                    rational.push_back(std::move(row));
                }
                payload["rational_tuples"] = std::move(rational);
            }
            else
            {
                SearchConfig sc{parse_ring(*s_d), bsq, Int(s_min_abs_sq), s_size, SearchMode::find_all, s_threads};
                if (s_mode == "first")
                    sc.mode = SearchMode::find_first;
                else if (s_mode == "count")
                    sc.mode = SearchMode::count;
                SearchResult res = find_m_tuples_cached(sc, cache ? &*cache : nullptr);
                found = res.count;
                payload["elements_enumerated"] = std::to_string(res.stats.elements);
                payload["count"] = std::to_string(res.count);
                if (sc.mode != SearchMode::count)
                {
                    json tuples = json::array();
                    for (const auto &t : res.tuples)
                        tuples.push_back(tuple_json(t));
                    payload["tuples"] = std::move(tuples);
                }
            }
            bool violated = s_expect_empty && found > 0;
            r["outcome"] = violated ? "violation" : "ok";
            r["payload"] = std::move(payload);
            emit(out, common, std::move(r));
            return violated ? 1 : 0;
        }

        if (verify->parsed())
        {
            RingSpec spec = parse_ring(v_d);
            auto elems = parse_elems_usage(spec, v_elems);
            json r = base_report("verify", args);
            json cfg{{"d", std::to_string(v_d)}, {"elems", json::array()}};
            for (const auto &e : elems)
                cfg["elems"].push_back(elem_json(e));
            r["config"] = cfg;
            json payload;
            int code = 0;
            try
            {
                DiophTuple t = dioph::make_tuple(spec, elems);
                r["outcome"] = "ok";
                payload["tuple"] = tuple_json(t);
                if (t.size() >= 3)
                    payload["products_nonsquare"] = products_are_nonsquares(t);
                bool large = std::all_of(t.elems().begin(), t.elems().end(),
                                         [](const RingElem &e) { return abs_sq(e) >= 4; });
                if (t.size() == 4 && large)
                {
                    auto om = omega_lower_bound(t);
                    auto sb = stronger_bound_check(t);
                    payload["omega"] = json{{"holds", om.holds}, {"margin", str(om.margin)}};
                    payload["forbidden_double_regular"] = forbidden_double_regular(t[0], t[1], t[2], t[3]);
                    payload["stronger_bound"] =
                        json{{"excluded", sb.excluded}, {"holds", sb.holds}, {"margin", str(sb.margin)}};
                }
            }
            catch (const NotDiophantineError &e)
            {
                r["outcome"] = "violation";
                payload["error"] = std::string(errc_name(e.code()));
                payload["pair"] = json::array({std::to_string(e.i()), std::to_string(e.j())});
                payload["message"] = e.what();
                code = 1;
            }
            catch (const Error &e)
            {
                r["outcome"] = "error";
                payload["error"] = std::string(errc_name(e.code()));
                payload["message"] = e.what();
                code = 1;
            }
            r["payload"] = std::move(payload);
            emit(out, common, std::move(r));
            return code;
        }

        if (gap->parsed())
        {
            RingSpec spec = parse_ring(g_d);
            auto elems = parse_elems_usage(spec, g_elems);
            if (elems.size() != 3)
                throw UsageError("gap needs exactly three elements");
            std::sort(elems.begin(), elems.end(), CanonicalLess{});
            json r = base_report("gap", args);
            json cfg{{"d", std::to_string(g_d)}, {"elems", json::array()}};
            for (const auto &e : elems)
                cfg["elems"].push_back(elem_json(e));
            r["config"] = cfg;
            json payload;
            int code = 0;
            try
            {
                dioph::make_tuple(spec, elems);
                payload["diophantine"] = true;
            }
            catch (const Error &)
            {
                payload["diophantine"] = false;
            }
            payload["hypotheses"] = checks_json(gap_hypotheses(elems[0], elems[1], elems[2]));
            try
            {
                GapPrinciple gp = gap_principle(elems[0], elems[1], elems[2]);
                bool ok = gp.lambda_in_range && gp.lambda_inequality;
                r["outcome"] = ok ? "ok" : "violation";
                code = ok ? 0 : 1;
                payload["bound_abs_sq"] = str(gp.bound_abs_sq);
                payload["bound_abs_sq_bits"] = std::to_string(mpz_sizeinbase(gp.bound_abs_sq.get_mpz_t(), 2));
                const GapReport &jz = gp.jz;
                payload["approximation"] = json{{"L_gt_1", jz.l_gt_one},
                                                {"p_le_sqrt_21_16", jz.p_within_sqrt_21_16},
                                                {"l_lt_half", jz.l_below_half},
                                                {"precision_bits", std::to_string(jz.precision)},
                                                {"L", interval_json(jz.L)},
                                                {"P", interval_json(jz.P)},
                                                {"l", interval_json(jz.l)},
                                                {"p", interval_json(jz.p)},
                                                {"lambda", interval_json(jz.lambda)},
                                                {"c", interval_json(jz.c_const)}};
                payload["lambda_in_range"] = gp.lambda_in_range;
                payload["lambda_inequality"] =
                    json{{"holds", gp.lambda_inequality}, {"lhs", interval_json(gp.lambda_lhs)},
                         {"rhs", interval_json(gp.lambda_rhs)}};
            }
            catch (const PreconditionError &e)
            {
                r["outcome"] = "inapplicable";
                payload["failed"] = e.failed();
                code = 1;
            }
            catch (const Error &e)
            {
                bool inapplicable = e.code() == Errc::TheoremInapplicable || e.code() == Errc::DegenerateInput;
                r["outcome"] = inapplicable ? "inapplicable" : "error";
                payload["error"] = std::string(errc_name(e.code()));
                payload["message"] = e.what();
                code = 1;
            }
            r["payload"] = std::move(payload);
            emit(out, common, std::move(r));
            return code;
        }

        if (chain->parsed())
        {
            ChainCertificate cert = chain_certificate(c_m);
            json r = base_report("chain", args);
            r["config"] = json{{"m", std::to_string(c_m)}};
            bool contradiction = cert.contradiction_at.has_value();
            r["outcome"] = contradiction ? "ok" : "inapplicable";
            json payload;
            payload["result"] = contradiction ? "Contradiction" : "NoContradiction";
            if (contradiction)
                payload["contradiction_at"] = std::to_string(*cert.contradiction_at);
            json lbs = json::array();
            for (const auto &[k, v] : cert.lower_bounds)
            {
                lbs.push_back(json{{"index", std::to_string(k)},
                                   {"abs_sq_at_least", str(v)},
                                   {"bits", std::to_string(mpz_sizeinbase(v.get_mpz_t(), 2))}});
            }
            payload["lower_bounds"] = std::move(lbs);
            json steps = json::array();
            for (const auto &[from, to] : cert.steps)
                steps.push_back(json::array({std::to_string(from), std::to_string(to)}));
            payload["steps"] = std::move(steps);
            if (cert.upper_bound_rhs)
            {
                payload["upper_bound_rhs"] = str(*cert.upper_bound_rhs);
                payload["upper_bound_rhs_bits"] = std::to_string(mpz_sizeinbase(cert.upper_bound_rhs->get_mpz_t(), 2));
            }
            payload["checks"] = checks_json(cert.checks);
            r["payload"] = std::move(payload);
            emit(out, common, std::move(r));
            return contradiction ? 0 : 1;
        }

        if (extend->parsed())
        {
            RingSpec spec = parse_ring(e_d);
            auto elems = parse_elems_usage(spec, e_elems);
            Int bsq = bound_sq(e_bound);
            json r = base_report("extend", args);
            json cfg{{"d", std::to_string(e_d)}, {"elems", json::array()}, {"bound", std::to_string(e_bound)},
                     {"max_abs_sq", str(bsq)}};
            for (const auto &e : elems)
                cfg["elems"].push_back(elem_json(e));
            r["config"] = cfg;
            json payload;
            int code = 0;
            try
            {
                DiophTuple t = dioph::make_tuple(spec, elems);
                auto ext = extend_tuple(t, bsq);
                json list = json::array(), pretty = json::array();
                for (const auto &d : ext)
                {
                    list.push_back(elem_json(d));
                    pretty.push_back(to_pretty(d));
                }
                r["outcome"] = "ok";
                payload["count"] = std::to_string(ext.size());
                payload["extensions"] = std::move(list);
                payload["pretty"] = std::move(pretty);
                if (t.size() == 3)
                {
                    auto cand = quadruple_extension_candidates(t[0], t[1], t[2]);
                    json reg = json::array();
                    for (const auto &d : cand.verified)
                        reg.push_back(elem_json(d));
                    payload["regular_extensions"] = std::move(reg);
                }
            }
            catch (const NotDiophantineError &e)
            {
                r["outcome"] = "violation";
                payload["pair"] = json::array({std::to_string(e.i()), std::to_string(e.j())});
                payload["message"] = e.what();
                code = 1;
            }
            catch (const Error &e)
            {
                r["outcome"] = "error";
                payload["error"] = std::string(errc_name(e.code()));
                payload["message"] = e.what();
                code = 1;
            }
            r["payload"] = std::move(payload);
            emit(out, common, std::move(r));
            return code;
        }
    }
    catch (const UsageError &e)
    {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace dioph
