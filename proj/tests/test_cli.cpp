#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "dioph/cli.hpp"
#include "dioph/error.hpp"

using namespace dioph;
using nlohmann::json;

namespace
{

struct Run
{
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return Run{code, out.str(), err.str()};
}

Run run_json(std::vector<std::string> args)
{
    args.push_back("--format");
    args.push_back("json");
    return run(std::move(args));
}

} // namespace

TEST_CASE("parse_elems")
{
    RingSpec g(-1);
    auto v = parse_elems(g, "1,0; 3,0;-2,+5");
    REQUIRE(v.size() == 3);
    CHECK(v[2] == RingElem(g, -2, 5));
    CHECK_THROWS_AS(parse_elems(g, "1,0;x"), Error);
    CHECK_THROWS_AS(parse_elems(g, "1"), Error);
    CHECK_THROWS_AS(parse_elems(g, ""), Error);
}

TEST_CASE("verify")
{
    Run ok = run_json({"verify", "--d", "-1", "--elems", "1,0;3,0;8,0;120,0"});
    CHECK(ok.code == 0);
    json r = ok.report();
    CHECK(r["outcome"] == "ok");
    CHECK(r["payload"]["tuple"]["witnesses"].size() == 6);
    CHECK(r["payload"]["products_nonsquare"] == true);

    Run bad = run_json({"verify", "--d", "-3", "--elems", "-2,0;2,0;-2,-4;2,4"});
    CHECK(bad.code == 1);
    json b = bad.report();
    CHECK(b["outcome"] == "violation");
    CHECK(b["payload"]["pair"] == json::array({"2", "3"}));

    CHECK(run({"verify", "--d", "-1", "--elems", "1,0;oops"}).code == 2);
    CHECK(run({"verify", "--d", "-4", "--elems", "1,0;3,0"}).code == 2);
    CHECK(run({"verify", "--elems", "1,0;3,0"}).code == 2);
}

TEST_CASE("verify reports the quadruple checks")
{
    json r = run_json({"verify", "--d", "-1", "--elems", "2,0;4,0;12,0;420,0"}).report();
    CHECK(r["payload"]["omega"]["holds"] == true);
    CHECK(r["payload"]["forbidden_double_regular"] == false);
    CHECK(r["payload"]["stronger_bound"]["excluded"] == true);
}

TEST_CASE("search")
{
    Run r = run_json({"search", "--d", "-1", "--bound", "16", "--size", "4"});
    CHECK(r.code == 0);
    json j = r.report();
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "search");
    CHECK(j["payload"]["count"] == "6");
    CHECK(j["config"]["max_abs_sq"] == "256");
    CHECK(j["constants"]["K"] == "4728^20");

    Run first = run_json({"search", "--d", "-1", "--bound", "16", "--size", "4", "--mode", "first"});
    CHECK(first.report()["payload"]["count"] == "1");
    Run count = run_json({"search", "--d", "-1", "--bound", "16", "--size", "4", "--mode", "count"});
    CHECK_FALSE(count.report()["payload"].contains("tuples"));

    CHECK(run({"search", "--d", "-3", "--bound", "16", "--size", "5", "--expect-empty"}).code == 0);
    // Exit 1 when tuples turn up under --expect-empty.
    CHECK(run({"search", "--d", "-1", "--bound", "16", "--size", "4", "--expect-empty"}).code == 1);
    CHECK(run({"search", "--d", "-1", "--bound", "16", "--size", "1"}).code == 2);
    CHECK(run({"search", "--d", "-1", "--size", "4"}).code == 2);
    CHECK(run({"search", "--bound", "4", "--size", "4"}).code == 2);
    CHECK(run({"search", "--d", "-1", "--sweep", "--bound", "4", "--size", "4"}).code == 2);
    CHECK(run({"search", "--d", "-1", "--bound", "4", "--size", "4", "--mode", "some"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("search output round-trips through verify")
{
    json j = run_json({"search", "--d", "-7", "--bound", "16", "--size", "4"}).report();
    REQUIRE(!j["payload"]["tuples"].empty());
    for (const auto &t : j["payload"]["tuples"])
    {
        std::string elems;
        for (const auto &e : t["elems"])
        {
            if (!elems.empty())
                elems += ";";
            elems += e[0].get<std::string>() + "," + e[1].get<std::string>();
        }
        Run v = run_json({"verify", "--d", "-7", "--elems", elems});
        CHECK(v.code == 0);
        CHECK(v.report()["payload"]["tuple"]["witnesses"] == t["witnesses"]);
    }
}

TEST_CASE("sweep")
{
    Run r = run_json({"search", "--sweep", "--bound", "4", "--size", "5", "--expect-empty"});
    CHECK(r.code == 0);
    json j = r.report();
    CHECK(j["outcome"] == "ok");
    CHECK(j["payload"]["count"] == "0");
    CHECK(j["payload"]["completeness"]["rings_searched"] == "39");
    CHECK(j["payload"]["completeness"]["quoted_cutoff"] == "32");
    // Reruns are byte-identical.
    CHECK(run_json({"search", "--sweep", "--bound", "4", "--size", "5", "--expect-empty"}).out == r.out);
    CHECK(run({"search", "--sweep", "--bound", "4", "--size", "5", "--mode", "first"}).code == 2);
}

TEST_CASE("gap")
{
    Run bad = run_json({"gap", "--d", "-1", "--elems", "1,0;2,0;3,0"});
    json b = bad.report();
    CHECK(b["outcome"] == "inapplicable");
    CHECK(b["payload"]["failed"] == json::array({"|ac| >= 9", "|b| > 5", "|c| > |b|^15"}));
    CHECK(bad.code == 1);

    Run ok = run_json({"gap", "--d", "-1", "--elems", "2,0;6,0;470184984577,0"});
    CHECK(ok.code == 0);
    json g = ok.report();
    CHECK(g["outcome"] == "ok");
    CHECK(g["payload"]["lambda_in_range"] == true);
    CHECK(g["payload"]["lambda_inequality"]["holds"] == true);
    CHECK(run({"gap", "--d", "-1", "--elems", "2,0;6,0"}).code == 2);
}

TEST_CASE("chain")
{
    Run c = run_json({"chain", "--m", "43"});
    CHECK(c.code == 0);
    json j = c.report();
    CHECK(j["payload"]["result"] == "Contradiction");
    CHECK(j["payload"]["contradiction_at"] == "43");
    Run n = run_json({"chain", "--m", "42"});
    CHECK(n.code == 1);
    CHECK(n.report()["outcome"] == "inapplicable");
    CHECK(n.report()["payload"]["result"] == "NoContradiction");
    CHECK(run({"chain", "--m", "3"}).code == 2);
}

TEST_CASE("extend")
{
    Run r = run_json({"extend", "--d", "-1", "--elems", "1,0;3,0;8,0", "--bound", "1000"});
    CHECK(r.code == 0);
    json j = r.report();
    bool has120 = false;
    for (const auto &e : j["payload"]["extensions"])
        has120 = has120 || e == json::array({"120", "0"});
    CHECK(has120);
    CHECK(j["payload"]["regular_extensions"] == json::array({json::array({"120", "0"})}));
    CHECK(run({"extend", "--d", "-1", "--elems", "1,0;2,0", "--bound", "10"}).code == 1);
    Run far = run_json({"extend", "--d", "-1", "--elems", "1,0;3,0;8,0", "--bound", "1000000"});
    CHECK(far.code == 0);
    CHECK(far.report()["payload"]["extensions"] == json::array({json::array({"120", "0"})}));
}

TEST_CASE("text output")
{
    Run t = run({"chain", "--m", "43"});
    CHECK(t.code == 0);
    CHECK(t.out.find("command: chain") != std::string::npos);
    CHECK(t.out.find("result: Contradiction") != std::string::npos);
    CHECK(run({"chain", "--m", "43"}).out == t.out);
}
