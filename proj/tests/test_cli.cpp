#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covollab/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

using covollab::cli::RunResult;
using covollab::cli::run;
using json = nlohmann::json;

namespace {

RunResult run_cmd(std::initializer_list<const char*> args) {
    setenv("COVOLLAB_NO_TIMING", "1", 1);
    return run(std::vector<std::string>(args.begin(), args.end()));
}

json parse(const RunResult& rr) { return json::parse(rr.output); }

}  // namespace

TEST_CASE("covol emits the exact rational and exit 0") {
    auto rr = run_cmd({"covol", "--family", "A", "--rank", "2", "--q", "3", "--format", "json"});
    CHECK(rr.exit_code == 0);
    json doc = parse(rr);
    CHECK(doc["outputs"]["value"]["num"] == "27");
    CHECK(doc["outputs"]["value"]["den"] == "16");
    CHECK(doc["command"] == "covol");
}

TEST_CASE("order matches the hand-evaluated G_2 value") {
    auto rr = run_cmd({"order", "--family", "G", "--rank", "2", "--q", "2", "--format", "json"});
    CHECK(rr.exit_code == 0);
    CHECK(parse(rr)["outputs"]["order"] == "12096");

    auto ring = run_cmd({"order", "--family", "A", "--rank", "1", "--q", "3", "--trunc", "2",
                         "--format", "json"});
    CHECK(ring.exit_code == 0);
    CHECK(parse(ring)["outputs"]["order"] == "648");
}

TEST_CASE("covol with a zeta numerator") {
    auto rr = run_cmd({"covol", "--family", "A", "--rank", "1", "--q", "5", "--zeta", "1,-2,5",
                       "--format", "json"});
    CHECK(rr.exit_code == 0);
    json doc = parse(rr);
    CHECK(doc["outputs"]["value"]["num"] == "145");
    CHECK(doc["outputs"]["value"]["den"] == "1");
    CHECK(doc["outputs"]["genus"] == 1);

    auto bad = run_cmd({"covol", "--family", "A", "--rank", "1", "--q", "5", "--zeta", "1,6,5"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.error.find("root_modulus") != std::string::npos);
}

TEST_CASE("lemma-root below threshold: certificate fails, exit 1") {
    auto rr = run_cmd({"verify-lemma-root", "--family", "A", "--rank", "1", "--q", "5",
                       "--format", "json"});
    CHECK(rr.exit_code == 1);
    json doc = parse(rr);
    CHECK(doc["outputs"]["rank"] == 2);
    CHECK(doc["outputs"]["full"] == 3);
    bool fail_named = false;
    for (const auto& c : doc["certificates"])
        if (c["name"] == "full_span") fail_named = c["status"] == "fail";
    CHECK(fail_named);

    auto ok = run_cmd({"verify-lemma-root", "--family", "A", "--rank", "1", "--q", "7"});
    CHECK(ok.exit_code == 0);
}

TEST_CASE("usage and precondition errors exit 2 with a one-line reason") {
    auto unknown = run_cmd({"no-such-command"});
    CHECK(unknown.exit_code == 2);
    CHECK(!unknown.error.empty());

    auto badq = run_cmd({"order", "--family", "A", "--rank", "1", "--q", "6"});
    CHECK(badq.exit_code == 2);
    CHECK(badq.error.find("prime power") != std::string::npos);

    auto badfam = run_cmd({"covol", "--family", "Z", "--rank", "1", "--q", "5"});
    CHECK(badfam.exit_code == 2);

    auto badmodel = run_cmd({"centralizer", "--family", "G", "--rank", "2", "--q", "5"});
    CHECK(badmodel.exit_code == 2);
    CHECK(badmodel.error.find("types A and C") != std::string::npos);
}

TEST_CASE("byte-identical output across repeated runs") {
    for (auto args : {std::initializer_list<const char*>{"e6-audit", "--format", "json"},
                      {"covol", "--family", "D", "--rank", "2", "--q", "3", "--format", "csv"},
                      {"enclosure", "--q", "3", "--depth", "20", "--format", "text"}}) {
        auto a = run_cmd(args), b = run_cmd(args);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("json and csv carry identical numeric content") {
    auto j = run_cmd({"covol", "--family", "A", "--rank", "1", "--q", "3", "--format", "json"});
    auto c = run_cmd({"covol", "--family", "A", "--rank", "1", "--q", "3", "--format", "csv"});
    json doc = parse(j);
    std::string num = doc["outputs"]["value"]["num"], den = doc["outputs"]["value"]["den"];
    CHECK(c.output.find(num + "/" + den) != std::string::npos);
}

TEST_CASE("audit-bounds reproduces the Spin_4 threshold flag") {
    auto fail = run_cmd({"audit-bounds", "--family", "D", "--rank", "2", "--q", "3",
                         "--format", "json"});
    CHECK(fail.exit_code == 1);
    json doc = parse(fail);
    CHECK(doc["outputs"]["covolume"]["num"] == "9");
    CHECK(doc["outputs"]["covolume"]["den"] == "4");

    auto pass = run_cmd({"audit-bounds", "--family", "D", "--rank", "2", "--q", "4"});
    CHECK(pass.exit_code == 0);
}

TEST_CASE("audit commands run green on their home turf") {
    CHECK(run_cmd({"e6-audit"}).exit_code == 0);
    CHECK(run_cmd({"simply-laced-audit", "--family", "D", "--rank", "4"}).exit_code == 0);
    CHECK(run_cmd({"simply-laced-audit", "--family", "B", "--rank", "2"}).exit_code == 2);
    CHECK(run_cmd({"roots", "--family", "E", "--rank", "6"}).exit_code == 0);
    CHECK(run_cmd({"verify-lemma-poly", "--q", "5", "--rank", "2"}).exit_code == 0);
    CHECK(run_cmd({"enclosure", "--q", "3", "--depth", "30"}).exit_code == 0);
}

TEST_CASE("model-backed commands") {
    CHECK(run_cmd({"verify-p-properties", "--family", "A", "--rank", "2", "--q", "5",
                   "--level", "3", "--trunc", "5"})
              .exit_code == 0);
    CHECK(run_cmd({"verify-generation", "--family", "A", "--rank", "1", "--q", "3",
                   "--level", "1", "--trunc", "2"})
              .exit_code == 0);
    CHECK(run_cmd({"centralizer", "--family", "A", "--rank", "1", "--q", "5", "--trunc", "3"})
              .exit_code == 0);
    auto h1 = run_cmd({"h1", "--family", "A", "--rank", "1", "--q", "13", "--format", "json"});
    CHECK(h1.exit_code == 0);
    json doc = parse(h1);
    CHECK(doc["outputs"]["h1_sl"] == 0);
    CHECK(doc["outputs"]["h1_gl"] == 0);
}

TEST_CASE("lift command with a reduced instance count") {
    auto rr = run_cmd({"lift", "--family", "A", "--rank", "1", "--q", "25", "--trunc", "3",
                       "--depth", "2", "--format", "json"});
    CHECK(rr.exit_code == 0);
    CHECK(parse(rr)["outputs"]["recovered"] == 2);
}

TEST_CASE("--out writes the document to a file") {
    std::string path = "/tmp/covollab_cli_out.json";
    std::remove(path.c_str());
    auto rr = run_cmd({"covol", "--family", "A", "--rank", "2", "--q", "3", "--format", "json",
                       "--out", path.c_str()});
    CHECK(rr.exit_code == 0);
    CHECK(rr.output.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    json doc = json::parse(in);
    CHECK(doc["outputs"]["value"]["num"] == "27");
    std::remove(path.c_str());
}
