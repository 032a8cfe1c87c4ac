#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pinchuk/rational.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CLI_BIN
#error "CLI_BIN must point at the command line binary"
#endif

#ifdef _WIN32
#define WEXITSTATUS(s) (s)
#define WIFEXITED(s) 1
#else
#include <sys/wait.h>
#endif

using nlohmann::json;
using pinchuk::BigRat;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const std::string stem = "cli_capture_" + std::to_string(counter++);
    const std::string cmd =
        std::string(CLI_BIN) + " " + args + " > " + stem + ".out 2> " + stem + ".err";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(stem + ".out");
    r.err = slurp(stem + ".err");
    std::remove((stem + ".out").c_str());
    std::remove((stem + ".err").c_str());
    return r;
}

const char* kDoc = "cli_map.json";

void build_degree15() {
    static bool done = false;
    if (done) return;
    const RunResult r = run(std::string("build --c 1 --K 3 --out ") + kDoc + " --no-timestamp");
    REQUIRE(r.code == 0);
    done = true;
}

} // namespace

TEST_CASE("build") {
    const RunResult r =
        run(std::string("build --c 1 --K 3 --out ") + kDoc + " --no-timestamp");
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["command"] == "build");
    CHECK(report["deg_p"] == 10);
    CHECK(report["deg_q"] == 15);
    CHECK(report["params"]["c"] == "1/1");
    CHECK(!report.contains("generated_at"));

    const json doc = json::parse(slurp(kDoc));
    CHECK(doc["format_version"] == "1");
    CHECK(doc["metadata"]["deg_q"] == 15);
    CHECK(doc["metadata"]["construction"] == "theorem-2.5");

    // timestamp appears without the flag
    const RunResult stamped = run(std::string("build --c 1 --K 3 --out ") + kDoc);
    REQUIRE(stamped.code == 0);
    CHECK(json::parse(stamped.out).contains("generated_at"));
}

TEST_CASE("verify passes on a freshly built document") {
    build_degree15();
    const RunResult r = run(std::string("verify --in ") + kDoc + " --no-timestamp");
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["all_pass"] == true);
    REQUIRE(report["checks"].size() == 6);
    for (const json& c : report["checks"]) CHECK(c["pass"] == true);
    CHECK(r.err.find("PASS identities") != std::string::npos);
    CHECK(r.err.find("PASS sos") != std::string::npos);
}

TEST_CASE("verify isolates a corrupted q") {
    build_degree15();
    json doc = json::parse(slurp(kDoc));
    // perturb one coefficient of q
    const std::string orig = doc["q"]["terms"][0]["c"].get<std::string>();
    doc["q"]["terms"][0]["c"] = (BigRat::from_string(orig) + BigRat(1, 7)).to_string();
    std::ofstream("cli_corrupt.json") << doc.dump(2) << "\n";

    const RunResult r = run("verify --in cli_corrupt.json --checks sos,identities --no-timestamp");
    CHECK(r.code == 1);
    const json report = json::parse(r.out);
    CHECK(report["all_pass"] == false);
    REQUIRE(report["checks"].size() == 2);
    CHECK(report["checks"][0]["name"] == "sos");
    CHECK(report["checks"][0]["pass"] == false);
    CHECK(report["checks"][1]["name"] == "identities");
    CHECK(report["checks"][1]["pass"] == true);
    std::remove("cli_corrupt.json");
}

TEST_CASE("verify degree check on the degree-25 instance") {
    const RunResult b = run("build --c 0 --K 0 --out cli_p0.json --no-timestamp");
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["deg_q"] == 25);

    const RunResult r = run("verify --in cli_p0.json --checks degree --no-timestamp");
    CHECK(r.code == 0);
    const json report = json::parse(r.out);
    REQUIRE(report["checks"].size() == 1);
    CHECK(report["checks"][0]["pass"] == true);
    CHECK(report["checks"][0]["details"].get<std::string>().find("25") != std::string::npos);
    std::remove("cli_p0.json");
}

TEST_CASE("verify rejects an unknown check name") {
    build_degree15();
    const RunResult r = run(std::string("verify --in ") + kDoc + " --checks bogus --no-timestamp");
    CHECK(r.code == 1);
    const json report = json::parse(r.out);
    CHECK(report["checks"][0]["pass"] == false);
}

TEST_CASE("witness finds certified pairs on the degree-15 map") {
    build_degree15();
    const RunResult r = run(std::string("witness --in ") + kDoc + " --no-timestamp");
    REQUIRE(r.code == 0);
    const json report = json::parse(r.out);
    REQUIRE(!report["witnesses"].empty());
    CHECK(report["stats"]["candidates"].get<unsigned>() > 0);
    for (const json& w : report["witnesses"]) {
        const BigRat res = BigRat::from_string(w["image_residual_exact"].get<std::string>());
        CHECK(res <= BigRat(1, 1000000000));
        const BigRat x1 = BigRat::from_string(w["z1_rat"][0].get<std::string>());
        const BigRat y1 = BigRat::from_string(w["z1_rat"][1].get<std::string>());
        const BigRat x2 = BigRat::from_string(w["z2_rat"][0].get<std::string>());
        const BigRat y2 = BigRat::from_string(w["z2_rat"][1].get<std::string>());
        const BigRat sx = (x1 - x2).abs(), sy = (y1 - y2).abs();
        CHECK((sx > sy ? sx : sy) >= BigRat(1, 100));
    }
}

TEST_CASE("witness exits 2 when the search cannot certify") {
    build_degree15();
    // a grid this coarse yields no candidate pairs at all
    const RunResult r = run(std::string("witness --in ") + kDoc + " --grid 8 --no-timestamp");
    CHECK(r.code == 2);

    // an injective map never produces a collision
    json doc;
    doc["format_version"] = "1";
    doc["params"]["c"] = "0/1";
    doc["params"]["K"] = json::array({"0/1"});
    doc["p"] = json::parse(R"({"vars":["x","y"],"terms":[{"e":[1,0],"c":"1/1"}]})");
    doc["q"] = json::parse(R"({"vars":["x","y"],"terms":[{"e":[0,1],"c":"1/1"}]})");
    doc["metadata"]["deg_p"] = 1;
    doc["metadata"]["deg_q"] = 1;
    doc["metadata"]["construction"] = "theorem-2.5";
    std::ofstream("cli_identity.json") << doc.dump(2) << "\n";
    const RunResult id = run("witness --in cli_identity.json --grid 64 --no-timestamp");
    CHECK(id.code == 2);
    const json report = json::parse(id.out);
    CHECK(report["witnesses"].empty());
    CHECK(report.contains("error"));
    std::remove("cli_identity.json");
}

TEST_CASE("export") {
    build_degree15();
    const RunResult p = run(std::string("export --in ") + kDoc + " --poly p");
    REQUIRE(p.code == 0);
    CHECK(p.out.find("# p\n") != std::string::npos);
    CHECK(p.out.find("# q") == std::string::npos);
    CHECK(p.out.find("1/1 x^6 y^4") != std::string::npos);

    const RunResult q = run(std::string("export --in ") + kDoc + " --poly q");
    REQUIRE(q.code == 0);
    CHECK(q.out.find("# q\n") != std::string::npos);
    CHECK(q.out.find("# p") == std::string::npos);

    const RunResult both = run(std::string("export --in ") + kDoc);
    REQUIRE(both.code == 0);
    CHECK(both.out.find("# p\n") != std::string::npos);
    CHECK(both.out.find("# q\n") != std::string::npos);

    const RunResult to_file =
        run(std::string("export --in ") + kDoc + " --poly pq --out cli_export.txt --no-timestamp");
    REQUIRE(to_file.code == 0);
    CHECK(slurp("cli_export.txt") == both.out);
    std::remove("cli_export.txt");

    CHECK(run(std::string("export --in ") + kDoc + " --poly z").code == 3);
}

TEST_CASE("reports are deterministic with --no-timestamp") {
    build_degree15();
    const std::string wargs = std::string("witness --in ") + kDoc + " --no-timestamp";
    const RunResult w1 = run(wargs), w2 = run(wargs);
    REQUIRE(w1.code == 0);
    CHECK(w1.out == w2.out);

    const RunResult b1 = run("build --c -2/3 --K 1,0,5/2 --out cli_det.json --no-timestamp");
    const std::string doc1 = slurp("cli_det.json");
    const RunResult b2 = run("build --c -2/3 --K 1,0,5/2 --out cli_det.json --no-timestamp");
    REQUIRE(b1.code == 0);
    REQUIRE(b2.code == 0);
    CHECK(b1.out == b2.out);
    CHECK(slurp("cli_det.json") == doc1);
    std::remove("cli_det.json");
}

TEST_CASE("usage errors exit 3") {
    CHECK(run("").code == 3);
    CHECK(run("frobnicate").code == 3);
    CHECK(run("build --c 1 --K 3").code == 3);             // missing --out
    CHECK(run("build --c nope --K 3 --out cli_x.json").code == 3);
    CHECK(run("build --c 1/0 --K 3 --out cli_x.json").code == 3);
    CHECK(run("verify").code == 3);                        // missing --in
    CHECK(run("verify --in cli_missing_file.json").code == 3);
    CHECK(run("witness --in cli_missing_file.json").code == 3);
    std::ofstream("cli_bad.json") << "this is not json\n";
    CHECK(run("verify --in cli_bad.json").code == 3);
    std::remove("cli_bad.json");
    build_degree15();
    CHECK(run(std::string("witness --in ") + kDoc + " --box 0,1").code == 3);
    CHECK(run(std::string("witness --in ") + kDoc + " --box a,b,c,d").code == 3);
    CHECK(run(std::string("witness --in ") + kDoc + " --grid 1").code == 3);
    CHECK(run(std::string("witness --in ") + kDoc + " --exact-tol nope").code == 3);
    CHECK(run("--help").code == 0);
}
