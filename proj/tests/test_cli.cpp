#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcm/cli.hpp"
#include "qcm/io.hpp"

namespace fs = std::filesystem;
using qcm::io::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = qcm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qcm_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

std::string example4_file() {
    const auto r = run({"example", "example4", "--grid", "0:2:1/4", "--alpha", "1", "--beta", "5"});
    REQUIRE(r.code == 0);
    return write("e4.json", r.out);
}

}  // namespace

TEST_CASE("example then approx recovers the far-target regime") {
    const auto path = example4_file();
    const auto r = run({"approx", path});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["q"] == "5");
    CHECK(j["results"][0]["best"] == Json({"2"}));
    CHECK(j["results"][0]["common_distance"] == Json({"3", "3"}));
    CHECK(j["status"] == "ok");
}

TEST_CASE("verify passes on a generated instance and fails on a broken table") {
    const auto path = example4_file();
    CHECK(run({"verify", path}).code == qcm::cli::kSuccess);

    const auto bad = write("bad.json", R"({"space": {"dimension": 1, "rows": [["1"]]}, "points": ["a", "b"],
      "metric": {"kind": "table", "entries": [["a","a",["0"]],["a","b",["0"]],["b","a",["1"]],["b","b",["0"]]]}})");
    const auto r = run({"verify", bad});
    CHECK(r.code == qcm::cli::kAxiomFailure);
    CHECK(r.err.find("QCM2") != std::string::npos);
}

TEST_CASE("witness emit then check round-trips") {
    const auto path = example4_file();
    const auto w = scratch("w.json").string();
    REQUIRE(run({"witness", path, "--mode", "emit", "--query", "5", "--witness", w}).code == 0);
    const auto check = run({"witness", path, "--mode", "check", "--witness", w});
    CHECK(check.code == 0);
    CHECK(Json::parse(check.out)["verdict"]["holds"] == true);

    const auto bad = run({"witness", path, "--mode", "check", "--witness", w, "--members", "2,7/4"});
    CHECK(bad.code == qcm::cli::kVerdictFailure);
    CHECK(Json::parse(bad.out)["verdict"]["member"] == "7/4");
}

TEST_CASE("classify exit codes") {
    const auto ok = run({"example", "example4", "--grid", "0:2:1/4", "--beta", "0", "--beta", "1/2", "--beta", "5"});
    const auto good = write("cheb.json", ok.out);
    CHECK(run({"classify", good}).code == 0);

    const auto flip = run({"example", "example4", "--grid", "0:2:1/4", "--beta", "-1", "--beta", "5"});
    const auto bad = write("nocheb.json", flip.out);
    const auto r = run({"classify", bad});
    CHECK(r.code == qcm::cli::kVerdictFailure);
    const auto j = Json::parse(r.out);
    REQUIRE(j["theorem_form"].size() == 1);
    CHECK(j["theorem_form"][0]["verdict"]["holds"] == true);

    CHECK(run({"classify", good, "--pseudo"}).code == qcm::cli::kSemanticError);
}

TEST_CASE("distinct exit codes for parse and semantic errors") {
    CHECK(run({"approx", write("broken.json", "{ not json")}).code == qcm::cli::kParseError);
    CHECK(run({"approx", scratch("missing.json").string()}).code == qcm::cli::kParseError);
    const auto path = example4_file();
    CHECK(run({"approx", path, "--query", "nope"}).code == qcm::cli::kSemanticError);
    CHECK(run({"frobnicate"}).code == qcm::cli::kParseError);
    CHECK(run({"example", "example4", "--grid", "0:2:0"}).code == qcm::cli::kParseError);
    CHECK(run({"example", "example4", "--grid", "0:2:1", "--alpha", "-1"}).code == qcm::cli::kParseError);
}

TEST_CASE("reports are deterministic and independent of --jobs") {
    const auto path = example4_file();
    for (const auto& cmd : {"verify", "approx", "classify"}) {
        const auto a = run({cmd, path, "--seed", "3"});
        const auto b = run({cmd, path, "--seed", "3"});
        CHECK(a.out == b.out);
        if (std::string(cmd) != "approx") {
            const auto c = run({cmd, path, "--seed", "3", "--jobs", "4"});
            const auto strip = [](std::string s) {
                auto j = Json::parse(s);
                j.erase("args");
                return j.dump();
            };
            CHECK(strip(a.out) == strip(c.out));
        }
    }
}

TEST_CASE("flags override the file and --out redirects") {
    const auto path = example4_file();
    const auto out = scratch("report.json").string();
    const auto r = run({"approx", path, "--query", "2", "--candidates", "0,1,2", "--direction", "backward",
                        "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto j = Json::parse(in);
    CHECK(j["direction"] == "backward");
    CHECK(j["candidates"] == Json({"0", "1", "2"}));
    CHECK(j["results"][0]["best"] == Json({"2"}));
}

TEST_CASE("pretty output uses order notation") {
    const auto path = example4_file();
    const auto r = run({"approx", path, "--pretty"});
    CHECK(r.out.find("P_{H_f}(q) = {2}") != std::string::npos);
    CHECK(run({"verify", path, "--pretty"}).out.find("QCM3  pass") != std::string::npos);
}
