#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lhl/commands.hpp"

namespace {

struct Run {
    std::string out;
    int code = -1;
};

std::string cli_path() {
    const char* p = std::getenv("LHL_CLI");
    REQUIRE(p != nullptr);
    return p;
}

Run run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json parsed(const Run& r) { return nlohmann::json::parse(r.out); }

bool keys_sorted(const nlohmann::ordered_json& j) {
    if (j.is_object()) {
        std::string prev;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first && !(prev < it.key())) return false;
            prev = it.key();
            first = false;
            if (!keys_sorted(it.value())) return false;
        }
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (!keys_sorted(v)) return false;
    }
    return true;
}

bool has_pair(const nlohmann::json& list, const std::string& x, const std::string& y) {
    for (const auto& p : list)
        if (p["x"] == x && p["y"] == y) return true;
    return false;
}

}  // namespace

TEST_CASE("em-table A2: schema, sorted keys, determinism") {
    const Run a = run("em-table --type A2");
    const Run b = run("em-table --type A2");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(keys_sorted(nlohmann::ordered_json::parse(a.out)));
    const auto j = parsed(a);
    CHECK(j["schema"] == "v1");
    CHECK(j["pairs"] == 19);
    CHECK(j["strict_pairs"] == 13);
    CHECK(j["positive"] == true);
    CHECK(j["violations"].empty());
    for (const auto& row : j["rows"]) CHECK(row["sign"] == 1);
}

TEST_CASE("em-table A1 tsv has a header and three rows") {
    const Run r = run("em-table --type A1 --format tsv");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int lines = 0;
    std::getline(in, line);
    CHECK(line == "e\tsigma_coef\tsigma_exp\tsign\tx\ty");
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 3);
}

TEST_CASE("non-dominant coweight needs the flag and then fails positivity") {
    const Run refused = run("em-table --type A3 --coweight 3,-2,1");
    CHECK(refused.code == 2);
    const auto e = parsed(refused);
    CHECK(e["schema"] == "v1");
    CHECK(e["error"]["kind"] == "PreconditionFailed");

    const Run r = run("em-table --type A3 --coweight 3,-2,1 --allow-nondominant");
    CHECK(r.code == 1);
    const auto j = parsed(r);
    CHECK(j["dominant"] == false);
    CHECK(j["positive"] == false);
    CHECK(j["pairs"] == 213);
    CHECK(j["violations"].size() == 80);
    CHECK(has_pair(j["vanishing"], "id", "stuts"));
    CHECK(j["vanishing"].size() == 4);
}

TEST_CASE("local-form tsut at id") {
    const Run r = run("local-form --type A3 --word tsut --x id");
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["det_sign"] == "-");
    CHECK(j["leading_minor_signs"] == "+-");
    CHECK(j["hard_lefschetz"]["holds"] == true);
    CHECK(j["hodge_riemann"]["standard"] == true);
    CHECK(j["hodge_riemann"]["expected_pattern"] == "+-");
    CHECK(j["pairing_matches_multiplicity"] == true);
    CHECK(j["bimodule_rank"] == 16);
}

TEST_CASE("local-form at the top point has rank one") {
    const Run r = run("local-form --type A3 --word tsut --x tsut");
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["rank"] == 1);
    CHECK(j["bottom_pairing"] == j["multiplicity"]);
}

TEST_CASE("local-form B(s) at id") {
    const Run r = run("local-form --type A1 --word s --x id");
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["bimodule_rank"] == 2);
    CHECK(j["rank"] == 1);
    CHECK(j["degrees"] == nlohmann::json::array({-1}));
}

TEST_CASE("verify-hodge passes on A2 and fails off the dominant cone") {
    const Run r = run("verify-hodge --type A2");
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["words"] == 7);
    CHECK(j["stalks"]["checked"] == j["stalks"]["passed"]);
    CHECK(j["p1_sheaves"]["checked"] == j["p1_sheaves"]["passed"]);

    const Run bad = run("verify-hodge --type A3 --coweight 3,-2,1 --allow-nondominant --max-length 4");
    CHECK(bad.code == 1);
    CHECK(parsed(bad)["verdict"] == "fail");
}

TEST_CASE("p1 sheaf on the ample cone") {
    const Run r = run("p1 --type A3 --word st --s u");
    REQUIRE(r.code == 0);
    const auto j = parsed(r);
    CHECK(j["hl_ample"] == true);
    CHECK(j["hr_ample"] == true);
    CHECK(j["verdict"] == "pass");
    CHECK(j["xs"] == "u");
}

TEST_CASE("jantzen layers") {
    const Run d = run("jantzen");
    REQUIRE(d.code == 0);
    const auto j = parsed(d);
    CHECK(j["layers"] == nlohmann::json::array({7, 3, 2, 1}));
    CHECK(j["matches_expected"] == true);
    CHECK(j["dim"] == 13);

    const Run g = run("jantzen --gamma 3,-2,1");
    REQUIRE(g.code == 0);
    CHECK(parsed(g)["layers"] == nlohmann::json::array({7, 2, 4}));

    const Run s = run("jantzen --type A1 --w id --nu 1");
    REQUIRE(s.code == 0);
    CHECK(parsed(s)["layers"] == nlohmann::json::array({0, 1}));
}

TEST_CASE("bad input exits 2") {
    CHECK(run("local-form --type A3 --word tqx").code == 2);
    CHECK(run("local-form --type Z9 --word s").code == 2);
    CHECK(run("local-form --type A3").code == 2);
    CHECK(run("em-table --type A2 --coweight 1,x").code == 2);
    CHECK(run("em-table --type A2 --format xml").code == 2);
    CHECK(run("nosuch").code == 2);
}

TEST_CASE("--out writes the same bytes as stdout") {
    const auto path = std::filesystem::temp_directory_path() / "lhl_cli_out.json";
    std::filesystem::remove(path);
    const Run to_file = run("em-table --type A2 --out " + path.string());
    REQUIRE(to_file.code == 0);
    CHECK(to_file.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == run("em-table --type A2").out);
    std::filesystem::remove(path);
}

TEST_CASE("run_command matches the binary") {
    lhl::RunConfig cfg;
    cfg.type = "A2";
    const auto res = lhl::run_command("em-table", cfg);
    CHECK(res.exit_code == 0);
    CHECK(lhl::render(res.report, "json") == run("em-table --type A2").out);

    const auto unknown = lhl::run_command("bogus", cfg);
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.report["schema"] == "v1");
}
