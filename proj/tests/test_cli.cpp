#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run hm_run(const std::string& args, const std::string& env = "", bool with_stderr = false) {
    const std::string cmd = env + " '" HM_CLI_PATH "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json report_of(const Run& r) { return nlohmann::json::parse(r.out)["report"]; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hm_cli_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, CheckExamples) {
    auto r = hm_run("check model --theta 'zeros:[(0,0,1),(0.5,0,1)]' --phi 'lft:2,0,-1,4'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(report_of(r)["verdict"], "invariant");

    r = hm_run("check beurling --theta 'zeros:[(0,0,2)]' --phi 'poly:0,0,1'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(report_of(r)["criterion"], "multiplicity");

    r = hm_run("check model --theta 'zeros:[(0,0,3)]' --phi 'poly:0,0,1'");
    EXPECT_EQ(r.code, 1);

    r = hm_run("check reducing --theta 'zeros:[(0,0,2)]' --phi 'affine:0.3,0.5'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(report_of(r)["verdict"], "does_not_reduce");
}

TEST(Cli, TheoremExamples) {
    auto r = hm_run("theorem affine --alpha 0 --n 3 --trials 50 --seed 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(report_of(r)["pass"].get<bool>());

    r = hm_run("theorem reducing --alpha 0 --n 1 --phi 'poly:0,0.333,0.333'");
    EXPECT_EQ(r.code, 0);

    r = hm_run("theorem q1 --alpha 0.3 --beta 0.6");
    EXPECT_EQ(r.code, 0);
    const auto q = report_of(r);
    EXPECT_TRUE(q["exploratory"].get<bool>());
    EXPECT_EQ(q["status"], "conjecture data, not a characterization");

    EXPECT_EQ(hm_run("theorem constant --theta 'zeros:[(0.5,0,1)]' --c 0.3").code, 0);
    EXPECT_EQ(hm_run("theorem example35 --alpha 0.5 --c1 1 --c2 -0.25").code, 0);
    EXPECT_EQ(hm_run("theorem modelinv --theta 'zeros:[(0,0,1),(0.5,0,1)]' --phi 'lft:2,0,-1,4'").code, 0);
    EXPECT_EQ(hm_run("theorem flt --theta 'zeros:[(0,0,2)]' --a 0.4 --b 0.3").code, 0);
    EXPECT_EQ(hm_run("theorem rigidity --phi 'lft:1,0,0,2'").code, 0);
    EXPECT_EQ(hm_run("theorem nope").code, 3);
    EXPECT_EQ(hm_run("theorem q1 --alpha 0.3 --beta 0.3").code, 3);
}

TEST(Cli, AdjointExamples) {
    auto r = hm_run("adjoint --phi 'lft:1,0,-1,2'");
    EXPECT_EQ(r.code, 0);
    EXPECT_LE(report_of(r)["cowen_discrepancy"].get<double>(), 1e-8);

    r = hm_run("adjoint --phi 'lft:1,0,0,1'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(report_of(r)["cowen_discrepancy"].get<double>(), 0.0);

    EXPECT_EQ(hm_run("adjoint --phi 'lft:2,0,0,1'").code, 3);
    EXPECT_EQ(hm_run("adjoint --phi 'const:0.2'").code, 3);

    r = hm_run("--N 8 adjoint --phi 'lft:1,0,-1,2' --dump-sections");
    const auto s = report_of(r)["sections"]["lhs"];
    EXPECT_FALSE(s.is_null());
}

TEST(Cli, InputErrorsNameTheField) {
    auto r = hm_run("check model --theta 'zeros:[(0,0,1),(2,0,1)]' --phi 'lft:2,0,-1,4'", "", true);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("theta.zeros[1]"), std::string::npos);
    r = hm_run("check model --theta 'zeros:[(0,0,1)]' --phi 'affine:1'", "", true);
    EXPECT_NE(r.out.find("phi.affine"), std::string::npos);

    EXPECT_EQ(hm_run("check model --theta 'zeros:[(0,0,1)]' --phi 'lft:1,2,3'").code, 3);
    EXPECT_EQ(hm_run("--N 2048 check model --theta 'zeros:[(0,0,1)]' --phi 'lft:1,0,0,2'").code, 3);
    EXPECT_EQ(hm_run("--tol-accept 0.1 --tol-reject 0.01 check model --theta 'zeros:[(0,0,1)]' --phi 'lft:1,0,0,2'").code, 3);
    EXPECT_EQ(hm_run("frobnicate").code, 3);
}

TEST(Cli, ReportsAreDeterministicAndEmbedConfig) {
    const std::string args = "--seed 11 theorem modelinv --suite --pairs 6";
    const auto a = hm_run(args), b = hm_run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto doc = nlohmann::json::parse(a.out);
    EXPECT_EQ(doc["config"]["seed"], 11);
    EXPECT_EQ(doc["config"]["tol_accept"], 1e-8);
    EXPECT_FALSE(doc["version"].get<std::string>().empty());
}

TEST(Cli, OutputDirFromEnvironment) {
    const auto dir = scratch("env");
    const auto r = hm_run("check model --theta 'zeros:[(0,0,1)]' --phi 'lft:1,0,0,2'", "HM_OUTPUT_DIR='" + dir.string() + "'");
    EXPECT_EQ(r.code, 0);
    std::ifstream f(dir / "check-model.json");
    ASSERT_TRUE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), r.out);
    std::filesystem::remove_all(dir);
}

TEST(Cli, BatchFile) {
    const auto dir = scratch("batch");
    const auto path = dir / "cases.toml";
    std::ofstream(path) << R"(# three cases
[config]
N = 128

[[case]]
name = "example member"
subject = "model"
theta = "zeros:[(0,0,1),(0.5,0,1)]"
phi = "lft:2,0,-1,4"
expect = "invariant"

[[case]]
subject = "model"          # z^2 against Q_{z^3}
theta = "zeros:[(0,0,3)]"
phi = "poly:0,0,1"
expect = "not_invariant"

[[case]]
subject = "beurling"
theta = "zeros:[(0,0,2)]"
phi = "poly:0,0,1"
)";
    auto r = hm_run("check --batch '" + path.string() + "'");
    EXPECT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["cases"].size(), 3u);
    EXPECT_EQ(doc["config"]["N"], 128);
    EXPECT_EQ(doc["cases"][0]["name"], "example member");
    EXPECT_EQ(doc["cases"][1]["report"]["verdict"], "not_invariant");

    std::ofstream(dir / "bad.toml") << "[[case]]\nsubject = \"model\"\ntheta = \"zeros:[(0,0,1)]\"\n";
    EXPECT_EQ(hm_run("check --batch '" + (dir / "bad.toml").string() + "'").code, 3);
    std::filesystem::remove_all(dir);
}
