// Runs the built CLI as a subprocess.

#include <array>
#include <cstdio>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#ifndef MEANEXP_CLI_PATH
#error "MEANEXP_CLI_PATH must point at the CLI binary"
#endif

namespace
{

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string &args, bool merge_stderr = false)
{
    const std::string cmd = std::string(MEANEXP_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST(Cli, ExpandSeiffert)
{
    const auto r = run("expand --mean seiffert1 --order 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1, -1/6, -17/360, -367/15120\n");
}

TEST(Cli, StableNumeric)
{
    const auto r = run("stable --a1 -1/2 --order 5");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1, -1/2, -1/8, -1/16, -5/128, -7/256\n");
}

TEST(Cli, SymbolicFamilyExpansion)
{
    const auto r = run("expand --mean genlog --order 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("a1 = 1/6*r - 1/6"), std::string::npos) << r.out;
}

TEST(Cli, JsonIsVersioned)
{
    const auto r = run("substab --mean ns --order 3 --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("schema_version"), 1);
    EXPECT_EQ(j.at("verdict"), "asym_greater");
}

TEST(Cli, LatexHasNoPreamble)
{
    const auto r = run("check-stability --family gini --order 2 --format latex");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("C_{2} = "), std::string::npos);
    EXPECT_EQ(r.out.find("documentclass"), std::string::npos);
}

TEST(Cli, StabilizedFromSpecs)
{
    const auto r = run("stabilized --k arithmetic --n harmonic --order 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1, -1/2, -1/8, -1/16\n"); // G
}

TEST(Cli, CompareAndVerify)
{
    const auto c = run("compare --mean seiffert1 --k power:0 --m power:2 --order 4");
    EXPECT_EQ(c.status, 0);
    EXPECT_NE(c.out.find("asym_less"), std::string::npos) << c.out;
    const auto v = run("verify --relation stabilizable --mean logarithmic --k arithmetic --m geometric --precision 128");
    EXPECT_EQ(v.status, 0);
    EXPECT_NE(v.out.find("max_relative_residual"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("expand --mean nosuch:1").status, 2);
    EXPECT_EQ(run("stable --a1 x/y").status, 2);
    EXPECT_EQ(run("expand --mean power:2 --format yaml").status, 2);
    EXPECT_EQ(run("stabilizable --k arithmetic").status, 2);
}

TEST(Cli, LibraryErrorsExitOne)
{
    // power has no free stability condition to factor
    const auto r = run("check-stability --family power --format json", true);
    EXPECT_EQ(r.status, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("error").at("kind"), "DomainError");
}

TEST(Cli, HelpExitsZero)
{
    const auto r = run("--help");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("substab"), std::string::npos);
}
