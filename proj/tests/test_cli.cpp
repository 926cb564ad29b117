// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args) {
    std::string cmd = std::string(QSYNTH_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qsynth_cli_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Cli, SynthesizeTrilinearWithJ) {
    CliResult r = run("synthesize trilinear --angle -1.5707963267948966 --J 88");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# durations_ms 2.8409,5.6818,5.6818,2.8409"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("# total_ms 17.0455"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("J_hz=88"), std::string::npos);
}

TEST(Cli, SynthesizeZeroIsEmpty) {
    CliResult r = run("synthesize trilinear --angle 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# total_time_units 0\n"), std::string::npos) << r.out;
    std::istringstream in(r.out);
    std::string line;
    int segments = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("qsynth-sequence", 0) != 0) ++segments;
    EXPECT_EQ(segments, 0);
}

TEST(Cli, SynthesizeDegrees) {
    CliResult a = run("synthesize trilinear --angle 45 --degrees");
    CliResult b = run("synthesize trilinear --angle 0.78539816339744828");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ToricExpandedResidual) {
    CliResult r = run("synthesize toric --angle 0.5 --expand");
    ASSERT_EQ(r.code, 0);
    auto pos = r.out.find("# residual ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LT(std::stod(r.out.substr(pos + 11)), 1e-9);
    EXPECT_NE(r.out.find("units=ising spins=4"), std::string::npos);
}

TEST(Cli, JsonRoundTripThroughCheck) {
    auto path = temp_path("seq.json");
    CliResult r = run("synthesize xx_plus_yy --angle 0.4 --format json --out " + path.string());
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(slurp(path));
    double residual = j["residual"].get<double>();
    EXPECT_LT(residual, 1e-9);
    CliResult c = run("check " + path.string());
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("gate xx_plus_yy"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, CheckDetectsTamperedFile) {
    auto path = temp_path("seq.txt");
    ASSERT_EQ(run("synthesize trilinear --angle 0.5 --out " + path.string()).code, 0);
    std::string text = slurp(path);
    auto pos = text.find("\nS3 ");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 4, "\nS2 ");
    std::ofstream(path, std::ios::binary) << text;
    EXPECT_EQ(run("check " + path.string()).code, 3);
    std::filesystem::remove(path);
}

TEST(Cli, DomainErrorExitCode) {
    EXPECT_EQ(run("synthesize trilinear --angle 2").code, 2);
    EXPECT_EQ(run("synthesize xx_minus_yy --angle -0.5").code, 2);
    EXPECT_EQ(run("synthesize toric --angle 0.5 --J 88").code, 2);
    EXPECT_EQ(run("sweep f --lo 0 --hi 2").code, 2);
    EXPECT_EQ(run("sweep f --lo 1 --hi 0").code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("synthesize nosuchgate --angle 0.1").code, 1);
    EXPECT_EQ(run("bogus").code, 1);
    EXPECT_EQ(run("sweep f --out /nonexistent/dir/x.csv").code, 1);
    EXPECT_EQ(run("check /nonexistent/file").code, 1);
}

TEST(Cli, SweepCsvDeterministic) {
    auto a = temp_path("a.csv"), b = temp_path("b.csv");
    ASSERT_EQ(run("sweep f --lo 0 --hi 1.5707963267948966 --steps 100 --out " + a.string()).code, 0);
    ASSERT_EQ(run("sweep f --lo 0 --hi 1.5707963267948966 --steps 100 --out " + b.string()).code, 0);
    std::string ca = slurp(a);
    EXPECT_EQ(ca, slurp(b));
    std::istringstream in(ca);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "angle,time_units");
    int rows = 0;
    double prev = -1, last_angle = 0, last_time = 0;
    while (std::getline(in, line)) {
        ++rows;
        auto comma = line.find(',');
        last_angle = std::stod(line.substr(0, comma));
        last_time = std::stod(line.substr(comma + 1));
        EXPECT_GT(last_time, prev);
        prev = last_time;
    }
    EXPECT_EQ(rows, 100);
    EXPECT_NEAR(last_angle, 1.5708, 1e-4);
    EXPECT_NEAR(last_time, 4.7124, 1e-4);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST(Cli, SweepBchRows) {
    CliResult r = run("sweep bch --lo 0 --hi 1 --steps 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "angle,time_units\n0,3.14159265359\n0.5,3.64159265359\n1,4.14159265359\n");
}

TEST(Cli, SweepOtherCurves) {
    EXPECT_EQ(run("sweep g --lo 0 --hi 1.5707963267948966 --steps 50").code, 0);
    EXPECT_EQ(run("sweep geodesic2x --steps 10").code, 0);
}

TEST(Cli, VerifySuites) {
    for (const char* suite : {"algebra", "so3", "pmp", "gates"}) {
        CliResult r = run(std::string("verify ") + suite);
        EXPECT_EQ(r.code, 0) << suite << "\n" << r.out;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    }
}

TEST(Cli, Nmr) {
    CliResult r = run("nmr I3z");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("I3z -> -I1z", 0), 0u);
    CliResult y = run("nmr I3y");
    EXPECT_NE(y.out.find("-4*I1yI2zI3z"), std::string::npos);
    EXPECT_NE(y.out.find("coefficient -4"), std::string::npos);
    EXPECT_EQ(run("nmr I1x").out, run("nmr I1x").out);
    EXPECT_EQ(run("nmr I9x").code, 1);
}

}  // namespace
