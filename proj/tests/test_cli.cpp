#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptk/app/csv.hpp"

namespace fs = std::filesystem;
using ptk::app::read_file;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + PTK_BIN + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("ptk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string file(const std::string& name, const std::string& text = {}) {
        const auto p = (dir / name).string();
        if (!text.empty()) std::ofstream(p) << text;
        return p;
    }
    fs::path dir;
};

const char* good_ini = "[params]\nomega_c_GHz=7.55\nomega_q_GHz=7.55\ng_MHz=15.9\nkappa_kHz=421.5\n";

}  // namespace

TEST_F(Cli, SweepSucceeds) {
    const auto r = run("sweep --config " + file("good.ini", good_ini) + " --grid 101");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("# ptk ", 0), 0u);
}

TEST_F(Cli, ConfigErrorsExitOne) {
    EXPECT_EQ(run("sweep --config " + file("c.ini", "# comments only\n")).code, 1);
    EXPECT_EQ(run("sweep --config " + file("missing.ini")).code, 1);
    EXPECT_EQ(run("sweep").code, 1);
    EXPECT_EQ(run("sweep --regime good --config " + file("good.ini", good_ini)).code, 1);
    EXPECT_EQ(run("sweep --regime sideways").code, 1);
    EXPECT_EQ(run("nonsense").code, 1);
    EXPECT_EQ(run("sweep --regime good", "PTK_THREADS=zero").code, 1);
    EXPECT_EQ(run("plot " + file("nothing.csv") + " --svg " + file("x.svg")).code, 1);
}

TEST_F(Cli, DomainErrorsExitTwo) {
    const auto ini = file("asym.ini", "[params]\nomega_c_GHz=7\nomega_q_GHz=7\ng_MHz=1\nkappa1_kHz=100\nkappa2_kHz=300\n");
    EXPECT_EQ(run("sweep --mode g2 --config " + ini).code, 2);
    const auto lossless = file("lossless.ini", "[params]\nomega_c_GHz=7\nomega_q_GHz=7\ng_MHz=0\nkappa_kHz=0\n");
    EXPECT_EQ(run("sweep --config " + lossless + " --grid 3").code, 2);
}

TEST_F(Cli, VerifyExitsZeroWhenAllPass) {
    const auto report = file("report.csv");
    const auto r = run("verify --regime bad --out " + report);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 failed"), std::string::npos);
    EXPECT_NE(read_file(report).find("check,status,"), std::string::npos);
}

TEST_F(Cli, VerifyExitsThreeOnFailure) {
    // a lossless cavity leaves the oracle suite with a failing row
    const auto ini = file("bare.ini", "[params]\nomega_c_GHz=7\nomega_q_GHz=7.1\ng_MHz=1\nkappa_kHz=0\n");
    EXPECT_EQ(run("verify --config " + ini).code, 3);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST_F(Cli, SweepBytesAreDeterministic) {
    const auto a = file("a.csv"), b = file("b.csv"), c = file("c.csv");
    ASSERT_EQ(run("sweep --regime good --mode g2 --grid 301 --out " + a, "PTK_THREADS=1").code, 0);
    ASSERT_EQ(run("sweep --regime good --mode g2 --grid 301 --out " + b, "PTK_THREADS=8").code, 0);
    ASSERT_EQ(run("sweep --regime good --mode g2 --grid 301 --out " + c, "PTK_THREADS=8").code, 0);
    EXPECT_EQ(read_file(a), read_file(b));
    EXPECT_EQ(read_file(b), read_file(c));
}

TEST_F(Cli, ParamsAndVerifyReportsDeterministic) {
    EXPECT_EQ(run("params --regime good").out, run("params --regime good").out);
    const auto a = file("a.csv"), b = file("b.csv");
    run("verify --regime good --out " + a, "PTK_THREADS=1");
    run("verify --regime good --out " + b, "PTK_THREADS=8");
    EXPECT_EQ(read_file(a), read_file(b));
}

TEST_F(Cli, PlotFromSweep) {
    const auto csv = file("s.csv"), svg = file("s.svg"), svg2 = file("t.svg");
    ASSERT_EQ(run("sweep --regime good --mode g2 --grid 201 --out " + csv + " --svg " + svg).code, 0);
    ASSERT_EQ(run("plot " + csv + " --svg " + svg2).code, 0);
    const auto text = read_file(svg2);
    EXPECT_NE(text.find("<svg"), std::string::npos);
    EXPECT_NE(text.find("g2_22"), std::string::npos);
    EXPECT_EQ(text.find("href"), std::string::npos);
}

TEST_F(Cli, GoldenGoodCavitySweep) {
    const auto out = file("good.csv");
    ASSERT_EQ(run("sweep --regime good --out " + out).code, 0);
    EXPECT_EQ(read_file(out), read_file(std::string(PTK_GOLDEN_DIR) + "/good_single.csv"));
}

TEST_F(Cli, GoldenBadCavityG2Sweep) {
    const auto out = file("bad.csv");
    ASSERT_EQ(run("sweep --regime bad --mode g2 --grid 401 --out " + out).code, 0);
    EXPECT_EQ(read_file(out), read_file(std::string(PTK_GOLDEN_DIR) + "/bad_g2_401.csv"));
}
