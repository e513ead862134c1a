#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("rbody-cli-" + std::to_string(rd()));
        fs::create_directories(dir_);
    }

    void TearDown() override { fs::remove_all(dir_); }

    // Runs the CLI with --out-dir pointing at the scratch directory; returns the exit code.
    int run(const std::string& args) {
        const std::string cmd = std::string(RBODY_CLI_PATH) + " --out-dir " + dir_.string() + " " + args + " > " +
                                (dir_ / "stdout.txt").string() + " 2> " + (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const fs::path& p) const {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string out() const { return read(dir_ / "stdout.txt"); }
    std::string err() const { return read(dir_ / "stderr.txt"); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ChoreoVerifyPassesAndCorruptionFails) {
    EXPECT_EQ(run("choreo verify"), 0) << err();
    EXPECT_NE(out().find("isosceles"), std::string::npos);
    const auto report = nlohmann::json::parse(read(dir_ / "reports" / "choreo-verify.json"));
    EXPECT_TRUE(report.at("pass").get<bool>());
    EXPECT_EQ(run("choreo verify --corrupt-ic --family isosceles"), 2);
    EXPECT_NE(out().find("FAILED"), std::string::npos);
}

TEST_F(Cli, ValidationErrorsExitWithOne) {
    EXPECT_EQ(run("spectrum --l-max 0"), 1);
    EXPECT_EQ(run("shoot --t0 1.0"), 1);
    EXPECT_EQ(run("shoot --family square"), 1);
    EXPECT_EQ(run("no-such-command"), 1);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("spectrum --p 0"), 1);
}

TEST_F(Cli, SpectrumReportsDegenerateModes) {
    EXPECT_EQ(run("spectrum --alpha 2 --p 1 --m 2"), 0) << err();
    EXPECT_NE(out().find("degenerate modes: -1 1"), std::string::npos) << out();
    EXPECT_TRUE(fs::exists(dir_ / "reports" / "spectrum.json"));
}

TEST_F(Cli, Table1StoresRecordsAndExports) {
    EXPECT_EQ(run("table1 --rows 1,6"), 0) << err();
    EXPECT_NE(out().find("2/2 rows"), std::string::npos) << out();
    EXPECT_TRUE(fs::exists(dir_ / "orbits" / "isosceles-y-perp-q8.json"));
    EXPECT_TRUE(fs::exists(dir_ / "orbits" / "orthogonal-y-perp-q2.json"));
    const auto index = nlohmann::json::parse(read(dir_ / "index.json"));
    ASSERT_EQ(index.at("orbits").size(), 2u);
    EXPECT_EQ(index.at("orbits")[0].at("id"), "orthogonal-y-perp-q2");

    const fs::path csv = dir_ / "row1.csv";
    EXPECT_EQ(run("export --id isosceles-y-perp-q8 --samples 16 --output " + csv.string()), 0) << err();
    std::ifstream in(csv);
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    EXPECT_EQ(lines, 18);
    EXPECT_EQ(run("export --id missing"), 3);
}

TEST_F(Cli, ShootWithExplicitSeed) {
    EXPECT_EQ(run("shoot --t0 5pi/2 --seed 4.7,0.96"), 0) << err();
    EXPECT_TRUE(fs::exists(dir_ / "orbits" / "isosceles-y-perp-q10.json"));
    EXPECT_EQ(run("shoot --t0 2pi --seed 4.1"), 1);
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
    const fs::path cfg = dir_ / "cfg.json";
    std::ofstream(cfg) << R"({"spectrum": {"alpha": 1.5, "p": 2, "m": 2, "l-max": 10}})";
    EXPECT_EQ(run("--config " + cfg.string() + " spectrum"), 0) << err();
    const auto report = nlohmann::json::parse(read(dir_ / "reports" / "spectrum.json"));
    EXPECT_EQ(report.at("alpha").get<double>(), 1.5);
    EXPECT_EQ(report.at("p").get<int>(), 2);
    std::ofstream(dir_ / "bad.json") << "{oops";
    EXPECT_EQ(run("--config " + (dir_ / "bad.json").string() + " spectrum"), 1);
}

TEST_F(Cli, FramesAndCentralConfiguration) {
    EXPECT_EQ(run("frames check"), 0) << err();
    EXPECT_EQ(run("central-config --n 5 --alpha 3"), 0) << err();
    EXPECT_EQ(run("central-config --n 2"), 1);
}

TEST_F(Cli, OutputDirectoryThatIsAFileFails) {
    std::ofstream(dir_ / "blocker") << "x";
    const std::string cmd = std::string(RBODY_CLI_PATH) + " --out-dir " + (dir_ / "blocker").string() +
                            " spectrum > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 3);
}
