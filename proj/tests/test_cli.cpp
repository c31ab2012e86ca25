#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("loosehc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& contents) const {
        const fs::path path = dir_ / name;
        std::ofstream(path) << contents;
        return path.string();
    }

    CliResult run(const std::string& args) const {
        const fs::path out = dir_ / "stdout.txt";
        const std::string cmd = std::string(LOOSEHC_CLI) + " " + args + " > " + out.string() + " 2> " + (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        CliResult r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        std::ifstream in(out);
        std::stringstream ss;
        ss << in.rdbuf();
        r.out = ss.str();
        return r;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifySmallestLooseCycle) {
    const std::string h = file("h.txt", "4 2\n1 2 3\n1 2 4\n");
    const std::string c = file("c.txt", "1 2\n3 4\n");
    EXPECT_EQ(run("verify --in " + h + " --cert " + c).code, 0);
    const std::string bad = file("bad.txt", "4 1\n1 2 3\n");
    EXPECT_EQ(run("verify --in " + bad + " --cert " + c).code, 1);
}

TEST_F(Cli, PipelineOnCompleteHypergraph) {
    const CliResult r = run("pipeline --n 8 --p 1.0 --r 4 --seed 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("result: success"), std::string::npos);
    const CliResult j = run("pipeline --n 8 --p 0 --r 4 --seed 1 --format json");
    EXPECT_EQ(j.code, 1);
    EXPECT_NE(j.out.find("\"failed_stage\": \"matching\""), std::string::npos);
}

TEST_F(Cli, SweepCsvRowCount) {
    const std::string out = (dir_ / "sweep.csv").string();
    EXPECT_EQ(run("sweep --n 8 --n 12 --c 1 --c 4 --c 16 --trials 10 --seed 3 --out " + out).code, 0);
    std::ifstream in(out);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "n,c,p,trials,successes,freq,ci_low,ci_high,method,seed");
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 6);
    EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST_F(Cli, SolveAndVerifyRoundTrip) {
    const std::string h = (dir_ / "h.txt").string();
    const std::string c = (dir_ / "c.txt").string();
    ASSERT_EQ(run("sample --kind h3 --n 8 --p 0.9 --seed 4 --out " + h).code, 0);
    ASSERT_EQ(run("solve --kind loose --in " + h + " --out " + c).code, 0);
    EXPECT_EQ(run("verify --kind loose --in " + h + " --cert " + c).code, 0);

    const std::string g = (dir_ / "g.txt").string();
    const std::string cert = (dir_ / "cert.txt").string();
    ASSERT_EQ(run("sample --kind union-colored --n 8 --r 2 --seed 5 --out " + g).code, 0);
    const int solved = run("solve --kind rainbow --in " + g + " --out " + cert).code;
    ASSERT_TRUE(solved == 0 || solved == 1);
    if (solved == 0) {
        EXPECT_EQ(run("verify --kind rainbow --in " + g + " --cert " + cert).code, 0);
    }
}

TEST_F(Cli, NotFoundExitsOne) {
    const std::string h = file("h.txt", "8 1\n1 2 3\n");
    EXPECT_EQ(run("solve --kind loose --in " + h).code, 1);
    const std::string ts = file("ts.txt", "2 2\n1 2 1\n3 4 1\n");
    EXPECT_EQ(run("solve --kind matching --in " + ts).code, 1);
}

TEST_F(Cli, UsageAndInputErrorsExitTwo) {
    EXPECT_EQ(run("pipeline --n 8 --p 0.5 --c 2").code, 2);
    EXPECT_EQ(run("pipeline --n 8 --p 1.5").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("").code, 2);
    const std::string h = file("h.txt", "4 1\n1 2 9\n");
    const std::string c = file("c.txt", "1 2\n3 4\n");
    EXPECT_EQ(run("verify --in " + h + " --cert " + c).code, 2);
    EXPECT_EQ(run("verify --in " + (dir_ / "missing.txt").string() + " --cert " + c).code, 2);
    EXPECT_EQ(run("sweep --n 10 --c 1").code, 2);
    EXPECT_EQ(run("solve --kind loose --in " + c + " --cap 2").code, 2);
}

TEST_F(Cli, ProbesProduceOutput) {
    const CliResult iso = run("probe --kind isolated --n 8 --c 1 --trials 100");
    EXPECT_EQ(iso.code, 0);
    EXPECT_NE(iso.out.find('\n'), std::string::npos);
    EXPECT_EQ(run("probe --kind contiguity --n 8 --r 2 --trials 50").code, 0);
    EXPECT_EQ(run("probe --kind oracle --n 8 --p 0.9 --r 4 --trials 20").code, 0);
}
