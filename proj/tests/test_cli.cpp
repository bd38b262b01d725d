#include "ntrelax/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

std::string dir() {
    const auto d = std::filesystem::temp_directory_path() / "ntrelax_cli_tests";
    std::filesystem::create_directories(d);
    return d.string() + "/";
}

int cli(const std::string& args) {
    const std::string cmd = std::string(NTRELAX_CLI) + " " + args + " >" + dir() + "stdout.txt 2>" + dir() + "stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, RunWritesCsvAtomically) {
    const auto out = dir() + "jx.csv";
    ASSERT_EQ(cli("run --preset jinxin-smooth-wp --N 40 --cfl 0.3333333333333333 --eps 1e-10 --out " + out), 0);
    const auto csv = ntrelax::parse_solution_csv(ntrelax::read_file(out));
    EXPECT_EQ(csv.rows.size(), 40u);
    EXPECT_EQ(csv.meta.at("eps"), "1e-10");
    EXPECT_FALSE(std::filesystem::exists(out + ".tmp"));
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
    const auto a = dir() + "a.csv", b = dir() + "b.csv";
    const std::string args = "run --preset sw-riemann --N 80 --cfl 0.4 --eps 1e-6 --out ";
    ASSERT_EQ(cli(args + a), 0);
    ASSERT_EQ(cli(args + b), 0);
    EXPECT_EQ(ntrelax::read_file(a), ntrelax::read_file(b));
}

TEST(Cli, FlagsOverrideConfigFile) {
    const auto cfg = dir() + "run.cfg";
    ntrelax::write_file_atomic(cfg, "preset=broadwell-riemann\nN=60\ncfl=0.4\neps=0.02\n");
    const auto out = dir() + "bw.csv";
    ASSERT_EQ(cli("run --config " + cfg + " --eps 1 --out " + out), 0);
    const auto csv = ntrelax::parse_solution_csv(ntrelax::read_file(out));
    EXPECT_EQ(csv.rows.size(), 60u);
    EXPECT_EQ(csv.meta.at("eps"), "1");
    EXPECT_EQ(csv.meta.at("model"), "broadwell");
}

TEST(Cli, ConvergenceTable) {
    const auto out = dir() + "conv.csv";
    ASSERT_EQ(cli("convergence --preset jinxin-smooth-wp --cfl 0.3333333333333333 --grids 20,40,80 --eps-list 1e-10 --out " + out), 0);
    const auto text = ntrelax::read_file(out);
    EXPECT_NE(text.find("eps,N,err_u,order_u,err_v,order_v"), std::string::npos);
    EXPECT_NE(text.find("\n1e-10,80,"), std::string::npos);
}

TEST(Cli, PresetsListAndShow) {
    ASSERT_EQ(cli("presets"), 0);
    EXPECT_NE(ntrelax::read_file(dir() + "stdout.txt").find("euler-friction-riemann"), std::string::npos);
    ASSERT_EQ(cli("presets --show euler-friction-riemann"), 0);
    const auto kv = ntrelax::parse_key_values(ntrelax::read_file(dir() + "stdout.txt"));
    EXPECT_EQ(kv.at("t_final"), "2");
}

TEST(Cli, StabilityWritesRegionFiles) {
    ASSERT_EQ(cli("stability --y-max 100 --per-decade 20 --out " + dir() + "cli_"), 0);
    EXPECT_EQ(ntrelax::read_file(dir() + "cli_s1_region.csv").substr(0, 12), "re,im,inside");
    EXPECT_TRUE(std::filesystem::exists(dir() + "cli_phi0_region.csv"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("run --cfl 1.5"), 2);
    EXPECT_EQ(cli("run --preset no-such-preset"), 2);
    EXPECT_EQ(cli("run --bc sideways"), 2);
    EXPECT_EQ(cli("frobnicate"), 2);
    EXPECT_EQ(cli("run --N 40 --out /nonexistent_dir/out.csv"), 4);
    EXPECT_EQ(cli("run --config /nonexistent_dir/x.cfg"), 4);
    EXPECT_EQ(cli("run --preset broadwell-smooth --N 160 --cfl 1 --t-final 3"), 3);
}
