#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "semirel/config.hpp"
#include "table_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result sim(const std::string& args) {
    const std::string cmd = std::string(SEMIREL_SIM_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir =
        fs::temp_directory_path() / ("semirel_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, PrintConfigIsCanonicalAndRoundTrips) {
    const Result r = sim("--print-config --z 0.1 --set x0=6.3 --set center_units=physical");
    ASSERT_EQ(r.code, 0);
    const semirel::RunConfig c = semirel::parse_config(r.out);
    EXPECT_EQ(c.z, 0.1);
    EXPECT_EQ(c.x0, 6.3);
    EXPECT_EQ(semirel::serialize_config(c), r.out);
}

TEST(Cli, FlagsOverrideConfigFile) {
    const fs::path dir = scratch("override");
    {
        std::ofstream f(dir / "run.cfg");
        f << "z = 5\nseed = 3\n";
    }
    const Result r = sim("--print-config --config " + (dir / "run.cfg").string() + " --z 7");
    ASSERT_EQ(r.code, 0);
    const semirel::RunConfig c = semirel::parse_config(r.out);
    EXPECT_EQ(c.z, 7.0);
    EXPECT_EQ(c.seed, 3u);
    fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(sim("--version").code, 0);
    EXPECT_EQ(sim("--no-such-flag").code, 2);
    EXPECT_EQ(sim("--set bogus=1 --print-config").code, 2);
    EXPECT_EQ(sim("--z -1").code, 2);
    EXPECT_EQ(sim("--mode single").code, 2);
    EXPECT_EQ(sim("--config /nonexistent.cfg").code, 2);

    const fs::path dir = scratch("codes");
    const std::string out = " --out-dir " + dir.string();
    EXPECT_EQ(sim("--z 0.1 --x0 5 --n-traj 10 --dt 0.1 --t-end 1 --set fp_max_iter=1" + out).code, 3);
    const Result ok = sim("--mode single --initial delta --z 0.1 --x0 2 --t-end 2" + out);
    EXPECT_EQ(ok.code, 0);
    const auto t = table_io::read_csv(dir / "trajectory.csv");
    EXPECT_EQ(t.rows.size(), 21u);
    fs::remove_all(dir);
}
