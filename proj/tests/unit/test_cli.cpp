#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace {

struct CliResult {
  int status;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(BDELTA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Cli, DeltaCheckCsv) {
  const CliResult r = run("delta-check --p 7 --r 150 --n 150,151");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.rfind("# bdelta schema=1 command=delta-check\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("# params:"), std::string::npos);
}

TEST(Cli, PreconditionExitCode) {
  EXPECT_EQ(run("delta-check --p 7 --q 7 --m 150 --n 150").status, 2);
  EXPECT_EQ(run("delta-check --p 7 --r 150 --n 150 --no-such-flag").status, 2);
  EXPECT_EQ(run("charsum --kind nonsense").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, TauJson) {
  const CliResult r = run("tau --n-max 20 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "tau");
  EXPECT_EQ(j["rows"][0]["tau_2"], "-24");
  EXPECT_EQ(j["rows"][0]["checksum"], 3340323798LL);
}

TEST(Cli, ConfigFileYieldsToCommandLine) {
  const auto path = std::filesystem::temp_directory_path() / "bdelta_cli_test.cfg";
  std::ofstream(path) << "# defaults for a test\nkind = gauss\nq=11\n";
  const CliResult a = run("charsum --config " + path.string() + " --format json");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(nlohmann::json::parse(a.out)["params"]["q"], "11");
  const CliResult b = run("charsum --config " + path.string() + " --q 13 --format json");
  ASSERT_EQ(b.status, 0) << b.out;
  EXPECT_EQ(nlohmann::json::parse(b.out)["params"]["q"], "13");
  std::filesystem::remove(path);
}
