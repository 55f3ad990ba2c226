#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "horizonkit/cli.hpp"
#include "test_support.hpp"

using horizonkit::run_cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

struct EnvSeed {
  explicit EnvSeed(const char* value) {
    setenv(horizonkit::kSeedEnvVar, value, 1);
  }
  ~EnvSeed() { unsetenv(horizonkit::kSeedEnvVar); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage problems exit with code 1, help with 0") {
  CHECK_EQ(run_cli({"--help"}), 0);
  CHECK_EQ(run_cli({}), 1);
  CHECK_EQ(run_cli({"frobnicate"}), 1);
  CHECK_EQ(run_cli({"analyze", "--bogus"}), 1);
  CHECK_EQ(run_cli({"analyze"}), 1);  // --in is required
  CHECK_EQ(run_cli({"gen", "--scenario", "paper"}), 1);  // --out-dir required
  CHECK_EQ(run_cli({"horizon", "--in", "x.csv", "--tiers", "0.9,0.5,0.95"}),
           1);
  CHECK_EQ(run_cli({"horizon", "--in", "x.csv", "--tiers", "a,b,c"}), 1);
}

TEST_CASE("input and contract problems exit with code 2") {
  testutil::TempDir dir("cli_code2");
  CHECK_EQ(run_cli({"analyze", "--in", dir.file("absent.csv")}), 2);
  CHECK_EQ(run_cli({"simulate", "--config", dir.file("absent.cfg")}), 2);

  const std::string short_csv = dir.file("short.csv");
  write_file(short_csv, "t,x0\n1,1\n2,2\n3,3\n");
  CHECK_EQ(run_cli({"analyze", "--in", short_csv,
                    "--out", dir.file("i.csv"),
                    "--summary-out", dir.file("s.csv")}),
           2);

  const std::string gap_csv = dir.file("gap.csv");
  write_file(gap_csv, "t,x0\n1,1\n2,2\n4,4\n5,5\n");
  CHECK_EQ(run_cli({"analyze", "--in", gap_csv,
                    "--out", dir.file("i.csv"),
                    "--summary-out", dir.file("s.csv")}),
           2);

  const std::string bad_cfg = dir.file("bad.cfg");
  write_file(bad_cfg, "n_params = 11\n");
  CHECK_EQ(run_cli({"simulate", "--config", bad_cfg,
                    "--out", dir.file("t.csv")}),
           2);
}

TEST_CASE("an analysis with no usable variance exits with code 3") {
  testutil::TempDir dir("cli_code3");
  const std::string flat = dir.file("flat.csv");
  write_file(flat, "t,x0\n1,5\n2,5\n3,5\n4,5\n5,5\n6,5\n7,5\n8,5\n");
  CHECK_EQ(run_cli({"analyze", "--in", flat,
                    "--out", dir.file("i.csv"),
                    "--summary-out", dir.file("s.csv")}),
           3);
}

TEST_CASE("gen writes a config and trajectory that rerun identically") {
  testutil::TempDir dir("cli_gen");
  const std::string d1 = dir.file("one");
  const std::string d2 = dir.file("two");
  REQUIRE_EQ(run_cli({"gen", "--scenario", "paper", "--out-dir", d1}), 0);
  REQUIRE_EQ(run_cli({"gen", "--scenario", "paper", "--out-dir", d2}), 0);
  CHECK(file_exists(d1 + "/scenario.cfg"));
  CHECK(file_exists(d1 + "/trajectory.csv"));
  CHECK_EQ(read_file(d1 + "/scenario.cfg"), read_file(d2 + "/scenario.cfg"));
  CHECK_EQ(read_file(d1 + "/trajectory.csv"),
           read_file(d2 + "/trajectory.csv"));
  // "reference" is an alias for the same bundled scenario.
  const std::string d3 = dir.file("three");
  REQUIRE_EQ(run_cli({"gen", "--scenario", "reference", "--out-dir", d3}), 0);
  CHECK_EQ(read_file(d1 + "/trajectory.csv"),
           read_file(d3 + "/trajectory.csv"));
  CHECK_EQ(run_cli({"gen", "--scenario", "martian", "--out-dir", d1}), 2);
}

TEST_CASE("simulate reruns a generated config bit for bit") {
  testutil::TempDir dir("cli_sim");
  const std::string gen_dir = dir.file("gen");
  REQUIRE_EQ(run_cli({"gen", "--out-dir", gen_dir}), 0);
  const std::string out = dir.file("rerun.csv");
  REQUIRE_EQ(run_cli({"simulate", "--config", gen_dir + "/scenario.cfg",
                      "--out", out}),
             0);
  CHECK_EQ(read_file(out), read_file(gen_dir + "/trajectory.csv"));
}

TEST_CASE("the analyze-then-horizon pipeline works from files alone") {
  testutil::TempDir dir("cli_pipeline");
  const std::string gen_dir = dir.file("gen");
  REQUIRE_EQ(run_cli({"gen", "--out-dir", gen_dir}), 0);
  const std::string ind = dir.file("indicator.csv");
  const std::string sum = dir.file("summary.csv");
  REQUIRE_EQ(run_cli({"analyze", "--in", gen_dir + "/trajectory.csv",
                      "--out", ind, "--summary-out", sum,
                      "--relative-base"}),
             0);
  CHECK(file_exists(ind));
  CHECK(file_exists(sum));
  CHECK(file_exists(dir.file("indicator.relative.csv")));

  const std::string hor = dir.file("horizon.txt");
  REQUIRE_EQ(run_cli({"horizon", "--in", sum, "--out", hor}), 0);
  const std::string text = read_file(hor);
  CHECK_NE(text.find("short_k:"), std::string::npos);
  CHECK_NE(text.find("medium_k:"), std::string::npos);
  CHECK_NE(text.find("long_k:"), std::string::npos);
  CHECK_NE(text.find("W[1]: undefined"), std::string::npos);

  // Feeding the full indicator instead of the summary reaches the same
  // depths (fractions may differ in the last digits from file rounding).
  const std::string hor2 = dir.file("horizon2.txt");
  REQUIRE_EQ(run_cli({"horizon", "--in", ind, "--out", hor2}), 0);
  const std::string text2 = read_file(hor2);
  CHECK_EQ(text.substr(0, text.find("short_fraction")),
           text2.substr(0, text2.find("short_fraction")));
}

TEST_CASE("report emits the complete artifact set deterministically") {
  testutil::TempDir dir("cli_report");
  const std::string d1 = dir.file("one");
  const std::string d2 = dir.file("two");
  REQUIRE_EQ(run_cli({"report", "--scenario", "paper", "--out-dir", d1}), 0);
  REQUIRE_EQ(run_cli({"report", "--scenario", "paper", "--out-dir", d2}), 0);
  const char* names[] = {"scenario.cfg",   "trajectory.csv",
                         "indicator.csv",  "summary.csv",
                         "horizon.txt",    "peaks.txt",
                         "oscillation.txt", "classification.csv"};
  for (const char* name : names) {
    CHECK(file_exists(d1 + "/" + name));
    CHECK_EQ(read_file(d1 + "/" + name), read_file(d2 + "/" + name));
  }
  const std::string horizon = read_file(d1 + "/horizon.txt");
  CHECK_NE(horizon.find("long_k"), std::string::npos);
}

TEST_CASE("report accepts a pre-computed trajectory file") {
  testutil::TempDir dir("cli_report_in");
  const std::string gen_dir = dir.file("gen");
  REQUIRE_EQ(run_cli({"gen", "--out-dir", gen_dir}), 0);
  const std::string out = dir.file("out");
  REQUIRE_EQ(run_cli({"report", "--in", gen_dir + "/trajectory.csv",
                      "--out-dir", out}),
             0);
  CHECK(file_exists(out + "/horizon.txt"));
  CHECK(file_exists(out + "/peaks.txt"));
  // No scenario was built, so no config is echoed.
  CHECK_FALSE(file_exists(out + "/scenario.cfg"));
}

TEST_CASE("report rejects a peak depth outside the computed grid") {
  testutil::TempDir dir("cli_peak_depth");
  CHECK_EQ(run_cli({"report", "--scenario", "paper",
                    "--out-dir", dir.file("out"),
                    "--peak-depth", "50"}),
           2);
}

TEST_CASE("the seed flag beats the environment which beats the config") {
  testutil::TempDir dir("cli_seed");
  {
    EnvSeed env("7");
    const std::string d1 = dir.file("env");
    REQUIRE_EQ(run_cli({"gen", "--out-dir", d1}), 0);
    CHECK_NE(read_file(d1 + "/scenario.cfg").find("seed = 7"),
             std::string::npos);
    const std::string d2 = dir.file("flag");
    REQUIRE_EQ(run_cli({"gen", "--seed", "9", "--out-dir", d2}), 0);
    CHECK_NE(read_file(d2 + "/scenario.cfg").find("seed = 9"),
             std::string::npos);
  }
  {
    EnvSeed env("not-a-number");
    CHECK_EQ(run_cli({"gen", "--out-dir", dir.file("bad")}), 2);
  }
  const std::string d3 = dir.file("config");
  REQUIRE_EQ(run_cli({"gen", "--out-dir", d3}), 0);
  CHECK_NE(read_file(d3 + "/scenario.cfg").find("seed = 42"),
           std::string::npos);
}

TEST_CASE("different seeds change the noise but not the format") {
  testutil::TempDir dir("cli_seed_diff");
  const std::string d1 = dir.file("a");
  const std::string d2 = dir.file("b");
  REQUIRE_EQ(run_cli({"gen", "--seed", "1", "--out-dir", d1}), 0);
  REQUIRE_EQ(run_cli({"gen", "--seed", "2", "--out-dir", d2}), 0);
  const std::string t1 = read_file(d1 + "/trajectory.csv");
  const std::string t2 = read_file(d2 + "/trajectory.csv");
  CHECK_NE(t1, t2);
  CHECK_EQ(t1.substr(0, t1.find('\n')), t2.substr(0, t2.find('\n')));
}

}  // TEST_SUITE
