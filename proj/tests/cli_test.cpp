#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperturan/cli.hpp"

using namespace hyperturan;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperturan_cli_test_" + name);
}

} // namespace

TEST(Cli, FormulasTable) {
  const CliResult r = run({"formulas", "--n", "8..9"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n\tp3\tt3\tb3\tt3r(4)\tc_fano\tq_fano\n"
                   "8\t48\t18\t30\t32\t30\t8\n"
                   "9\t70\t27\t45\t44\t54\t4\n");
  const CliResult small = run({"formulas", "--n", "6"});
  EXPECT_EQ(small.out, "n\tp3\tt3\tb3\tt3r(4)\tc_fano\tq_fano\n6\t18\t8\t12\t12\t-\t-\n");
  EXPECT_EQ(run({"formulas", "--n", "9..8"}).code, 1);
  EXPECT_EQ(run({"formulas", "--n", "a..9"}).code, 1);
}

TEST(Cli, FormulasJson) {
  const CliResult r = run({"formulas", "--n", "7", "--json"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j[0]["c_fano"], 6);
  EXPECT_TRUE(j[0]["q_fano"].is_null());
}

TEST(Cli, GenWritesEdgeList) {
  const CliResult r = run({"gen", "--spec", "p3:n=8+zero2:q=4"});
  ASSERT_EQ(r.code, 0);
  const TripleSystem h = parse_edge_list(r.out);
  EXPECT_EQ(h.edge_count(), 52u);
  const auto path = temp_file("gen.u3");
  EXPECT_EQ(run({"gen", "--spec", "t3:n=6", "-o", path.string()}).code, 0);
  EXPECT_EQ(read_edge_list_file(path.string()).edge_count(), 8u);
  std::filesystem::remove(path);
}

TEST(Cli, CountFromFileAndSpec) {
  const auto path = temp_file("k7.u3");
  write_edge_list_file(path.string(), TripleSystem::complete(7));
  const CliResult r = run({"count", "--pattern", "fano", "--input", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["total_copies"], 30);
  EXPECT_EQ(j["aut"], 168);
  EXPECT_FALSE(j.contains("millis"));
  std::filesystem::remove(path);

  const CliResult e = run({"count", "--pattern", "fano", "--spec", "p3:n=8+zero2:q=1", "--per-edge"});
  ASSERT_EQ(e.code, 0);
  const Json je = Json::parse(e.out);
  EXPECT_EQ(je["total_copies"], 30);
  EXPECT_EQ(je["per_edge"].size(), 49u);
}

TEST(Cli, OutputIsReproducibleAcrossWorkers) {
  const CliResult a = run({"count", "--pattern", "f5", "--spec", "t3:n=9+partite:q=1", "--per-vertex"});
  const CliResult b = run({"count", "--pattern", "f5", "--spec", "t3:n=9+partite:q=1", "--per-vertex", "--workers", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CExactSearchAudit) {
  const CliResult c = run({"cexact", "--pattern", "fano", "--n", "9"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(Json::parse(c.out)["c_exact"], 54);
  const CliResult s = run({"search", "--n", "5", "--pattern", "f5,k4minus"});
  ASSERT_EQ(s.code, 0);
  const Json js = Json::parse(s.out);
  EXPECT_EQ(js["best_size"], 4);
  EXPECT_EQ(js["proved_optimal"], true);
  const CliResult a = run({"audit", "--pattern", "fano", "--spec", "p3:n=8+zero2:q=2"});
  ASSERT_EQ(a.code, 0);
  const Json ja = Json::parse(a.out);
  EXPECT_EQ(ja["total_copies"], 60);
  EXPECT_EQ(ja["margin"], 0);
}

TEST(Cli, AuditConfigFile) {
  const auto path = temp_file("audit.cfg");
  {
    std::ofstream f(path);
    f << "# sharpness checks\n\np3:n=8+zero2:q=1\np3:n=8+zero2:q=3\n";
  }
  const CliResult r = run({"audit", "--pattern", "fano", "--config", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["total_copies"], 90);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"count", "--spec", "p3:n=8"}).code, 2); // missing --pattern
  EXPECT_EQ(run({"count", "--pattern", "nosuch", "--spec", "p3:n=8"}).code, 1);
  EXPECT_EQ(run({"gen", "--spec", "p3:n=8+zero2:q=99"}).code, 1);
  EXPECT_EQ(run({"gen", "--spec", "t3:n=12+f5cex:eps=1/2"}).code, 1);
  EXPECT_EQ(run({"count", "--pattern", "f5", "--input", "/nonexistent/file"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_NE(run({"--help"}).out.find("formulas"), std::string::npos);
}
