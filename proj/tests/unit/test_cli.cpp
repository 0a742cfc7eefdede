#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tccp/cli.hpp"
#include "test_support.hpp"

namespace tccp {
namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p.string();
}

const std::string kA = test::fixture_path('A');

TEST(Cli, AnalyzeReportsCouplerAnharmonicity) {
  auto r = run({"analyze", kA});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows[0], (std::vector<std::string>{"key", "value"}));
  bool found = false;
  for (const auto& row : rows) {
    if (row[0] == "C.alpha_mhz") {
      EXPECT_NEAR(std::stod(row[1]), -361.29, 0.01);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, CsvAndJsonCarryTheSameNumbers) {
  for (const auto& cmd :
       std::vector<std::vector<std::string>>{
           {"analyze", kA},
           {"sweep", kA, "--steps", "5"},
           {"zz", kA, "--flux", "Q2=0.2", "--steps", "3"}}) {
    auto csv_args = cmd, json_args = cmd;
    json_args.insert(json_args.end(), {"--format", "json"});
    auto c = run(csv_args), j = run(json_args);
    ASSERT_EQ(c.code, 0) << c.err;
    ASSERT_EQ(j.code, 0) << j.err;
    auto rows = parse_csv(c.out);
    auto doc = nlohmann::ordered_json::parse(j.out);
    if (cmd[0] == "analyze") {
      ASSERT_EQ(doc.size() + 1, rows.size());
      for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& v = doc.at(rows[i][0]);
        if (v.is_number()) {
          EXPECT_EQ(format_number(v.get<double>()), rows[i][1]) << rows[i][0];
        }
      }
      continue;
    }
    ASSERT_EQ(doc.size() + 1, rows.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& obj = doc[i - 1];
      for (std::size_t k = 0; k < rows[0].size(); ++k) {
        const auto& v = obj.at(rows[0][k]);
        if (v.is_number()) {
          EXPECT_EQ(format_number(v.get<double>()), rows[i][k]);
        } else if (v.is_null()) {
          EXPECT_EQ(rows[i][k], "");
        } else if (v.is_boolean()) {
          EXPECT_EQ(rows[i][k], v.get<bool>() ? "true" : "false");
        }
      }
    }
  }
}

TEST(Cli, Deterministic) {
  auto a = run({"sweep", kA, "--steps", "11"});
  auto b = run({"sweep", kA, "--steps", "11"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SweepSchemaAndSingleStep) {
  auto r = run({"sweep", kA, "--steps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "flux,ejc_ghz,omegac_ghz,g1c_mhz,g2c_mhz,geff_mhz,zz_pert_mhz,"
            "zz_exact_mhz,valid");
}

TEST(Cli, OffpointScalarVariant) {
  auto r = run({"offpoint", kA, "--g12", "9.62", "--gqc", "83.5",
                "--omega-q", "5.59"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[0][1], "omegac_off_ghz");
  EXPECT_NEAR(std::stod(rows[1][1]), 6.36, 0.01);
}

TEST(Cli, ChevronAndCzSchemas) {
  auto c = run({"chevron", kA, "--from", "0.3", "--to", "0.3", "--steps",
                "1", "--delay-steps", "4", "--delay-to", "30", "--levels",
                "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  auto rows = parse_csv(c.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"flux", "delay_ns",
                                               "p_excited"}));
  EXPECT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][2], "1");

  auto z = run({"cz", test::fixture_path('D'), "--omega",
                "Q1=5.11,Q2=5.64,C=6.404", "--gate-omegac", "5.72", "--tune"});
  ASSERT_EQ(z.code, 0) << z.err;
  rows = parse_csv(z.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"cond_phase_rad", "leakage",
                                               "fidelity"}));
  EXPECT_NEAR(std::stod(rows[1][0]), 3.14159265, 0.01);
  EXPECT_GE(std::stod(rows[1][2]), 0.999);
}

TEST(Cli, OutputFile) {
  auto path = (std::filesystem::temp_directory_path() / "tccp_cli_out.csv")
                  .string();
  auto r = run({"sweep", kA, "--steps", "2", "-o", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(parse_csv(ss.str()).size(), 3u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  auto missing = run({"analyze", "/nonexistent/x.net"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_FALSE(missing.err.empty());
  EXPECT_EQ(run({"analyze", kA, "--levels", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", kA, "--flux", "P1=0.1"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", kA, "--flux", "Q1"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep", kA, "--from", "0.3", "--to", "0.1"}).code,
            kExitUsage);
  EXPECT_EQ(run({"analyze", kA, "--format", "xml"}).code, kExitUsage);

  auto bad = temp_file("tccp_bad.net", "node Q1 junction ejb=9GHz\n");
  auto parse = run({"analyze", bad});
  EXPECT_EQ(parse.code, kExitParse);
  EXPECT_NE(parse.err.find("line 1"), std::string::npos);

  // Symmetric SQUID at half a flux quantum has no Josephson energy.
  EXPECT_EQ(run({"analyze", kA, "--flux", "C=0.5"}).code, kExitNumeric);
  EXPECT_EQ(run({"offpoint", kA, "--g12", "0", "--gqc", "83.5", "--omega-q",
                 "5.59"})
                .code,
            kExitNumeric);
}

TEST(Cli, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    std::string cmd = std::string(TCCP_CLI_PATH) + " " + args +
                      " >/dev/null 2>&1";
    int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("analyze " + kA), 0);
  EXPECT_EQ(status("analyze /nonexistent/x.net"), 1);
  EXPECT_EQ(status("analyze " + temp_file("tccp_bad2.net", "cap A B 1fF\n")),
            2);
  EXPECT_EQ(status("analyze " + kA + " --flux C=0.5"), 3);
}

}  // namespace
}  // namespace tccp
