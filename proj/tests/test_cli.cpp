#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "coxdiv/io/config.hpp"
#include "coxdiv/io/csv.hpp"
#include "coxdiv/io/svg.hpp"
#include "coxdiv/oracles/free_group.hpp"
#include "coxdiv/oracles/grid.hpp"
#include "run.hpp"

using namespace coxdiv;
namespace fs = std::filesystem;

namespace {

struct Shell {
  int status;
  std::string output;
};

Shell shell(const std::string& command) {
  Shell r{0, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string tool() { return COXDIV_BINARY; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("coxdiv_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256(const std::string& data) {
  unsigned char d[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_Digest(data.data(), data.size(), d, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(d[i]);
  return hex.str();
}

DivergenceQuery query(int n) {
  DivergenceQuery q;
  q.n = n;
  return q;
}

}  // namespace

TEST(Csv, QuotingRoundTrip) {
  std::mt19937_64 rng(3);
  const std::string alphabet = "ab,\"\n\r x";
  std::vector<csv::Row> rows;
  for (int r = 0; r < 200; ++r) {
    csv::Row row;
    int cells = 1 + static_cast<int>(rng() % 5);
    for (int c = 0; c < cells; ++c) {
      std::string cell;
      for (int k = static_cast<int>(rng() % 6); k > 0; --k) cell += alphabet[rng() % alphabet.size()];
      row.push_back(cell);
    }
    if (row.size() == 1 && row[0].empty()) row[0] = "x";
    rows.push_back(row);
  }
  EXPECT_EQ(csv::parse(csv::format(rows)), rows);
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_THROW(csv::parse("\"open\n"), Error);
  EXPECT_THROW(csv::parse("a\"b\n"), Error);
}

TEST(Csv, DivergenceRoundTrip) {
  std::vector<DivergenceReport> reports{divergence_function(GridOracle(2), query(4)),
                                        divergence_function(FreeGroupOracle(2), query(3))};
  auto sampled = query(5);
  sampled.mode = Mode::sampled;
  sampled.pair_count = 50;
  reports.push_back(divergence_function(GridOracle(3), sampled));
  for (const auto& report : reports) {
    const std::string text = csv::divergence(report);
    auto rows = csv::parse_divergence(text);
    ASSERT_EQ(rows.size(), report.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& a = rows[i];
      const auto& b = report.rows[i];
      EXPECT_EQ(a.n, b.n);
      EXPECT_EQ(a.unbounded, b.unbounded);
      if (!b.unbounded) EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(a.witness_a, b.witness_a);
      EXPECT_EQ(a.witness_b, b.witness_b);
      EXPECT_EQ(a.witness_c, b.witness_c);
      EXPECT_EQ(a.pairs_scanned, b.pairs_scanned);
      EXPECT_EQ(a.status, b.status);
    }
    EXPECT_EQ(csv::divergence(report), text);
  }
  auto grid = csv::parse(csv::divergence(reports[0]));
  EXPECT_EQ(grid[4][0], "4");
  EXPECT_EQ(grid[4][1], "8");
}

TEST(Csv, OtherSchemasRoundTrip) {
  std::vector<csv::PencilCsvRow> pencil{{1, 1, "s1"}, {2, 1, "s1s2"}, {3, 2, "s1s2s3"}};
  EXPECT_EQ(csv::parse_pencil(csv::pencil(pencil)), pencil);
  std::vector<csv::PwtCsvRow> pwt{{"1", 2, 40}, {"s1s3s1", std::nullopt, 0}};
  EXPECT_EQ(csv::parse_pwt(csv::pwt(pwt)), pwt);
  std::vector<csv::CountCsvRow> counts{{0, 1}, {1, 3}, {2, 6}};
  EXPECT_EQ(csv::parse_counts(csv::counts(counts)), counts);
  EXPECT_THROW(csv::parse_pencil("x,y,z\n"), Error);
  EXPECT_THROW(csv::parse_counts("length,count\n1\n"), Error);
  EXPECT_THROW(csv::parse_counts("length,count\n1,x\n"), Error);
}

TEST(Config, Parsing) {
  auto c = parse_config("# top\ncommand = pencil\n\n[system]\nname = A2  # trailing\n[scan]\nradius=9\n");
  EXPECT_EQ(c.at("command"), "pencil");
  EXPECT_EQ(c.at("system.name"), "A2");
  EXPECT_EQ(c.at("scan.radius"), "9");
  EXPECT_EQ(parse_config(format_config(c)), c);
  EXPECT_THROW(parse_config("[open\n"), Error);
  EXPECT_THROW(parse_config("novalue\n"), Error);
  EXPECT_THROW(parse_config("a = 1\na = 2\n"), Error);
}

TEST(Config, Rationals) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -3 "), Rational(-3));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  for (const char* bad : {"", "1/0", "a", "1/2/3", "0.", "1e3", "--1", "1/-2"}) EXPECT_THROW(parse_rational(bad), Error) << bad;
  EXPECT_EQ(format_rational(Rational(3, 4)), "3/4");
  EXPECT_EQ(format_rational(Rational(5)), "5");
}

TEST(Svg, Rendering) {
  DivergenceReport one;
  one.oracle = "test";
  DivergenceRow row;
  row.n = 1;
  row.value = 1;
  one.rows.push_back(row);
  auto s = divergence_svg(one);
  EXPECT_EQ(s.find("<svg"), 0u);
  EXPECT_NE(s.find("class=\"axes\""), std::string::npos);
  std::size_t circles = 0;
  for (auto p = s.find("<circle"); p != std::string::npos; p = s.find("<circle", p + 1)) ++circles;
  EXPECT_EQ(circles, 1u);
  EXPECT_EQ(s.find("class=\"gap\""), std::string::npos);

  auto free = divergence_function(FreeGroupOracle(2), query(4));
  auto g = divergence_svg(free);
  EXPECT_NE(g.find("class=\"gap\""), std::string::npos);
  EXPECT_EQ(g, divergence_svg(free));

  DivergenceReport empty;
  EXPECT_THROW(divergence_svg(empty), Error);
}

TEST(Cli, GridExample) {
  auto dir = scratch("grid");
  auto r = shell(tool() + " divergence --oracle grid --d 2 --n 4 --delta 1/2 --lambda 0 --out-dir " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  auto rows = csv::parse(slurp(dir / "divergence.csv"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[4][0], "4");
  EXPECT_EQ(rows[4][1], "8");
  EXPECT_TRUE(fs::exists(dir / "divergence.svg"));
  // manifest digests match the files
  auto manifest = slurp(dir / "divergence.manifest.json");
  EXPECT_NE(manifest.find(sha256(slurp(dir / "divergence.csv"))), std::string::npos);
  EXPECT_NE(manifest.find(sha256(slurp(dir / "divergence.svg"))), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  auto dir = scratch("codes");
  const std::string out = " --out-dir " + dir.string();
  auto bad_delta = shell(tool() + " divergence --oracle grid --n 4 --delta 0" + out);
  EXPECT_EQ(bad_delta.status, 2);
  EXPECT_NE(bad_delta.output.find("(0,1)"), std::string::npos);
  EXPECT_EQ(shell(tool() + " divergence --oracle grid --n 4 --delta x" + out).status, 2);
  EXPECT_EQ(shell(tool() + " divergence --oracle grid --n 4 --lambda -1" + out).status, 2);
  EXPECT_EQ(shell(tool() + " divergence --oracle nope --n 4" + out).status, 2);
  EXPECT_EQ(shell(tool() + " pencil --system A2" + out).status, 2);
  EXPECT_EQ(shell(tool() + " pencil --system unknown" + out).status, 2);
  EXPECT_EQ(shell(tool() + " frobnicate").status, 2);
  EXPECT_EQ(shell("COXDIV_MEMORY_MB=1 " + tool() + " divergence --oracle sl2 --n 4" + out).status, 3);
  EXPECT_EQ(shell(tool() + " divergence --oracle sl2 --n 3 --degree-bound 1" + out).status, 3);
  EXPECT_EQ(shell(tool() + " divergence --oracle grid --n 4 --horizon-factor 1" + out).status, 3);
  fs::remove_all(dir);
}

TEST(Cli, PencilAndConfig) {
  auto dir = scratch("pencil");
  auto r = shell(tool() + " pencil --system infinite-dihedral --radius 8 --out-dir " + dir.string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("C_hat = 1"), std::string::npos);
  EXPECT_EQ(csv::parse_pencil(slurp(dir / "pencil.csv")).size(), 8u);

  std::ofstream(dir / "bad.conf") << "command = pencil\n[system]\nname = affine-A2\n[scan]\nradius = 4\nspeed = 3\n";
  EXPECT_EQ(shell(tool() + " run " + (dir / "bad.conf").string()).status, 2);
  std::ofstream(dir / "good.conf") << "command = automaton-stats\n[system]\nname = affine-A2\n[stats]\nmax_length = 4\n"
                                   << "[output]\ndir = " << dir.string() << "\n";
  ASSERT_EQ(shell(tool() + " run " + (dir / "good.conf").string()).status, 0);
  auto counts = csv::parse_counts(slurp(dir / "automaton-stats.csv"));
  ASSERT_EQ(counts.size(), 5u);
  EXPECT_EQ(counts[2].count, 6u);
  // flags override the file
  ASSERT_EQ(shell(tool() + " automaton-stats --config " + (dir / "good.conf").string() + " --max-length 2").status, 0);
  EXPECT_EQ(csv::parse_counts(slurp(dir / "automaton-stats.csv")).size(), 3u);
  fs::remove_all(dir);
}

TEST(Cli, RerunIsByteIdentical) {
  auto a = scratch("rerun_a"), b = scratch("rerun_b");
  const std::string args = " divergence --oracle coxeter --system affine-A2 --n 4 --mode sampled --pairs 200 --seed 9";
  ASSERT_EQ(shell(tool() + args + " --workers 1 --out-dir " + a.string()).status, 0);
  ASSERT_EQ(shell(tool() + args + " --workers 8 --out-dir " + b.string()).status, 0);
  EXPECT_EQ(slurp(a / "divergence.csv"), slurp(b / "divergence.csv"));
  EXPECT_EQ(slurp(a / "divergence.svg"), slurp(b / "divergence.svg"));
  fs::remove_all(a);
  fs::remove_all(b);
}
