#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir() {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("spcd_cli_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

// run the binary from inside dir so default output paths land there
CliResult run_cli(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd " + dir.string() + " && " + SPCD_CLI_PATH + " " +
                          args + " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  CliResult result;
  if (WIFEXITED(status)) result.code = WEXITSTATUS(status);
  result.out = slurp(dir / "stdout.txt");
  result.err = slurp(dir / "stderr.txt");
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double value_after(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size()));
}

}  // namespace

TEST_CASE("solve writes the nodal table with the pinned header") {
  const fs::path dir = fresh_dir();
  const CliResult r = run_cli(
      dir, "solve --eps 1 --n 16 --mesh uniform --scheme central --out s.csv");
  CHECK(r.code == 0);
  CHECK(r.out.find("max_norm_error = ") != std::string::npos);
  CHECK(r.out.find("solve_time_s = ") != std::string::npos);

  const auto lines = lines_of(slurp(dir / "s.csv"));
  REQUIRE(lines.size() == 18);  // header + 17 nodes
  CHECK(lines[0] == "x,u_numeric,u_exact,abs_error");
  CHECK(fields_of(lines[1])[0] == "0");
  CHECK(fields_of(lines[1])[1] == "0");
  const auto last = fields_of(lines[17]);
  CHECK(last[0] == "1");
  CHECK(last[1] == "0");
  CHECK(last[3] == "0");
}

TEST_CASE("solve reports the expected error level in the resolved regime") {
  const fs::path dir = fresh_dir();
  const CliResult r = run_cli(
      dir, "solve --eps 1 --n 256 --mesh uniform --scheme central");
  REQUIRE(r.code == 0);
  const double err = value_after(r.out, "max_norm_error = ");
  CHECK(err >= 2.28e-07 / 3.0);
  CHECK(err <= 2.28e-07 * 3.0);
  CHECK(fs::exists(dir / "solution.csv"));  // default output name
}

TEST_CASE("identical study invocations produce byte-identical files") {
  const fs::path dir = fresh_dir();
  const std::string common =
      "study --eps 1e-2 1e-4 --n 8 16 32 --mesh shishkin --scheme upwind";
  CHECK(run_cli(dir, common + " --out a.csv").code == 0);
  CHECK(run_cli(dir, common + " --out b.csv").code == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.csv"));

  const auto lines = lines_of(a);
  REQUIRE(lines.size() == 7);  // header + 2 eps values x 3 counts
  CHECK(lines[0] == "epsilon,N,max_error,order,theory_bound");

  const auto first = fields_of(lines[1]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == "0.01");
  CHECK(first[1] == "8");
  CHECK(first[3].empty());        // no doubling partner yet
  CHECK(!first[4].empty());       // layer-adapted bound present

  const auto second = fields_of(lines[2]);
  CHECK(second[1] == "16");
  CHECK(!second[3].empty());      // order appears after the first doubling
  const double order = std::stod(second[3]);
  CHECK(order > 0.0);
  CHECK(order < 2.5);
}

TEST_CASE("usage errors exit with code 2 and leave no output file") {
  const fs::path dir = fresh_dir();
  const std::vector<std::string> bad = {
      "solve --eps 1e-8 --n 255 --mesh shishkin --scheme upwind --out x.csv",
      "solve --eps 1e-8 --n 256 --mesh shishkin --scheme central --out x.csv",
      "solve --eps 0 --n 16 --mesh uniform --scheme upwind --out x.csv",
      "solve --eps 1.5 --n 16 --mesh uniform --scheme upwind --out x.csv",
      "solve --eps 0.1 --n 1 --mesh uniform --scheme upwind --out x.csv",
      "solve --eps 0.1 --n 16 --mesh uniform --scheme upwind --alpha 1.5 "
      "--out x.csv",
      "solve --eps 0.1 --n 16 --mesh uniform --scheme upwind --sigma0 0 "
      "--out x.csv",
      "study --eps 0.1 --n 32 16 --mesh uniform --scheme upwind --out x.csv",
      "study --eps 0.1 --mesh uniform --scheme upwind --out x.csv",
      "bounds --n 256 --const 0 --out x.csv",
      "bounds --mesh uniform --n 10 20 --eps 0.01 --out x.csv",
      "bounds --mesh uniform --n 10 --out x.csv",
      "solve --eps 0.1 --n 16 --mesh hexagonal --scheme upwind --out x.csv",
      "solve --eps 0.1 --n 16 --mesh uniform --scheme upwind --format yaml "
      "--out x.csv",
      "nonsense --eps 0.1",
      "",
  };
  for (const std::string& args : bad) {
    INFO("args: " << args);
    CHECK(run_cli(dir, args).code == 2);
    CHECK_FALSE(fs::exists(dir / "x.csv"));
  }
}

TEST_CASE("computation failures exit with code 1") {
  const fs::path dir = fresh_dir();
  // epsilon this small drives the single pivot under the safety floor
  const CliResult r = run_cli(
      dir, "solve --eps 1e-308 --n 2 --mesh uniform --scheme central "
           "--out x.csv");
  CHECK(r.code == 1);
  CHECK(r.err.find("pivot") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "x.csv"));
}

TEST_CASE("bounds tabulates the layer-adapted envelope") {
  const fs::path dir = fresh_dir();
  const CliResult r =
      run_cli(dir, "bounds --n 256 512 --const 1 --out env.csv");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(slurp(dir / "env.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "N,shishkin_bound");
  const auto row = fields_of(lines[1]);
  CHECK(row[0] == "256");
  CHECK_THAT(std::stod(row[1]),
             Catch::Matchers::WithinRel(0.0216608493925, 1e-10));
  CHECK_THAT(std::stod(fields_of(lines[2])[1]),
             Catch::Matchers::WithinRel(0.0121842277833, 1e-10));
}

TEST_CASE("bounds tabulates the uniform-mesh envelope over the nodes") {
  const fs::path dir = fresh_dir();
  const CliResult r = run_cli(
      dir, "bounds --mesh uniform --n 10 --eps 0.01 --const 1 --out u.csv");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(slurp(dir / "u.csv"));
  REQUIRE(lines.size() == 12);  // header + 11 nodes
  CHECK(lines[0] == "x,upwind_bound");
  // at x = 1 the envelope saturates at C * (h + 1)
  const auto last = fields_of(lines[11]);
  CHECK(last[0] == "1");
  CHECK_THAT(std::stod(last[1]), Catch::Matchers::WithinRel(1.1, 1e-12));
}

TEST_CASE("table format writes an aligned text report") {
  const fs::path dir = fresh_dir();
  const CliResult r = run_cli(
      dir, "study --eps 1e-4 --n 8 16 --mesh shishkin --scheme upwind "
           "--format table");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "study.txt"));  // table default switches extension
  const std::string text = slurp(dir / "study.txt");
  CHECK(text.find("max-norm errors") != std::string::npos);
  CHECK(text.find("observed orders") != std::string::npos);
  CHECK(text.find("16") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const fs::path dir = fresh_dir();
  CHECK(run_cli(dir, "--help").code == 0);
  CHECK(run_cli(dir, "solve --help").code == 0);
}
