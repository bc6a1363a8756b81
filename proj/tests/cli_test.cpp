// End-to-end checks of the command-line tool. Takes the tool path as
// argv[1] and a scratch directory as argv[2].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "snbs/snbs.hpp"

namespace {

int failures = 0;

#define CHECK(cond)                                                       \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  "       \
                << #cond << "\n";                                         \
      ++failures;                                                         \
    }                                                                     \
  } while (0)

std::string g_cli;
std::string g_dir;

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = g_cli + " " + args;
  if (!stdout_file.empty()) cmd += " > " + stdout_file;
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : row) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void test_simulate_roundtrip() {
  const std::string f1 = g_dir + "/sim1.csv";
  const std::string f2 = g_dir + "/sim2.csv";
  CHECK(run("simulate --model tar --rho 0.5 --n 100 --seed 7 --out " + f1) ==
        0);
  CHECK(run("simulate --model tar --rho 0.5 --n 100 --seed 7 --out " + f2) ==
        0);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(!slurp(f1).empty());

  // Feeding the simulated file to ci must equal calling the library on
  // the identically seeded series.
  const std::string ci_out = g_dir + "/ci.csv";
  CHECK(run("ci --input " + f1 + " --b 10 --level 0.9 --side lower",
            ci_out) == 0);
  const std::string out = slurp(ci_out);
  const auto row = split_csv_row(out.substr(out.find('\n') + 1));
  CHECK(row.size() == 8);

  snbs::GeneratorConfig cfg{snbs::TarSpec{0.5, 1000}, 100, 7, 0, 0};
  const snbs::TimeSeries series = snbs::generate(cfg);
  const snbs::ConfidenceInterval ci = snbs::confidence_interval(
      series, 10, 0.9, snbs::IntervalSide::LowerOneSided);
  CHECK(row[4] == "-inf");
  CHECK(std::stod(row[5]) == ci.hi);
  CHECK(std::stod(row[6]) == ci.q_lo);
}

void test_ci_hand_value() {
  const std::string f = g_dir + "/tiny.csv";
  write_file(f, "1\n2\n3\n4\n5\n");
  const std::string out_file = g_dir + "/ci2.csv";
  CHECK(run("ci --input " + f + " --b 2 --level 0.5 --side lower",
            out_file) == 0);
  // Hand value for (1,2,3) holds for the 3-point file; the 5-point file
  // just needs to parse and produce a finite bound.
  const std::string out = slurp(out_file);
  CHECK(out.find("side,level,n,b,lo,hi") == 0);

  const std::string f3 = g_dir + "/tiny3.csv";
  write_file(f3, "1\n2\n3\n");
  // n = 3 < max(4, b+1) = 4: precondition violation is an input error.
  CHECK(run("ci --input " + f3 + " --b 2 --level 0.5 --side lower") == 2);
}

void test_error_exit_codes() {
  const std::string bad = g_dir + "/bad.csv";
  write_file(bad, "1.0\n2.0\noops\n4.0\n5.0\n");
  CHECK(run("ci --input " + bad + " --b 2") == 2);

  const std::string constant = g_dir + "/const.csv";
  write_file(constant, "3\n3\n3\n3\n3\n3\n");
  CHECK(run("ci --input " + constant + " --b 3") == 3);

  CHECK(run("ci --input " + g_dir + "/does-not-exist.csv --b 3") == 2);
  CHECK(run("ci --input " + constant + " --b 3 --bogus-flag 1") == 2);
  CHECK(run("nonsense-subcommand") == 2);
}

void test_ecdf() {
  const std::string out_file = g_dir + "/ecdf.csv";
  CHECK(run("ecdf --model a --d 0.25 --n 500 --c 1 --seed 5 --out " +
            out_file) == 0);
  std::ifstream in(out_file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,F");
  std::vector<double> xs, fs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    xs.push_back(std::stod(cells[0]));
    fs.push_back(std::stod(cells[1]));
  }
  // b = floor(sqrt(500)) = 22 so there are n - b + 1 = 479 knots.
  CHECK(xs.size() == 479);
  CHECK(fs.back() == 1.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    CHECK(xs[i] >= xs[i - 1]);
    CHECK(fs[i] >= fs[i - 1]);
  }

  const std::string std_file = g_dir + "/ecdf_std.csv";
  CHECK(run("ecdf --model a --d 0.25 --n 500 --c 1 --seed 5 --standardize "
            "--out " +
            std_file) == 0);
  CHECK(slurp(std_file) != slurp(out_file));
}

void test_advise() {
  const std::string white = g_dir + "/white.csv";
  std::ostringstream acf;
  acf << "0,1.0\n";
  for (int h = 1; h <= 40; ++h) acf << h << ",0.0\n";
  write_file(white, acf.str());

  const std::string out_file = g_dir + "/advise.txt";
  const std::string bounds = g_dir + "/bounds.csv";
  CHECK(run("advise --acf " + white + " --n 1000 --b 31 --out " + bounds,
            out_file) == 0);
  const std::string out = slurp(out_file);
  CHECK(out.find("recommended_b=31") != std::string::npos);
  CHECK(out.find("a3_diagnostic=0.032") != std::string::npos);
  const std::string btab = slurp(bounds);
  CHECK(btab.find("k,m,bound") == 0);

  // Generator-family input path.
  CHECK(run("advise --family plain --d 0.25 --n 400 --b 20 --maxlag 128 "
            "--cutoff 4000 --regime lrd --H 0.75",
            out_file) == 0);
  CHECK(slurp(out_file).find("recommended_b=") != std::string::npos);
}

void test_mc() {
  const std::string out_file = g_dir + "/mc.csv";
  CHECK(run("mc --model a --d -1 --n 64 --c 1 --reps 60 --seed 3 --workers 2 "
            "--out " +
            out_file) == 0);
  std::ifstream in(out_file);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "model,d,n,c,level,reps,lower,upper,stderr,excluded");
  const auto cells = split_csv_row(row);
  CHECK(cells.size() == 10);
  CHECK(cells[0] == "a");
  CHECK(cells[5] == "60");
  const double lower = std::stod(cells[6]);
  CHECK(lower >= 0.0);
  CHECK(lower <= 1.0);

  // Config-file route produces the identical row.
  const std::string cfg_file = g_dir + "/mc.cfg";
  write_file(cfg_file,
             "model=a\nd=-1\nn=64\nc=1\nreps=60\nmaster_seed=3\n"
             "level=0.9\ntrue_mean_mode=analytic\n");
  const std::string out2 = g_dir + "/mc2.csv";
  CHECK(run("mc --config " + cfg_file + " --workers 2 --out " + out2) == 0);
  CHECK(slurp(out_file) == slurp(out2));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_test <path-to-snbs-cli> <scratch-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = argv[2];
  std::filesystem::create_directories(g_dir);

  test_simulate_roundtrip();
  test_ci_hand_value();
  test_error_exit_codes();
  test_ecdf();
  test_advise();
  test_mc();

  if (failures == 0) {
    std::cout << "cli_test: all checks passed\n";
    return 0;
  }
  std::cerr << "cli_test: " << failures << " check(s) failed\n";
  return 1;
}
