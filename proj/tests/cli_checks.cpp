// End-to-end checks against the built command line tool. argv[1] is the
// binary path; every run goes through the real argument parser and exit
// codes, writing reports into a scratch directory.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli;
std::string scratch;
int failures = 0;

void expect(bool cond, const std::string& what) {
  std::printf("[%s] %s\n", cond ? "ok" : "FAIL", what.c_str());
  if (!cond) ++failures;
}

int run(const std::string& args) {
  const std::string cmd = cli + " " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// reports are deterministic apart from the trailing wall-time column
std::string drop_last_column(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, out;
  while (std::getline(is, line)) {
    const auto pos = line.rfind(',');
    out += (pos == std::string::npos ? line : line.substr(0, pos)) + "\n";
  }
  return out;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_checks <path-to-cli>\n");
    return 2;
  }
  cli = argv[1];
  scratch = std::filesystem::temp_directory_path() /
            ("cli_checks_" + std::to_string(::getpid()));
  std::filesystem::create_directories(scratch);

  // passing run and exit code 0
  expect(run("car-check > /dev/null") == 0, "car-check defaults exit 0");

  // determinism: identical config gives identical csv apart from wall time
  const std::string out_a = scratch + "/a.csv";
  const std::string out_b = scratch + "/b.csv";
  expect(run("sylvester trials=6 dim=8 --seed 11 --out " + out_a) == 0, "first seeded run");
  expect(run("sylvester trials=6 dim=8 --seed 11 --out " + out_b) == 0, "second seeded run");
  const std::string a = slurp(out_a);
  const std::string b = slurp(out_b);
  expect(!a.empty() && drop_last_column(a) == drop_last_column(b),
         "seeded reruns byte-identical apart from wall time");
  expect(a.find('\r') == std::string::npos, "csv uses plain LF endings");
  expect(a.rfind("trial,residual,pass,wall_time_ms", 0) == 0, "csv header row in place");
  expect(count_lines(a) == 7, "one row per trial plus header");

  // a different seed changes the measured cells
  const std::string out_c = scratch + "/c.csv";
  expect(run("sylvester trials=6 dim=8 --seed 12 --out " + out_c) == 0, "third seeded run");
  expect(drop_last_column(slurp(out_c)) != drop_last_column(a), "seed change shows up in rows");

  // exit 1: an invariant made unreachable by a zero tolerance
  expect(run("sylvester --tol 0 > /dev/null 2>&1") == 1, "impossible tolerance exits 1");

  // exit 2: config errors of each flavor
  expect(run("car-check bogus=1 > /dev/null 2>&1") == 2, "unknown key exits 2");
  expect(run("no-such-experiment > /dev/null 2>&1") == 2, "unknown experiment exits 2");
  expect(run("car-check --format yaml > /dev/null 2>&1") == 2, "unknown format exits 2");
  expect(run("--frobnicate > /dev/null 2>&1") == 2, "unknown flag exits 2");

  // exit 3: the growth ladder resource guard
  expect(run("pisier-growth ladder=8,14,8 > /dev/null 2>&1") == 3,
         "oversized ladder exits 3");

  // --list names every experiment
  const std::string list_path = scratch + "/list.txt";
  expect(run("--list > " + list_path) == 0, "--list exits 0");
  const std::string listing = slurp(list_path);
  for (const char* name : {"delta-bound", "dlog-bound", "z-profile", "toeplitz-hankel",
                           "xi-counterexample", "model-space", "decompose", "car-check",
                           "pisier-growth", "omega-witness", "sylvester"})
    expect(listing.find(name) != std::string::npos, std::string("listing covers ") + name);

  // json mirrors the csv cells
  const std::string json_path = scratch + "/r.json";
  expect(run("car-check --format json --out " + json_path) == 0, "json run exits 0");
  const std::string json = slurp(json_path);
  expect(!json.empty() && json.front() == '{', "json object emitted");
  expect(json.find("\"experiment\"") != std::string::npos &&
             json.find("\"wall_time_ms\"") != std::string::npos,
         "json carries experiment and wall time fields");

  // config file feeds parameters; command line overrides win
  const std::string cfg_path = scratch + "/run.cfg";
  std::ofstream(cfg_path) << "# scratch config\ntrials=3\ndim=6\nseed=11\n";
  const std::string out_d = scratch + "/d.csv";
  expect(run("sylvester --config " + cfg_path + " --out " + out_d) == 0, "config file run");
  expect(count_lines(slurp(out_d)) == 4, "config trial count honored");
  const std::string out_e = scratch + "/e.csv";
  expect(run("sylvester trials=5 --config " + cfg_path + " --out " + out_e) == 0,
         "override plus config run");
  expect(count_lines(slurp(out_e)) == 6, "command line override beats config");
  expect(run("sylvester --config " + scratch + "/missing.cfg > /dev/null 2>&1") == 2,
         "missing config file exits 2");

  std::filesystem::remove_all(scratch);
  if (failures > 0) std::printf("%d cli checks failed\n", failures);
  return failures == 0 ? 0 : 1;
}
