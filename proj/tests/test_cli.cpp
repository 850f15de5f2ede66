#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;
fs::path g_work_dir;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

CliResult run_cli(const std::string& args) {
  const fs::path out_file = g_work_dir / "stdout.txt";
  const fs::path err_file = g_work_dir / "stderr.txt";
  const std::string command =
      g_cli_path + " " + args + " >" + out_file.string() + " 2>" + err_file.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

// Tiny planar scenario so CLI runs stay fast.
const char* kTinyScenario = R"({
  "format_version": 1,
  "meta": {
    "name": "tiny",
    "defaults": {"roadmap_n": 40, "conn_radius": 1.6, "resolution": 0.05,
                 "weights": [1, -2, 2], "query_sampling": "rejection_uniform"}
  },
  "robot": {
    "joints": [
      {"name": "x", "type": "prismatic", "axis": [1, 0, 0], "limits": [-2, 2]},
      {"name": "y", "type": "prismatic", "axis": [0, 1, 0], "limits": [-2, 2]}
    ],
    "links": [null, {"type": "sphere", "radius": 0.05}],
    "sensor": {"link": 1, "fov_deg": 42, "range": 2.0}
  },
  "obstacles": [
    {"type": "sphere", "radius": 0.4, "origin": {"xyz": [0.3, -0.4, 0]}}
  ],
  "privacy_regions": [
    {"center": [1.4, 1.4, 0.0], "radius": 0.4}
  ]
})";

fs::path write_tiny_scenario() {
  const fs::path path = g_work_dir / "tiny.json";
  std::ofstream out(path);
  out << kTinyScenario;
  return path;
}

}  // namespace

TEST_CASE("help exits zero on every subcommand and documents the flags") {
  CHECK(run_cli("--help").exit_code == 0);
  for (const char* sub :
       {"validate-scene", "build-roadmap", "plan", "bench", "export-trace"}) {
    const CliResult result = run_cli(std::string(sub) + " --help");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("--scenario") != std::string::npos);
    CHECK(result.out.find("--scene") != std::string::npos);
  }
  const CliResult bench_help = run_cli("bench --help");
  for (const char* flag : {"--runs", "--weights", "--seed", "--roadmap-n", "--conn-radius",
                           "--resolution", "--out", "--roadmap-file", "--threads"})
    CHECK(bench_help.out.find(flag) != std::string::npos);
}

TEST_CASE("unknown flags are usage errors naming the token") {
  const CliResult result = run_cli("bench --scenario manip_1 --seed 1 --frobnicate");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("--frobnicate") != std::string::npos);
}

TEST_CASE("a scene source is required, as a usage error") {
  const CliResult result = run_cli("bench --seed 1");
  CHECK(result.exit_code == 1);
  const CliResult both = run_cli("validate-scene --scenario manip_1 --scene x.json");
  CHECK(both.exit_code == 1);
}

TEST_CASE("weight magnitudes below one are usage errors") {
  const CliResult result = run_cli("bench --scene " + write_tiny_scenario().string() +
                                   " --seed 1 --weights 0.5");
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("weight magnitude must be >= 1") != std::string::npos);
}

TEST_CASE("validate-scene reports shape and rejects bad documents") {
  const CliResult ok = run_cli("validate-scene --scene " + write_tiny_scenario().string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("dof=2") != std::string::npos);
  CHECK(ok.out.find("privacy_regions=1") != std::string::npos);

  const fs::path bad = g_work_dir / "bad.json";
  {
    std::string text = kTinyScenario;
    text.replace(text.find("\"radius\": 0.4,"), 14, "\"radius\": -0.4,");
    std::ofstream out(bad);
    out << text;
  }
  const CliResult invalid = run_cli("validate-scene --scene " + bad.string());
  CHECK(invalid.exit_code == 2);

  const CliResult missing = run_cli("validate-scene --scene /nonexistent/nope.json");
  CHECK(missing.exit_code == 3);
}

TEST_CASE("plan answers a trivial query and rejects invalid starts") {
  const fs::path scenario = write_tiny_scenario();
  const CliResult same = run_cli("plan --scene " + scenario.string() +
                                 " --weight 1 --seed 1 --start -1.0,-1.0 --goal -1.0,-1.0");
  CHECK(same.exit_code == 0);
  CHECK(same.out.find("length 0") != std::string::npos);

  const CliResult out_of_limits = run_cli("plan --scene " + scenario.string() +
                                          " --weight 1 --seed 1 --start 9,9 --goal 0,0");
  CHECK(out_of_limits.exit_code == 2);
}

TEST_CASE("bench writes deterministic CSV and a roadmap file plans again") {
  const fs::path scenario = write_tiny_scenario();
  const fs::path csv_a = g_work_dir / "a.csv";
  const fs::path csv_b = g_work_dir / "b.csv";

  const std::string base_args = "bench --scene " + scenario.string() +
                                " --runs 3 --weights 1,-2 --seed 7";
  CHECK(run_cli(base_args + " --out " + csv_a.string()).exit_code == 0);
  CHECK(run_cli(base_args + " --threads 4 --out " + csv_b.string()).exit_code == 0);

  const std::string a = slurp(csv_a);
  CHECK(a == slurp(csv_b));  // same argv modulo threads => identical bytes
  CHECK(a.rfind("scenario,run,seed,weight,success,", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 7);  // header + runs x weights

  // Roadmap reuse path: build once, then plan against the saved file.
  const fs::path roadmap = g_work_dir / "tiny_roadmap.json";
  CHECK(run_cli("build-roadmap --scene " + scenario.string() + " --seed 7 --out " +
                roadmap.string())
            .exit_code == 0);
  const CliResult planned =
      run_cli("plan --scene " + scenario.string() + " --roadmap-file " + roadmap.string() +
              " --weight -2 --seed 7 --start -1.5,-1.5 --goal 1.5,1.2");
  CHECK(planned.exit_code == 0);
  CHECK(planned.out.find("violation_fraction") != std::string::npos);

  const CliResult corrupt = run_cli("plan --scene " + scenario.string() +
                                    " --roadmap-file " + scenario.string() +
                                    " --weight 1 --seed 7 --start 0,0 --goal 0,0");
  CHECK(corrupt.exit_code == 3);  // scenario JSON is not a roadmap container
}

TEST_CASE("export-trace writes the documented header") {
  const fs::path scenario = write_tiny_scenario();
  const fs::path trace = g_work_dir / "trace.csv";
  const CliResult result =
      run_cli("export-trace --scene " + scenario.string() +
              " --weight -2 --seed 7 --start -1.5,-1.5 --goal 1.5,1.2 --out " + trace.string());
  CHECK(result.exit_code == 0);
  const std::string text = slurp(trace);
  CHECK(text.rfind("t,q0,q1,apex_x,apex_y,apex_z,axis_x,axis_y,axis_z,violating\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') > 2);
}

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli-path") g_cli_path = argv[i + 1];
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: test_cli --cli-path <binary>\n");
    return 1;
  }
  g_work_dir = fs::temp_directory_path() / "privplan_cli_tests";
  fs::create_directories(g_work_dir);

  doctest::Context context;
  context.applyCommandLine(1, argv);  // keep doctest from eating --cli-path
  const int rc = context.run();
  fs::remove_all(g_work_dir);
  return rc;
}
