#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Scratch directory unique to this test process; removed when the suite ends.
// One object owns both the path and its cleanup so destruction order is safe.
struct Sandbox {
  fs::path root;
  Sandbox()
      : root(fs::temp_directory_path() /
             ("gaw_cli_" + std::to_string(static_cast<long>(::getpid())))) {
    fs::create_directories(root);
  }
  ~Sandbox() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
};

fs::path sandbox_root() {
  static Sandbox sandbox;
  return sandbox.root;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = sandbox_root() / ("stdout" + std::to_string(counter));
  const fs::path err_path = sandbox_root() / ("stderr" + std::to_string(counter));
  ++counter;

  const std::string cmd = std::string(GAWSIM_PATH) + " " + args + " >" + out_path.string() +
                          " 2>" + err_path.string();
  const int status = std::system(cmd.c_str());

  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = sandbox_root() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

const char* kPairIni = R"([geometry]
t_A = 1
t_B = 3

[physics]
g = 0.08
eta = 0.2
)";

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("help and argument errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("evolve --config nowhere.ini").exit_code == 2);
  CHECK(run_cli("--frobnicate").exit_code == 2);
  CHECK(run_cli("evolve").exit_code == 2);  // --config is required
}

TEST_CASE("coeffs dumps the coupling tables as CRLF CSV") {
  const fs::path cfg = write_config("pair.ini", kPairIni);
  const fs::path out = sandbox_root() / "coeffs_out";
  const CliResult r = run_cli("coeffs --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);

  const std::string csv = slurp(out / "pair.coeffs.csv");
  REQUIRE(!csv.empty());
  CHECK(csv.find("\r\n") != std::string::npos);

  const auto lines = csv_lines(csv);
  REQUIRE(lines.size() == 5);  // header + 2x2 pairs
  CHECK(lines[0] ==
        "n,m,label_n,label_m,A_re,A_im,two_xi_A_re,two_xi_A_im,h_over_J,gamma_over_J");
  CHECK(lines[1] == "0,0,A,A,1,1,2,2,1,1");
  CHECK(lines[2] == "0,1,A,B,0,1,0,2,1,0");

  const std::string manifest = slurp(out / "pair.coeffs.manifest.json");
  CHECK(manifest.find("\"configuration_case\": \"CaseII\"") != std::string::npos);
  CHECK(manifest.find("\"J\": 0.0064") != std::string::npos);
}

TEST_CASE("evolve writes a trajectory, final state, and manifest") {
  const fs::path cfg = write_config("traj.ini", std::string(kPairIni) +
                                                    "\n[run]\nmode = evolve\nt_final = "
                                                    "2\ndt = 0.5\n");
  const fs::path out = sandbox_root() / "traj_out";
  const CliResult r = run_cli("evolve --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);

  const auto lines = csv_lines(slurp(out / "traj.csv"));
  REQUIRE(lines.size() == 6);  // header + t = 0, 0.5, 1, 1.5, 2
  CHECK(lines[0].rfind("time,P_e,", 0) == 0);
  CHECK(lines[1].rfind("0,", 0) == 0);
  CHECK(lines[5].rfind("2,", 0) == 0);

  CHECK(fs::exists(out / "traj.state.json"));
  CHECK(fs::exists(out / "traj.manifest.json"));

  // The all-excited start shows up as P_e = 1 in the first sample.
  std::istringstream first_row(lines[1]);
  std::string cell;
  std::getline(first_row, cell, ',');  // time
  std::getline(first_row, cell, ',');  // P_e
  CHECK(cell == "1");
}

TEST_CASE("steady emits the full state table") {
  const fs::path cfg =
      write_config("ss.ini", std::string(kPairIni) + "\n[run]\nmode = steady\n");
  const fs::path out = sandbox_root() / "ss_out";
  const CliResult r = run_cli("steady --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);

  const auto lines = csv_lines(slurp(out / "ss.csv"));
  REQUIRE(lines.size() == 17);  // header + 4x4 entries
  CHECK(lines[0] == "row_label,col_label,re,im");
  CHECK(lines[1].rfind("e_Ae_B,e_Ae_B,0.249", 0) == 0);

  const std::string manifest = slurp(out / "ss.manifest.json");
  CHECK(manifest.find("\"steady_state\": \"unique\"") != std::string::npos);
}

TEST_CASE("overrides flow through the CLI") {
  const fs::path cfg = write_config("ovr.ini", std::string(kPairIni) +
                                                   "\n[run]\nmode = evolve\nt_final = 2\ndt "
                                                   "= 0.5\n");
  const fs::path out = sandbox_root() / "ovr_out";
  const CliResult r = run_cli("evolve --config " + cfg.string() + " --out " + out.string() +
                              " --override t_final=1 --override physics.eta=0.1");
  REQUIRE(r.exit_code == 0);
  const auto lines = csv_lines(slurp(out / "ovr.csv"));
  REQUIRE(lines.size() == 4);  // header + t = 0, 0.5, 1
  const std::string manifest = slurp(out / "ovr.manifest.json");
  CHECK(manifest.find("\"eta\": 0.1") != std::string::npos);

  CHECK(run_cli("evolve --config " + cfg.string() + " --out " + out.string() +
                " --override run.warp=1")
            .exit_code == 2);
}

TEST_CASE("an invalid stored state trips the numerical-invariant exit code") {
  // Hand-written state file with trace 1.2.
  const char* bad_state = R"({
  "dim": 4,
  "basis": ["e_Ae_B", "e_Ag_B", "g_Ae_B", "g_Ag_B"],
  "entries": [
    {"row": 0, "col": 0, "re": 1.2, "im": 0.0}
  ]
})";
  const fs::path state = write_config("bad_state.json", bad_state);
  const fs::path cfg = write_config(
      "badinit.ini", std::string(kPairIni) + "\n[run]\nmode = evolve\nt_final = 1\ninitial "
                                             "= file:" +
                         state.string() + "\n");
  const fs::path out = sandbox_root() / "badinit_out";
  const CliResult r = run_cli("evolve --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("numerical invariant failure") != std::string::npos);
}

TEST_CASE("config errors carry exit code 2 and a labeled message") {
  const fs::path cfg = write_config("bad.ini", "[geometry]\nt_A = 1\n[physics]\ng = 0.1\n");
  const CliResult r = run_cli("steady --config " + cfg.string() + " --out " +
                              (sandbox_root() / "bad_out").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("config error") != std::string::npos);
  CHECK(r.err.find("t_B") != std::string::npos);
}

TEST_CASE("preset listing and unknown presets") {
  const CliResult r = run_cli("preset --list");
  REQUIRE(r.exit_code == 0);
  for (const char* name : {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "figB6_small",
                           "figB7_small", "figB8_small"})
    CHECK(r.out.find(name) != std::string::npos);

  CHECK(run_cli("preset figZZ --out " + (sandbox_root() / "x").string()).exit_code == 2);
  CHECK(run_cli("preset").exit_code == 2);
}

TEST_CASE("presets accept overrides and write labeled outputs") {
  const fs::path out = sandbox_root() / "preset_out";
  const CliResult r = run_cli("preset fig3 --out " + out.string() +
                              " --override run.t_final=1 --override run.dt=0.5");
  REQUIRE(r.exit_code == 0);
  const auto lines = csv_lines(slurp(out / "fig3_caseI.csv"));
  REQUIRE(lines.size() == 4);  // header + 3 samples
  CHECK(fs::exists(out / "fig3_caseI.manifest.json"));
}

TEST_CASE("sweep manifests rerun to byte-identical CSV") {
  const fs::path cfg = write_config(
      "swp.ini", std::string(kPairIni) +
                     "\n[run]\nmode = sweep\nsweep_axis = phi\nsweep_min = 0\nsweep_max = "
                     "6.283185307179586\nsweep_points = 7\n");
  const fs::path d1 = sandbox_root() / "swp1";
  const fs::path d2 = sandbox_root() / "swp2";
  const fs::path d3 = sandbox_root() / "swp3";

  REQUIRE(run_cli("sweep --config " + cfg.string() + " --out " + d1.string()).exit_code == 0);
  REQUIRE(run_cli("sweep --config " + (d1 / "swp.manifest.json").string() + " --out " +
                  d2.string())
              .exit_code == 0);
  const std::string first = slurp(d1 / "swp.csv");
  REQUIRE(!first.empty());
  CHECK(first == slurp(d2 / "swp.csv"));

  // Thread count must not change the bytes either.
  REQUIRE(run_cli("sweep --config " + cfg.string() + " --out " + d3.string() + " --threads 4")
              .exit_code == 0);
  CHECK(first == slurp(d3 / "swp.csv"));

  // Numbers render with 12 significant digits and '.' separators.
  CHECK(first.find("3.14159265359") != std::string::npos);  // midpoint of the grid
}
