// Shells out to the installed binary (path in SEQCLASS_BIN) and checks the
// JSON envelope, exit codes, and file side effects end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
  json body;  // parsed stdout when it is JSON, null otherwise
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("SEQCLASS_BIN");
  if (!bin) throw std::runtime_error("SEQCLASS_BIN is not set");
  std::string out_file = "cli_stdout.tmp", err_file = "cli_stderr.tmp";
  std::string cmd = std::string(bin) + " " + args + " > " + out_file + " 2> " + err_file;
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  std::remove(out_file.c_str());
  std::remove(err_file.c_str());
  r.body = json::parse(r.out, nullptr, false);
  return r;
}

}  // namespace

TEST_CASE("version flag") {
  auto r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1.0.0\n");
}

TEST_CASE("counterexample run confirms the intended pattern") {
  auto r = run_cli("counterexample");
  REQUIRE(!r.body.is_discarded());
  CHECK(r.exit_code == 0);
  CHECK(r.body["version"] == "1.0.0");
  CHECK(r.body["config"]["command"] == "counterexample");
  CHECK(r.body["config"]["horizon"] == 65536);
  const json& res = r.body["result"];
  CHECK(res["pattern_confirmed"] == true);
  CHECK(res["nbvs"]["member"] == true);
  CHECK(res["nbvs"]["K_hat"].get<double>() <= 1.0);
  CHECK(res["gbvs"]["member"] == false);
  CHECK(res["gbvs"]["K_hat"].get<double>() == 8191.0);
  CHECK(res["gbvs"]["witness_m"] == 32768);
  CHECK(r.err.find("wall_time_s") != std::string::npos);
}

TEST_CASE("membership exit codes distinguish the two verdicts") {
  auto in = run_cli("check --rule dyadicblock --class nbvs --horizon 4096");
  REQUIRE(!in.body.is_discarded());
  CHECK(in.exit_code == 0);
  CHECK(in.body["result"]["member"] == true);
  CHECK(in.body["config"]["rule"] == "dyadicblock");

  auto out = run_cli("check --rule dyadicblock --class gbvs --horizon 4096");
  REQUIRE(!out.body.is_discarded());
  CHECK(out.exit_code == 2);
  CHECK(out.body["result"]["member"] == false);
  CHECK(out.body["result"]["K_hat"].get<double>() == 511.0);
  CHECK(out.body["result"]["witness_m"] == 2048);

  // The hyphenated alias drives the same path.
  auto alias = run_cli("check-class --rule power:p=2 --class ms --horizon 256");
  CHECK(alias.exit_code == 0);
  CHECK(alias.body["config"]["command"] == "check");
}

TEST_CASE("error reports carry machine-readable codes") {
  auto bad_rule = run_cli("check --rule power:p=-1 --class nbvs");
  REQUIRE(!bad_rule.body.is_discarded());
  CHECK(bad_rule.exit_code == 1);
  CHECK(bad_rule.body["error"]["code"] == "bad_rule_spec");
  CHECK(!bad_rule.body["error"]["message"].get<std::string>().empty());

  auto missing = run_cli("check --class nbvs");
  CHECK(missing.exit_code == 1);
  CHECK(missing.body["error"]["code"] == "bad_config");

  auto empty_ns = run_cli("uniform --rule power:p=2 --nmax 2 --grid 129 --horizon 1024");
  CHECK(empty_ns.exit_code == 1);
  CHECK(empty_ns.body["error"]["code"] == "bad_config");

  auto no_sub = run_cli("");
  CHECK(no_sub.exit_code == 1);
  CHECK(no_sub.body["error"]["code"] == "bad_config");
}

TEST_CASE("stdout is byte deterministic and mirrored to the json file") {
  std::string cmd = "l1 --rule power:p=2 --nmax 16 --grid 513 --horizon 4096";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd + " --json cli_rep.tmp.json");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp("cli_rep.tmp.json") == b.out);
  std::remove("cli_rep.tmp.json");

  REQUIRE(!a.body.is_discarded());
  CHECK(a.body["result"]["criterion"]["verdict"] == "satisfied");
  CHECK(a.body["result"]["l1"]["lower_ok"] == true);
}

TEST_CASE("csv side tables match their documented shapes") {
  auto chk = run_cli("check --rule dyadicblock --class gbvs --horizon 1024 --csv cli_check.tmp.csv");
  CHECK(chk.exit_code == 2);
  CHECK(chk.body["result"]["ratios"] == "cli_check.tmp.csv");
  std::istringstream cs(slurp("cli_check.tmp.csv"));
  std::string line;
  REQUIRE(std::getline(cs, line));
  CHECK(line == "m,ratio");
  std::size_t rows = 0;
  while (std::getline(cs, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1024);
  std::remove("cli_check.tmp.csv");

  auto ev = run_cli("eval --rule power:p=2 --n 8 --grid 129 --csv cli_eval.tmp.csv");
  CHECK(ev.exit_code == 0);
  std::istringstream es(slurp("cli_eval.tmp.csv"));
  REQUIRE(std::getline(es, line));
  CHECK(line == "x,re,im");
  rows = 0;
  while (std::getline(es, line))
    if (!line.empty()) ++rows;
  CHECK(ev.body["result"]["points"].get<std::size_t>() == rows);
  CHECK(ev.body["result"]["points"] == 129);
  std::remove("cli_eval.tmp.csv");
}

TEST_CASE("config file fills defaults but explicit flags win") {
  {
    std::ofstream cfg("cli_cfg.tmp.ini");
    cfg << "[uniform]\nnmax=16\ngrid=257\nhorizon=4096\n";
  }
  auto from_cfg = run_cli("--config cli_cfg.tmp.ini uniform --rule power:p=2");
  REQUIRE(!from_cfg.body.is_discarded());
  CHECK(from_cfg.exit_code == 0);
  CHECK(from_cfg.body["config"]["n_list"] == json::array({4, 8, 16}));
  CHECK(from_cfg.body["config"]["horizon"] == 4096);

  auto overridden = run_cli("--config cli_cfg.tmp.ini uniform --rule power:p=2 --nmax 8");
  CHECK(overridden.body["config"]["n_list"] == json::array({4, 8}));
  std::remove("cli_cfg.tmp.ini");
}

TEST_CASE("kernel sweep passes both identity and norm checks") {
  auto r = run_cli("kernels --kmax 16 --grid 513");
  REQUIRE(!r.body.is_discarded());
  CHECK(r.exit_code == 0);
  const json& res = r.body["result"];
  CHECK(res["identities"]["pass"] == true);
  CHECK(res["identities"]["difference_residual"].get<double>() < 1e-12);
  CHECK(res["identities"]["reflection_residual"].get<double>() < 1e-12);
  CHECK(res["norms"]["pass"] == true);

  auto only_norms = run_cli("kernels --check norms --kmax 8 --grid 257");
  CHECK(only_norms.exit_code == 0);
  CHECK(!only_norms.body["result"].contains("identities"));
}

TEST_CASE("violated criterion maps to exit code 2") {
  auto r = run_cli("sine --rule power:p=1 --horizon 65536");
  REQUIRE(!r.body.is_discarded());
  CHECK(r.exit_code == 2);
  CHECK(r.body["result"]["verdict"] == "violated");
}
