#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("SUBSUP_CLI");
  REQUIRE_MESSAGE(env != nullptr, "SUBSUP_CLI not set");
  return env;
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("subsup_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path find_one(const fs::path& dir, const std::string& needle, const std::string& ext) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.find(needle) != std::string::npos && name.size() > ext.size() &&
        name.compare(name.size() - ext.size(), ext.size(), ext) == 0)
      return entry.path();
  }
  FAIL("no file matching ", needle, " (", ext, ") in ", dir.string());
  return {};
}

}  // namespace

TEST_CASE("bounds table") {
  fs::path dir = fresh_dir("bounds");
  RunResult res = run("--out " + dir.string() + " bounds --gamma 0.5 --c 0.2 --beta 1.5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("main") != std::string::npos);
  CHECK(res.output.find("overflow_cap         3") != std::string::npos);
  CHECK(res.output.find("beyond") != std::string::npos);
}

TEST_CASE("bounds rejects bad gamma with a config error") {
  RunResult res = run("bounds --gamma 1.5");
  CHECK(res.exit_code == 2);
}

TEST_CASE("curvature subcommand and cap error") {
  fs::path dir = fresh_dir("curv");
  RunResult res = run("--out " + dir.string() + " curvature --seed 3 --n 6");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("gamma") != std::string::npos);
  CHECK(res.output.find("gamma_strict") != std::string::npos);

  RunResult too_big = run("curvature --seed 3 --n 15");
  CHECK(too_big.exit_code == 2);
}

TEST_CASE("tightness demonstration") {
  fs::path dir = fresh_dir("tight");
  RunResult res = run("--out " + dir.string() + " tightness --k 10 --gamma 0.5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("realized ratio") != std::string::npos);
  CHECK(res.output.find("0.4685") != std::string::npos);

  RunResult no_eps = run("tightness --k 10 --gamma 0.0");
  CHECK(no_eps.exit_code == 1);
  CHECK(no_eps.output.find("no admissible epsilon") != std::string::npos);
}

TEST_CASE("dual subcommand emits a JSON result") {
  fs::path dir = fresh_dir("dual");
  RunResult res =
      run("--out " + dir.string() + " dual --seed 4 --n 7 --tau 0.8 --alpha auto --epsilon 0.01");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("budget_found") != std::string::npos);
  CHECK(res.output.find("iterations") != std::string::npos);
}

TEST_CASE("verify exits 0 clean and 1 corrupted") {
  fs::path dir = fresh_dir("verify");
  RunResult clean = run("--out " + dir.string() + " verify --instances 25 --seed 7 --n-max 8");
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("violations: 0") != std::string::npos);

  RunResult corrupt = run("--out " + dir.string() +
                          " verify --instances 25 --seed 7 --n-max 8 --self-test-corrupt");
  CHECK(corrupt.exit_code == 1);

  RunResult bad = run("--out " + dir.string() + " verify --instances 5 --n-max 13");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("bench writes curves and reruns byte-identically from the snapshot") {
  fs::path dir1 = fresh_dir("bench1");
  RunResult res = run("--out " + dir1.string() +
                      " bench --synthetic --n 8 --seed 3 --with-opt");
  CHECK(res.exit_code == 0);

  fs::path csv1 = find_one(dir1, "bench_synthetic", ".csv");
  fs::path snapshot = find_one(dir1, "bench_synthetic", ".config.json");

  fs::path dir2 = fresh_dir("bench2");
  RunResult rerun =
      run("--out " + dir2.string() + " bench --config " + snapshot.string());
  CHECK(rerun.exit_code == 0);
  fs::path csv2 = find_one(dir2, "bench_synthetic", ".csv");
  CHECK(slurp(csv1) == slurp(csv2));
  CHECK(slurp(find_one(dir1, "bench_synthetic", ".json")) ==
        slurp(find_one(dir2, "bench_synthetic", ".json")));
}

TEST_CASE("synthetic bench emits an instance file usable by curvature") {
  fs::path dir = fresh_dir("instfile");
  RunResult res = run("--out " + dir.string() + " bench --synthetic --n 6 --seed 9");
  CHECK(res.exit_code == 0);
  fs::path inst = find_one(dir, "_instance", ".json");
  RunResult curv = run("--out " + dir.string() + " curvature --instance " + inst.string());
  CHECK(curv.exit_code == 0);
  CHECK(curv.output.find("gamma") != std::string::npos);
}

TEST_CASE("single-worker mode reproduces the default output") {
  fs::path dir1 = fresh_dir("w_default");
  fs::path dir2 = fresh_dir("w_one");
  RunResult a = run("--out " + dir1.string() + " bench --synthetic --n 8 --seed 12 --with-opt");
  RunResult b = run("--out " + dir2.string() +
                    " --workers 1 bench --synthetic --n 8 --seed 12 --with-opt");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(find_one(dir1, "bench_synthetic", ".csv")) ==
        slurp(find_one(dir2, "bench_synthetic", ".csv")));
  CHECK(slurp(find_one(dir1, "_frontier", ".csv")) == slurp(find_one(dir2, "_frontier", ".csv")));
}

TEST_CASE("bench debate smoke run") {
  fs::path dir = fresh_dir("bench_debate");
  RunResult res = run("--out " + dir.string() +
                      " bench --debate --m 8 --T 20 --rounds 2 --view local --scenarios 10 "
                      "--seed 1");
  CHECK(res.exit_code == 0);
  std::string csv = slurp(find_one(dir, "bench_debate", ".csv"));
  CHECK(csv.find("algorithm,step,element,f,g,ratio,beta") == 0);
  CHECK(csv.find("ratio-marginal") != std::string::npos);
  CHECK(csv.find("greedy-g") != std::string::npos);

  RunResult conflict = run("bench --debate --synthetic --n 6");
  CHECK(conflict.exit_code == 2);
}
