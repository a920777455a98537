#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "msharp/thresholds.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MSHARP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("eval") {
  const Run r = run("eval --mean ns 3 1");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(2.078086921235027537601323).epsilon(1e-16));
  CHECK(run("eval --q --t 0.75 --p 0.5 3 1").out.rfind("2.06155281280883", 0) == 0);
  CHECK(run("eval --mean contra_harmonic 3 1").out == "2.5\n");
  CHECK(run("eval --mean geometric 3 1").code == 2);
  CHECK(run("eval --mean m -3 1").code == 2);
  CHECK(run("eval --mean m 3").code == 2);
}

TEST_CASE("falsify exit codes") {
  const Run found = run("falsify --p 1 --t 0.69 --side lower");
  CHECK(found.code == 1);
  const auto doc = nlohmann::json::parse(found.out);
  CHECK(doc.at("schema") == "means-sharp/1");
  CHECK(doc.at("found") == true);
  CHECK(doc.at("counterexample").at("x").get<double>() > 0.9);
  CHECK(run("falsify --p 1 --t 0.6834 --side lower").code == 0);
  CHECK(run("falsify --p 1 --t 0.70 --side upper").code == 1);
  CHECK(run("falsify --p 1 --t 0.7042 --side upper").code == 0);
  CHECK(run("falsify --p 1 --t 0.69 --side sideways").code == 2);
  CHECK(run("falsify --p 0.3 --t 0.69").code == 2);
}

TEST_CASE("certify") {
  const Run r = run("certify --p 1 --delta 1e-3");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("result").at("complete") == true);
  CHECK(doc.at("result").at("certificate_count") == 4);
}

TEST_CASE("thresholds CSV round trip") {
  const Run r = run("thresholds --p-min 0.5 --p-max 10 --n 20 --output thr.csv");
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp("thr.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "p,t1_max,t2_min,u_zero,u_low,u_high");
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string p, t1, t2;
    std::getline(fields, p, ',');
    std::getline(fields, t1, ',');
    std::getline(fields, t2, ',');
    CHECK(std::stod(t1) == msharp::lower_weight_threshold(std::stod(p)));
    CHECK(std::stod(t2) == msharp::upper_weight_threshold(std::stod(p)));
    ++rows;
  }
  CHECK(rows == 20);
  const auto manifest = nlohmann::json::parse(slurp("thr.csv.manifest.json"));
  CHECK(manifest.at("manifest").at("command") == "thresholds");
  // reruns are byte identical
  const std::string first = slurp("thr.csv");
  REQUIRE(run("thresholds --p-min 0.5 --p-max 10 --n 20 --output thr.csv").code == 0);
  CHECK(slurp("thr.csv") == first);
  CHECK(run("thresholds --output /nonexistent-dir/x.csv").code == 2);
  CHECK(run("thresholds --p-min 0.2").code == 2);
}

TEST_CASE("profile signs") {
  const Run r = run("profile --p 1 --n 50");
  REQUIRE(r.code == 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("x,m_M,q(t=", 0) == 0);
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string cell[6];
    for (auto& c : cell) std::getline(fields, c, ',');
    CHECK(std::stod(cell[4]) < 0.0);  // f at t1_max
    CHECK(std::stod(cell[5]) > 0.0);  // f at t2_min
    ++rows;
  }
  CHECK(rows == 50);
}

TEST_CASE("verify") {
  const Run ok = run("verify --p 2 --n-uniform 2000 --n-log-low 500 --n-log-high 500");
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out).at("manifest").at("seed").is_number());
  CHECK(run("verify --p 2 --t1 0.64 --n-uniform 2000 --n-log-low 500 --n-log-high 500").code == 1);
  CHECK(run("verify --p 2 --threads 0").code == 2);
}

TEST_CASE("usage") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("--version").code == 0);
}
