/*
 *   Copyright (c) 2026, The edgegap authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" EDGEGAP_CLI_PATH "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// stdout only, stderr discarded
Run run_stdout(const std::string& args, const std::string& env = "") {
  return run(args + " 2>/dev/null", env);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "edgegap_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

nlohmann::json json_of(const std::string& s) { return nlohmann::json::parse(s.substr(s.find('{'))); }

}  // namespace

TEST_CASE("version and help") {
  const auto v = run("--version");
  CHECK(v.status == 0);
  CHECK(v.out.find('.') != std::string::npos);
  CHECK(run("--help").status == 0);
}

TEST_CASE("unknown flags are rejected with a suggestion") {
  const auto r = run("genfun soft --s 0 --xii 0.5");
  CHECK(r.status == 1);
  CHECK(r.out.find("did you mean --xi?") != std::string::npos);
}

TEST_CASE("out-of-range parameters give exit status 1 and a message") {
  const auto r = run("genfun soft --s 0 --xi 1.5");
  CHECK(r.status == 1);
  CHECK(r.out.find("xi must lie in [0, 1]") != std::string::npos);
  CHECK(run("genfun hard --s 2 --xi 0.5 --a -2").status == 1);
  CHECK(run("mc sample --ensemble xyz --n 2 --samples 1").status == 1);
}

TEST_CASE("unwritable output path") {
  const auto r = run("mc sample --ensemble loe --n 3 --samples 2 --seed 4 --out /nonexistent-dir/x.csv");
  CHECK(r.status == 1);
  CHECK(r.out.find("cannot open") != std::string::npos);
}

TEST_CASE("genfun soft prints a JSON record") {
  const auto r = run_stdout("genfun soft --s 12 --xi 1 --m 60");
  REQUIRE(r.status == 0);
  const auto j = json_of(r.out);
  CHECK(j.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j.at("m_used") == 60);
  CHECK(j.contains("error_estimate"));
  CHECK(j.at("seed").is_null());
  CHECK(j.at("config").at("command") == "genfun soft");
}

TEST_CASE("kernel and special function evaluation print 17 digits") {
  const double d0 = std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  const auto k = run_stdout("kernel eval --kind soft --x 0 --y 0");
  REQUIRE(k.status == 0);
  CHECK(std::stod(k.out) == doctest::Approx(d0 * d0).epsilon(1e-14));
  const auto a = run_stdout("specfun eval --fn airy --x 0");
  REQUIRE(a.status == 0);
  std::istringstream in(a.out);
  double v, d;
  in >> v >> d;
  CHECK(v == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-15));
  CHECK(d == doctest::Approx(-d0).epsilon(1e-15));
}

TEST_CASE("kernel grid writes x, y, value") {
  const auto out = scratch("grid.csv");
  REQUIRE(run("kernel grid --kind hard --a 1 --lo 0.5 --hi 2 --n 3 --out '" + out.string() + "'").status == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("x,y,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

TEST_CASE("gapprob returns a value array") {
  const auto r = run_stdout("gapprob soft --s -1 --kmax 2");
  REQUIRE(r.status == 0);
  const auto j = json_of(r.out);
  REQUIRE(j.at("value").size() == 3);
  double total = 0.0;
  for (const auto& x : j.at("value")) total += x.get<double>();
  CHECK(total <= 1.0 + 1e-6);
}

TEST_CASE("Monte Carlo samples are reproducible across runs and thread counts") {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), c = scratch("c.csv");
  const std::string args = "mc sample --ensemble loe --beta 1 --n 6 --a 0 --samples 300 --seed 17 --out ";
  REQUIRE(run(args + "'" + a.string() + "'", "OMP_NUM_THREADS=1").status == 0);
  REQUIRE(run(args + "'" + b.string() + "'", "OMP_NUM_THREADS=3").status == 0);
  REQUIRE(run("mc sample --ensemble loe --beta 1 --n 6 --a 0 --samples 300 --seed 18 --out '" + c.string() + "'").status == 0);
  const auto ta = slurp(a);
  CHECK(ta == slurp(b));
  CHECK(ta != slurp(c));
  CHECK(ta.rfind("x1,x2,x3,x4,x5,x6\n", 0) == 0);
  CHECK(std::count(ta.begin(), ta.end(), '\n') == 301);

  const auto g = run_stdout("mc genfun --in '" + a.string() + "' --interval 10,inf --xi 0");
  REQUIRE(g.status == 0);
  CHECK(json_of(g.out).at("value").get<double>() == 1.0);
  CHECK(json_of(g.out).at("samples") == 300);
}

TEST_CASE("verify f1 writes a table and a passing summary") {
  const auto out = scratch("f1.csv");
  const auto r = run_stdout("verify f1 --nmin 20 --nmax 160 --out '" + out.string() + "'");
  REQUIRE(r.status == 0);
  const auto j = json_of(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("slope").get<double>() <= -0.2);
  const auto text = slurp(out);
  CHECK(text.rfind("N,", 0) == 0);
  CHECK(text.find("finite_value,limit_value,abs_error") != std::string::npos);
}

TEST_CASE("suite exit status follows the verdict") {
  const auto ok = run_stdout("suite fast --only 2");
  CHECK(ok.status == 0);
  CHECK(json_of(ok.out.substr(ok.out.find('{'))).at("pass") == true);
  const auto bad = run("suite fast --only 2 --mutate soft-kernel-sign");
  CHECK(bad.status == 2);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}
