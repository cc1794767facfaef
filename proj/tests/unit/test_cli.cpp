#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DHA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

double scalar(const std::string& out, const std::string& name) {
  const std::regex re("# " + name + " = ([-+0-9.eE]+)");
  std::smatch m;
  REQUIRE(std::regex_search(out, m, re));
  return std::stod(m[1].str());
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("decay fit") {
  const Run r = run("decay-fit --dim 1 --norm 2 --tmin 16 --tmax 4096");
  CHECK(r.code == 0);
  CHECK(std::abs(scalar(r.out, "slope") + 0.25) < 0.02);
  CHECK(r.out.find("t,value,N,r") != std::string::npos);
}

TEST_CASE("evolve on both paths") {
  const auto in = temp_file("dha_cli_seq.json", R"({"dim":2,"radius":1,"values":[0,1,0,2,-1,0,0,0.5,0]})");
  const Run r = run("evolve --dim 2 --t 1 --input " + in.string() + " --path both");
  std::filesystem::remove(in);
  CHECK(r.code == 0);
  CHECK(scalar(r.out, "relative_discrepancy") <= 1e-6);
  CHECK(r.out.find("n1,n2,kernel,spectral") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("riesz --dim 1").code == 2);
  CHECK(run("evolve --t -1").code == 2);
  CHECK(run("evolve --no-such-flag").code == 2);
  CHECK(run("hilbert --dim 2").code == 2);
  CHECK(run("frac-kernel --help").code == 0);

  const char* fx = R"({"version":1,"tool_version":"x","constants":[
    {"id":"diff-3","domain":"","grid":"","C":1.0,"K":0.0,"safety":1.5,"seed":1,"points":1,"tool_version":"x"}]})";
  const auto bad = temp_file("dha_cli_bad_fixture.json", fx);
  const Run v = run("verify --suite diff-3 --points 500 --seed 7 --fixture " + bad.string());
  std::filesystem::remove(bad);
  CHECK(v.code == 3);
  CHECK(v.out.find("diff-3") != std::string::npos);
  CHECK(run("verify --suite sum-L1 --points 200 --seed 7").code == 0);
}

TEST_CASE("reruns are byte-identical") {
  for (const char* args : {"heat-kernel --dim 2 --t 0.7 --radius 5", "decay-fit --dim 2 --norm inf --tmin 4 --tmax 256",
                           "frac-apply --random 4 --dim 2 --mean-zero --sign pos --exponent 0.5 --path both --seed 3",
                           "gk --random 3 --dim 1 --k 1 --seed 5 --format json",
                           "verify --suite bessel --points 500 --seed 9 --format json"}) {
    const Run a = run(args), b = run(args);
    CHECK_MESSAGE(a.out == b.out, args);
    CHECK_MESSAGE(a.code == b.code, args);
    CHECK_MESSAGE(!a.out.empty(), args);
  }
  CHECK(run("evolve --random 4 --dim 2 --t 2 --seed 1 --threads 1").out ==
        run("evolve --random 4 --dim 2 --t 2 --seed 1 --threads 4").out);
}
