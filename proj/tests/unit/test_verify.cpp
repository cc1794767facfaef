#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "dha/errors.hpp"
#include "dha/verify.hpp"
#include "support.hpp"

using namespace dha;

TEST_CASE("registry") {
  const auto infos = registered_inequalities();
  CHECK(infos.size() >= 30);
  const auto suites = suite_names();
  std::set<std::string> ids;
  for (const auto& i : infos) {
    CHECK(ids.insert(i.id).second);
    CHECK(std::find(suites.begin(), suites.end(), i.suite) != suites.end());
    CHECK(!i.domain.empty());
    if (i.calibrated) CHECK(i.safety >= 1.1);
    CHECK(inequality_info(i.id).id == i.id);
  }
  CHECK(select_ids({"all"}).size() == infos.size());
  for (const auto& id : select_ids({"bessel"})) CHECK(inequality_info(id).suite == "bessel");
  CHECK(select_ids({"sum-L1", "diff-I"}) == std::vector<std::string>{"sum-L1", "diff-I"});
  CHECK_THROWS_AS(inequality_info("no-such-id"), DomainError);
  CHECK_THROWS_AS(select_ids({"no-such-id"}), DomainError);
}

TEST_CASE("sampling is deterministic") {
  const auto a = sample_inequality("bound-I", 5, 200), b = sample_inequality("bound-I", 5, 200);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].where == b[i].where);
  }
  const auto c = sample_inequality("bound-I", 6, 200);
  CHECK(c[0].where != a[0].where);
}

TEST_CASE("explicit constants calibrate to one") {
  for (const char* id : {"sum-L1", "diff-I", "cantabros", "max-principle"}) {
    const CalibratedConstant c = calibrate(id, 1, 1000);
    CHECK(c.C == 1.0);
    CHECK(c.safety == 1.0);
  }
  CHECK_THROWS_AS(calibrate("sum-L1", 1, 0), DomainError);
  CHECK_THROWS_AS(calibrate("bound-I", 1, 100, 1.05), DomainError);
}

TEST_CASE("heat size constant against a dense scan") {
  // sup over t of t^{N/2} G_t(0) is attained in one dimension near t = 0.4
  double sup = 0.0;
  for (int j = 0; j <= 20000; ++j) {
    const double t = 0.01 + 2.0 * j / 20000.0;
    sup = std::max(sup, std::sqrt(t) * dha::test::series_scaled_bessel(0.0, 2.0 * t));
  }
  const CalibratedConstant c = calibrate("size-G-t", 1, 10000);
  CHECK(c.safety == 1.1);
  CHECK(c.C <= 1.1 * sup * (1 + 1e-12));
  CHECK(c.C >= 1.1 * sup * 0.99);
}

TEST_CASE("recalibration at double density stays inside the safety margin") {
  for (const char* id : {"bound-I", "size-G-t", "diff-G", "diff-K", "bound-frac", "size-Riesz"}) {
    const CalibratedConstant a = calibrate(id, 1, 4000), b = calibrate(id, 11, 8000);
    CHECK_MESSAGE(std::abs(b.C - a.C) / a.C < a.safety - 1.0, id);
  }
}

TEST_CASE("suite runs against a fixture") {
  Fixture fx;
  fx.tool_version = "test";
  for (const char* id : {"bound-I", "diff-3"}) fx.set(calibrate(id, 1, 5000));
  CHECK(fx.find("bound-I") != nullptr);
  CHECK(fx.find("diff-K") == nullptr);

  const SuiteReport ok = run_suite({"bound-I", "diff-3", "sum-L1"}, 7, fx, 5000);
  CHECK(ok.all_pass());
  for (const auto& i : ok.items) {
    CHECK(i.violations == 0);
    CHECK(i.worst_margin >= 0.0);
  }

  // halve a constant: the run must fail and say where
  Fixture bad = fx;
  CalibratedConstant c = *fx.find("diff-3");
  c.C *= 0.5;
  bad.set(c);
  const SuiteReport r = run_suite({"diff-3"}, 7, bad, 5000);
  CHECK_FALSE(r.all_pass());
  CHECK(r.items[0].violations > 0);
  CHECK(r.items[0].worst_margin < 0.0);
  CHECK(!r.items[0].worst_location.empty());
  CHECK(r.to_table().find("FAILURES") != std::string::npos);

  CHECK_THROWS_AS(run_suite({"diff-K"}, 7, fx, 100), DomainError);
  CHECK_THROWS_AS(run_suite({"bound-I"}, 1, fx, 100), DomainError);
}

TEST_CASE("principle suites") {
  const SuiteReport r = run_suite({"max-principle", "comparison-principle"}, 9, Fixture{}, 1000);
  for (const auto& i : r.items) {
    CHECK(i.samples == 1000);
    CHECK(i.violations == 0);
  }
}

TEST_CASE("fixture JSON round trip") {
  Fixture fx;
  fx.tool_version = "rt";
  fx.set(calibrate("diff-3", 3, 500));
  fx.set(calibrate("sum-L1", 3, 10));
  const auto path = std::filesystem::temp_directory_path() / "dha_fixture_rt.json";
  write_fixture(fx, path.string());
  const Fixture back = read_fixture(path.string());
  std::filesystem::remove(path);
  CHECK(fixture_json(back) == fixture_json(fx));
  REQUIRE(back.find("diff-3") != nullptr);
  CHECK(back.find("diff-3")->C == fx.find("diff-3")->C);
  CHECK(back.find("diff-3")->seed == 3);
  CHECK_THROWS(read_fixture("/nonexistent/dir/fixture.json"));
}
