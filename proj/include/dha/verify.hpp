#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dha {

// A frozen constant C (and K where the inequality has one) for an inequality whose constant
// is only known to exist.
struct CalibratedConstant {
  std::string id;
  std::string domain;
  std::string grid;
  double C = 1.0;
  double K = 0.0;  // 0 when the inequality has no K
  double safety = 1.0;
  std::uint64_t seed = 0;
  int points = 0;
  std::string tool_version;
};

struct Fixture {
  int version = 1;
  std::string tool_version;
  std::vector<CalibratedConstant> constants;

  const CalibratedConstant* find(const std::string& id) const;
  void set(const CalibratedConstant& c);
};

Fixture read_fixture(const std::string& path);
void write_fixture(const Fixture& f, const std::string& path);
std::string fixture_json(const Fixture& f);

struct InequalityInfo {
  std::string id;
  std::string suite;   // bessel, heat, fractional, riesz, squarefn
  std::string domain;  // parameter domain sampled
  bool calibrated = false;
  double K = 0.0;
  double safety = 1.0;
  int max_samples = 0;  // cap on the per-run sample count (0: none)
};

std::vector<InequalityInfo> registered_inequalities();
const InequalityInfo& inequality_info(const std::string& id);
std::vector<std::string> suite_names();

// Ids selected by a list of ids and/or suite names ("all" selects everything).
std::vector<std::string> select_ids(const std::vector<std::string>& ids_or_suites);

struct Sample {
  double value = 0.0;  // lhs/structure for calibrated ids, signed margin otherwise
  std::string where;
};

// Seeded samples of one inequality; deterministic for a fixed (seed, count).
std::vector<Sample> sample_inequality(const std::string& id, std::uint64_t seed, int count);

// C = safety * max ratio over the seeded grid. Ids with an explicit constant return C = 1.
CalibratedConstant calibrate(const std::string& id, std::uint64_t seed, int points, double safety = 0.0);

struct SuiteItem {
  std::string id;
  bool pass = false;
  int samples = 0;
  int violations = 0;
  double C = 1.0;
  double worst_margin = 0.0;  // 1 - ratio/C for calibrated ids, the raw margin otherwise
  std::string worst_location;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<SuiteItem> items;
  bool all_pass() const;
  std::string to_json() const;
  std::string to_table() const;
};

// Checks each inequality on a fresh grid; the seed must differ from every calibration seed used.
SuiteReport run_suite(const std::vector<std::string>& ids_or_suites, std::uint64_t seed, const Fixture& fixture,
                      int points);

}  // namespace dha
