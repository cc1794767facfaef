// dha: command-line front end for the lattice harmonic analysis library.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dha/bessel.hpp"
#include "dha/errors.hpp"
#include "dha/fractional.hpp"
#include "dha/heat.hpp"
#include "dha/lattice_io.hpp"
#include "dha/parallel.hpp"
#include "dha/riesz.hpp"
#include "dha/spectral.hpp"
#include "dha/squarefn.hpp"
#include "dha/subordination.hpp"
#include "dha/verify.hpp"

#ifndef DHA_FIXTURE_PATH
#define DHA_FIXTURE_PATH "data/calibration.json"
#endif

using namespace dha;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

// One tabular result: a CSV with a comment header, or the same content as JSON.
struct Table {
  Table() = default;
  Table(std::string q, std::string s, std::string a) : quantity(std::move(q)), scale(std::move(s)), anchor(std::move(a)) {}

  std::string quantity, scale, anchor;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> scalars;
  json extra = json::object();
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

std::string render(const Table& t, const std::string& format, const std::string& command) {
  std::ostringstream os;
  if (format == "json") {
    json j{{"tool_version", DHA_VERSION},
           {"command", command},
           {"quantity", t.quantity},
           {"scale", t.scale},
           {"anchor", t.anchor},
           {"columns", t.columns}};
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = json::array();
      for (double v : r) row.push_back(jnum(v));
      rows.push_back(row);
    }
    j["rows"] = rows;
    for (const auto& [k, v] : t.scalars) j[k] = jnum(v);
    for (const auto& [k, v] : t.extra.items()) j[k] = v;
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# quantity: " << t.quantity << ", scale: " << t.scale << ", anchor: " << t.anchor << '\n';
  for (const auto& [k, v] : t.scalars) os << "# " << k << " = " << num(v) << '\n';
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> point_columns(int dim) {
  std::vector<std::string> c;
  for (int a = 1; a <= dim; ++a) c.push_back("n" + std::to_string(a));
  return c;
}

// Rows (n, values of each sequence at n) over a common window.
void add_sequence_rows(Table& t, const std::vector<const RealSequence*>& cols) {
  const Window& w = cols.front()->window();
  for (Index i = 0; i < w.size(); ++i) {
    std::vector<double> row;
    for (int a = 0; a < w.dim; ++a) row.push_back(w.coord(i, a));
    for (const auto* s : cols) row.push_back((*s)[i]);
    t.rows.push_back(std::move(row));
  }
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return INFINITY;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw DomainError("cannot parse exponent '" + s + "'");
  }
}

double max_abs_diff(const RealSequence& a, const RealSequence& b) {
  return (a.values() - b.values()).abs().maxCoeff();
}

double relative_diff(const RealSequence& a, const RealSequence& b) {
  const double scale = std::max(a.values().abs().maxCoeff(), 1e-300);
  return max_abs_diff(a, b) / scale;
}

struct Common {
  int threads = 1;
  std::string format;
  std::uint64_t seed = 7;
  std::string output;
};

// Input data: a JSON sequence file (or '-' for stdin), a seeded random sequence, or delta_0.
struct InputSpec {
  std::string path;
  int random_radius = -1;
  bool mean_zero = false;
  int dim = 1;

  void add(CLI::App* app) {
    app->add_option("--input", path, "JSON sequence {dim, radius, values} ('-' reads stdin)");
    app->add_option("--random", random_radius, "use a seeded random sequence on this radius instead of --input");
    app->add_flag("--mean-zero", mean_zero, "subtract the mean from the random sequence");
  }

  RealSequence load(std::uint64_t seed) const {
    if (!path.empty()) {
      RealSequence f;
      if (path == "-") {
        json j;
        std::cin >> j;
        f = real_sequence_from_json(j);
      } else {
        f = read_sequence_file(path);
      }
      if (mean_zero) f.values() -= f.sum() / static_cast<double>(f.size());
      return f;
    }
    if (random_radius >= 0) {
      std::mt19937_64 rng(seed);
      RealSequence f(dim, random_radius);
      for (Index i = 0; i < f.size(); ++i) f[i] = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
      if (mean_zero) f.values() -= f.sum() / static_cast<double>(f.size());
      return f;
    }
    return RealSequence::delta(dim, 0);
  }
};

// Flags from a JSON config object, appended after the command line so explicit flags win.
std::vector<std::string> config_arguments(const std::string& path, const std::vector<std::string>& given,
                                          const std::set<std::string>& commands) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("malformed config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  std::vector<std::string> out;
  bool has_command = false;
  for (const auto& g : given) has_command = has_command || commands.count(g);
  if (j.contains("command") && !has_command) out.push_back(j["command"].get<std::string>());
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, v] : j.items()) {
    if (key == "command" || key == "config") continue;
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& g : given) present = present || g == flag || g.rfind(flag + "=", 0) == 0;
    if (present) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back(flag);
    } else if (v.is_array()) {
      out.push_back(flag);
      for (const auto& e : v) out.push_back(text(e));
    } else {
      out.push_back(flag);
      out.push_back(text(v));
    }
  }
  return out;
}

void write_output(const std::string& text, const Common& c, const std::string& command, const std::string& ext) {
  std::string target = c.output;
  const char* dir = std::getenv("DHA_OUTPUT_DIR");
  if (dir && *dir) {
    if (target.empty()) target = command + "." + ext;
    if (std::filesystem::path(target).is_relative()) target = (std::filesystem::path(dir) / target).string();
  }
  if (target.empty() || target == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw DomainError("cannot write " + target);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on the integer lattice: heat and Poisson semigroups, fractional powers,\n"
               "Riesz transforms, square functions and an inequality verification suite.\n"
               "Every CSV starts with '# quantity: ..., scale: ..., anchor: ...', then '# name = value'\n"
               "lines for scalar results, then a column header row. --format json mirrors the CSV."};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  std::string config_path;
  app.add_option("--threads", common.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "csv | json (verify also accepts table)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--seed", common.seed, "seed for random inputs and the verify grid");
  app.add_option("--output", common.output, "output file (default stdout; DHA_OUTPUT_DIR prefixes relative paths)");
  app.add_option("--config", config_path, "JSON object of flags, e.g. {\"command\": \"evolve\", \"t\": 1}");

  std::string command;
  std::function<Table()> run;
  std::function<int()> run_verify;

  // heat-kernel ------------------------------------------------------------------------------
  struct {
    int dim = 1;
    double t = 1.0;
    int radius = -1;
    double eps = kHeatTolerance;
  } hk;
  auto* c_hk = app.add_subcommand("heat-kernel", "G_{t,N}(n) on a window; columns n1..nN,G");
  c_hk->add_option("--dim", hk.dim, "dimension N")->check(CLI::Range(1, 8));
  c_hk->add_option("--t", hk.t, "time t > 0")->required();
  c_hk->add_option("--radius", hk.radius, "window radius (-1: automatic from --eps)");
  c_hk->add_option("--eps", hk.eps, "tail mass tolerance for the automatic radius");
  c_hk->callback([&] {
    run = [&] {
      const HeatKernel G = heat_kernel(hk.t, hk.dim, hk.radius, hk.eps);
      Table t{"heat kernel G_{t,N}(n)", "probability mass", "heat-kernel"};
      t.columns = point_columns(hk.dim);
      t.columns.push_back("G");
      t.scalars = {{"t", hk.t},
                   {"dim", hk.dim},
                   {"radius", G.radius},
                   {"window_sum", G.values.sum()},
                   {"tail_mass_bound", G.tail_mass_bound}};
      add_sequence_rows(t, {&G.values});
      return t;
    };
  });

  // evolve -----------------------------------------------------------------------------------
  struct {
    InputSpec in;
    double t = 1.0;
    std::string path = "kernel";
    int radius = -1;
    int grid = 0;
  } ev;
  auto* c_ev = app.add_subcommand("evolve", "W_t f; columns n1..nN,kernel and/or spectral");
  c_ev->add_option("--dim", ev.in.dim, "dimension N for --random or the default delta input");
  ev.in.add(c_ev);
  c_ev->add_option("--t", ev.t, "time t > 0")->required();
  c_ev->add_option("--path", ev.path, "kernel | spectral | both")->check(CLI::IsMember({"kernel", "spectral", "both"}));
  c_ev->add_option("--radius", ev.radius, "output window radius (default: the input window)");
  c_ev->add_option("--grid", ev.grid, "torus size M for the spectral path (0: automatic)");
  c_ev->callback([&] {
    run = [&] {
      const RealSequence f = ev.in.load(common.seed);
      const int Ro = ev.radius < 0 ? f.radius() : ev.radius;
      Table t{"heat semigroup W_t f(n)", "input units", "heat-semigroup"};
      t.columns = point_columns(f.dim());
      t.scalars = {{"t", ev.t}};
      RealSequence k, s;
      std::vector<const RealSequence*> cols;
      if (ev.path != "spectral") {
        k = evolve(f, ev.t, Ro);
        t.columns.push_back("kernel");
        cols.push_back(&k);
      }
      if (ev.path != "kernel") {
        const int span = f.radius() + heat_radius(ev.t, f.dim());
        const TorusGrid g(f.dim(), spectral_grid_size(std::max(Ro, span), ev.grid));
        s = apply_multiplier_real(f, heat_symbol(g, ev.t), Ro);
        t.columns.push_back("spectral");
        cols.push_back(&s);
        t.scalars.push_back({"grid_size", g.M});
      }
      if (ev.path == "both") {
        t.scalars.push_back({"max_discrepancy", max_abs_diff(k, s)});
        t.scalars.push_back({"relative_discrepancy", relative_diff(k, s)});
      }
      add_sequence_rows(t, cols);
      return t;
    };
  });

  // decay-fit --------------------------------------------------------------------------------
  struct {
    int dim = 1;
    std::string norm = "2";
    double tmin = 16.0, tmax = 4096.0, ratio = 2.0;
  } df;
  auto* c_df = app.add_subcommand("decay-fit", "||G_{t,N}||_r over a geometric t grid; columns t,value,N,r");
  c_df->add_option("--dim", df.dim, "dimension N")->check(CLI::Range(1, 8));
  c_df->add_option("--norm", df.norm, "r in [1, inf]");
  c_df->add_option("--tmin", df.tmin, "first time");
  c_df->add_option("--tmax", df.tmax, "last time");
  c_df->add_option("--ratio", df.ratio, "grid ratio");
  c_df->callback([&] {
    run = [&] {
      const double r = parse_exponent(df.norm);
      if (!(r >= 1.0)) throw DomainError("decay-fit requires r in [1, inf]");
      const SlopeFit fit = decay_slope_fit(df.dim, r, geometric_grid(df.tmin, df.tmax, df.ratio));
      Table t{"kernel norm ||G_{t,N}||_r", "dimensionless", "kernel-norm-decay"};
      t.columns = {"t", "value", "N", "r"};
      for (size_t i = 0; i < fit.t.size(); ++i) t.rows.push_back({fit.t[i], fit.value[i], double(df.dim), r});
      const double expected = std::isinf(r) ? -0.5 * df.dim : -0.5 * df.dim * (1.0 - 1.0 / r);
      t.scalars = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"expected_slope", expected}};
      return t;
    };
  });

  // mass-theorem -----------------------------------------------------------------------------
  struct {
    InputSpec in;
    std::string p = "inf";
    double q = 1.0;
    double tmin = 64.0, tmax = 8192.0, ratio = 2.0;
  } mt;
  auto* c_mt = app.add_subcommand(
      "mass-theorem", "||W_t f - (sum f) G_t||_p over a t grid; columns t,value,N,p,q (default f = d0 - d1 + 2 d2)");
  c_mt->add_option("--dim", mt.in.dim, "dimension N for --random");
  mt.in.add(c_mt);
  c_mt->add_option("--p", mt.p, "p in [q, inf]");
  c_mt->add_option("--q", mt.q, "q in [1, N/(N-1))");
  c_mt->add_option("--tmin", mt.tmin, "first time");
  c_mt->add_option("--tmax", mt.tmax, "last time");
  c_mt->add_option("--ratio", mt.ratio, "grid ratio");
  c_mt->callback([&] {
    run = [&] {
      RealSequence f;
      if (mt.in.path.empty() && mt.in.random_radius < 0) {
        f = RealSequence(1, 2);
        f.ref({0}) = 1.0;
        f.ref({1}) = -1.0;
        f.ref({2}) = 2.0;
      } else {
        f = mt.in.load(common.seed);
      }
      const double p = parse_exponent(mt.p);
      const SlopeFit fit = mass_slope_fit(f, p, mt.q, geometric_grid(mt.tmin, mt.tmax, mt.ratio));
      Table t{"mass residual ||W_t f - (sum f) G_t||_p", "input units", "mass-distribution"};
      t.columns = {"t", "value", "N", "p", "q"};
      for (size_t i = 0; i < fit.t.size(); ++i)
        t.rows.push_back({fit.t[i], fit.value[i], double(f.dim()), p, mt.q});
      t.scalars = {{"mass", f.sum()},
                   {"slope", fit.slope},
                   {"intercept", fit.intercept},
                   {"expected_slope", mass_slope_exponent(f.dim(), p, mt.q)}};
      return t;
    };
  });

  // poisson ----------------------------------------------------------------------------------
  struct {
    InputSpec in;
    double t = 1.0;
    int radius = 8;
    double h = 1e-2;
    int grid = 0;
  } po;
  auto* c_po = app.add_subcommand(
      "poisson", "Q_t kernel (columns n1..nN,Q) or, with input, P_t f (columns n1..nN,value,laplace_residual)");
  c_po->add_option("--dim", po.in.dim, "dimension N");
  po.in.add(c_po);
  c_po->add_option("--t", po.t, "time t > 0")->required();
  c_po->add_option("--radius", po.radius, "window radius");
  c_po->add_option("--step", po.h, "step of the second difference in t for the Laplace residual");
  c_po->add_option("--grid", po.grid, "torus size for the symbol cross-check (0: automatic)");
  c_po->callback([&] {
    run = [&] {
      Table t;
      t.anchor = "Poisson";
      if (po.in.path.empty() && po.in.random_radius < 0) {
        const PoissonKernel Q = poisson_kernel(po.t, po.in.dim, po.radius);
        t.quantity = "Poisson kernel Q_t(n)";
        t.scale = "probability mass";
        t.columns = point_columns(po.in.dim);
        t.columns.push_back("Q");
        const int M = spectral_grid_size(po.radius, po.grid);
        t.scalars = {{"t", po.t},
                     {"window_mass", Q.window_mass},
                     {"outside_mass", Q.outside_mass},
                     {"normalization_error", Q.normalization_error()},
                     {"grid_size", M},
                     {"symbol_discrepancy", poisson_symbol_discrepancy(Q, M)}};
        add_sequence_rows(t, {&Q.values});
        return t;
      }
      const RealSequence f = po.in.load(common.seed);
      const int Ro = po.radius < 0 ? f.radius() : po.radius;
      const RealSequence u = poisson_evolve(f, po.t, Ro);
      const RealSequence res = laplace_residual(f, po.t, po.h, Ro);
      t.quantity = "Poisson semigroup P_t f(n)";
      t.scale = "input units";
      t.columns = point_columns(f.dim());
      t.columns.push_back("value");
      t.columns.push_back("laplace_residual");
      t.scalars = {{"t", po.t}, {"h", po.h}, {"max_residual_over_sup_f", lp_norm(res, INFINITY) / lp_norm(f, INFINITY)}};
      add_sequence_rows(t, {&u, &res});
      return t;
    };
  });

  // frac-kernel / frac-apply -----------------------------------------------------------------
  struct {
    InputSpec in;
    std::string sign = "neg";
    double exponent = 0.5;
    int radius = 8;
    int out_radius = -1;
    std::string path = "kernel";
    int grid = 0;
  } fr;
  auto frac_sign = [&] { return fr.sign == "pos" ? FracSign::pos : FracSign::neg; };
  auto* c_fk = app.add_subcommand("frac-kernel", "K_sigma (neg) or K_s (pos); columns n1..nN,value,error");
  c_fk->add_option("--dim", fr.in.dim, "dimension N");
  c_fk->add_option("--sign", fr.sign, "neg: (-Delta)^{-sigma}; pos: (-Delta)^s")->check(CLI::IsMember({"neg", "pos"}));
  c_fk->add_option("--exponent", fr.exponent, "sigma in (0, N/2) or s in (0, 1)")->required();
  c_fk->add_option("--radius", fr.radius, "window radius");
  c_fk->callback([&] {
    run = [&] {
      const FracKernel K = frac_sign() == FracSign::neg ? frac_integral_kernel(fr.exponent, fr.in.dim, fr.radius)
                                                        : frac_power_kernel(fr.exponent, fr.in.dim, fr.radius);
      Table t{frac_sign() == FracSign::neg ? "fractional integral kernel K_sigma(n)" : "fractional power kernel K_s(n)",
              "dimensionless", frac_sign() == FracSign::neg ? "frac-neg" : "frac-pos"};
      t.columns = point_columns(fr.in.dim);
      t.columns.push_back("value");
      t.columns.push_back("error");
      t.scalars = {{"exponent", fr.exponent}};
      if (frac_sign() == FracSign::pos) t.scalars.push_back({"total", K.total});
      add_sequence_rows(t, {&K.values, &K.error});
      return t;
    };
  });
  auto* c_fa = app.add_subcommand("frac-apply", "(-Delta)^{-sigma} f or (-Delta)^s f; columns n1..nN,kernel/spectral");
  c_fa->add_option("--dim", fr.in.dim, "dimension N for --random or the default delta input");
  fr.in.add(c_fa);
  c_fa->add_option("--sign", fr.sign, "neg | pos")->check(CLI::IsMember({"neg", "pos"}));
  c_fa->add_option("--exponent", fr.exponent, "sigma in (0, N/2) or s in (0, 1)")->required();
  c_fa->add_option("--path", fr.path, "kernel | spectral | both")->check(CLI::IsMember({"kernel", "spectral", "both"}));
  c_fa->add_option("--radius", fr.out_radius, "output window radius (default: the input window)");
  c_fa->add_option("--grid", fr.grid, "torus size M for the spectral path (0: automatic)");
  c_fa->callback([&] {
    run = [&] {
      const RealSequence f = fr.in.load(common.seed);
      const int Ro = fr.out_radius < 0 ? f.radius() : fr.out_radius;
      auto apply = [&](Path p) {
        return frac_sign() == FracSign::neg ? apply_frac_integral(f, fr.exponent, p, Ro, fr.grid)
                                            : apply_frac_power(f, fr.exponent, p, Ro, fr.grid);
      };
      Table t{frac_sign() == FracSign::neg ? "(-Delta)^{-sigma} f(n)" : "(-Delta)^s f(n)", "input units",
              frac_sign() == FracSign::neg ? "frac-neg" : "frac-pos"};
      t.columns = point_columns(f.dim());
      t.scalars = {{"exponent", fr.exponent}};
      RealSequence k, s;
      std::vector<const RealSequence*> cols;
      if (fr.path != "spectral") {
        k = apply(Path::kernel);
        t.columns.push_back("kernel");
        cols.push_back(&k);
      }
      if (fr.path != "kernel") {
        s = apply(Path::spectral);
        t.columns.push_back("spectral");
        cols.push_back(&s);
      }
      if (fr.path == "both") {
        t.scalars.push_back({"max_discrepancy", max_abs_diff(k, s)});
        t.scalars.push_back({"relative_discrepancy", relative_diff(k, s)});
      }
      add_sequence_rows(t, cols);
      return t;
    };
  });

  // riesz / hilbert --------------------------------------------------------------------------
  struct {
    InputSpec in;
    int axis = 1;
    bool bar = false;
    int radius = 8;
    std::string path = "kernel";
    int grid = 0;
  } rz;
  rz.in.dim = 2;
  auto* c_rz = app.add_subcommand(
      "riesz", "Riesz kernel R_i (columns n1..nN,value,error) or, with input, R_i f (columns n1..nN,kernel/spectral)");
  c_rz->add_option("--dim", rz.in.dim, "dimension N >= 2");
  rz.in.add(c_rz);
  c_rz->add_option("--axis", rz.axis, "axis i in 1..N");
  c_rz->add_flag("--bar", rz.bar, "backward variant");
  c_rz->add_option("--radius", rz.radius, "kernel window radius, or the output radius with input (default: the input window)");
  c_rz->add_option("--path", rz.path, "kernel | spectral | both")->check(CLI::IsMember({"kernel", "spectral", "both"}));
  c_rz->add_option("--grid", rz.grid, "torus size M for the spectral path (0: automatic)");
  c_rz->callback([&] {
    run = [&] {
      const int axis = rz.axis - 1;
      Table t;
      t.anchor = "Riesz";
      t.scale = "dimensionless";
      if (rz.in.path.empty() && rz.in.random_radius < 0) {
        const RieszKernel K = rz.bar ? riesz_bar_kernel(axis, rz.in.dim, rz.radius)
                                     : riesz_kernel(axis, rz.in.dim, rz.radius);
        t.quantity = rz.bar ? "backward Riesz kernel" : "Riesz kernel R_i(n)";
        t.columns = point_columns(rz.in.dim);
        t.columns.push_back("value");
        t.columns.push_back("error");
        t.scalars = {{"axis", rz.axis}};
        add_sequence_rows(t, {&K.values, &K.error});
        return t;
      }
      const RealSequence f = rz.in.load(common.seed);
      const int Ro = c_rz->count("--radius") ? rz.radius : f.radius();
      t.quantity = "Riesz transform R_i f(n)";
      t.scale = "input units";
      t.columns = point_columns(f.dim());
      t.scalars = {{"axis", rz.axis}};
      RealSequence k, s;
      std::vector<const RealSequence*> cols;
      if (rz.path != "spectral") {
        k = apply_riesz(f, axis, Path::kernel, rz.bar, Ro);
        t.columns.push_back("kernel");
        cols.push_back(&k);
      }
      if (rz.path != "kernel") {
        s = apply_riesz(f, axis, Path::spectral, rz.bar, Ro, rz.grid);
        t.columns.push_back("spectral");
        cols.push_back(&s);
      }
      if (rz.path == "both") {
        t.scalars.push_back({"max_discrepancy", max_abs_diff(k, s)});
        t.scalars.push_back({"relative_discrepancy", relative_diff(k, s)});
      }
      add_sequence_rows(t, cols);
      return t;
    };
  });

  struct {
    InputSpec in;
    int radius = -1;
  } hb;
  auto* c_hb = app.add_subcommand("hilbert", "discrete Hilbert transform (N = 1); columns n1,value");
  hb.in.add(c_hb);
  c_hb->add_option("--radius", hb.radius, "output window radius (default: the input window)");
  c_hb->callback([&] {
    run = [&] {
      const RealSequence f = hb.in.load(common.seed);
      const RealSequence h = hilbert_apply(f, hb.radius);
      Table t{"Hilbert transform sum_k f(k)/(n-k+1/2)", "input units", "Hilbert"};
      t.columns = {"n1", "value"};
      t.scalars = {{"l2_ratio", lp_norm(h, 2.0) / lp_norm(f, 2.0)}};
      add_sequence_rows(t, {&h});
      return t;
    };
  });

  // gk ---------------------------------------------------------------------------------------
  struct {
    InputSpec in;
    int k = 1;
    std::string semigroup = "heat";
    int radius = -1;
    double tmin = 1e-4, tmax = 1e4;
    int per_decade = 32;
    int grid = 0;
  } gq;
  auto* c_gk = app.add_subcommand("gk", "square function g_k f (heat) or its Poisson analogue; columns n1..nN,value,tail");
  c_gk->add_option("--dim", gq.in.dim, "dimension N for --random or the default delta input");
  gq.in.add(c_gk);
  c_gk->add_option("--k", gq.k, "order k >= 1");
  c_gk->add_option("--semigroup", gq.semigroup, "heat | poisson")->check(CLI::IsMember({"heat", "poisson"}));
  c_gk->add_option("--radius", gq.radius, "output window radius (default: the input window)");
  c_gk->add_option("--tmin", gq.tmin, "smallest grid time");
  c_gk->add_option("--tmax", gq.tmax, "largest grid time");
  c_gk->add_option("--per-decade", gq.per_decade, "grid points per decade");
  c_gk->add_option("--grid", gq.grid, "torus size for the Poisson version (0: automatic)");
  c_gk->callback([&] {
    run = [&] {
      const RealSequence f = gq.in.load(common.seed);
      const TimeGridQuadrature grid(gq.tmin, gq.tmax, gq.per_decade);
      const bool heat = gq.semigroup == "heat";
      const SquareFunction g =
          heat ? gk(f, gq.k, grid, gq.radius) : gk_poisson(f, gq.k, grid, gq.radius, gq.grid);
      const SquareNorm n = heat ? gk_norm_squared(f, gq.k, grid) : gk_poisson_norm_squared(f, gq.k, grid, gq.grid);
      Table t{heat ? "square function g_k f(n)" : "Poisson square function g_k f(n)", "input units", "gk"};
      t.columns = point_columns(f.dim());
      t.columns.push_back("value");
      t.columns.push_back("tail");
      const double f2 = std::pow(lp_norm(f, 2.0), 2);
      t.scalars = {{"k", gq.k},
                   {"norm_squared_ratio", n.value / f2},
                   {"identity_constant", gk_identity_constant(gq.k)},
                   {"tail_fraction", (n.lower_tail + n.upper_tail) / n.value}};
      add_sequence_rows(t, {&g.values, &g.tail});
      return t;
    };
  });

  // multiplier -------------------------------------------------------------------------------
  struct {
    InputSpec in;
    std::string profile = "imaginary-power";
    double gamma = 1.0;
    double omega = 1.0;
    int radius = -1;
    int grid = 0;
  } mu;
  auto* c_mu = app.add_subcommand(
      "multiplier", "Laplace-type multiplier T_M f, M(x) = x int e^{-xt} a(t) dt; columns n1..nN,re,im");
  c_mu->add_option("--dim", mu.in.dim, "dimension N for --random or the default delta input");
  mu.in.add(c_mu);
  c_mu->add_option("--profile", mu.profile, "imaginary-power: a = t^{-i gamma}/Gamma(1-i gamma); cos: cos(omega t); "
                                            "exp: exp(-omega t)")
      ->check(CLI::IsMember({"imaginary-power", "cos", "exp"}));
  c_mu->add_option("--gamma", mu.gamma, "gamma for the imaginary power");
  c_mu->add_option("--omega", mu.omega, "frequency or rate of the cos/exp profiles");
  c_mu->add_option("--radius", mu.radius, "output window radius (default: the input window)");
  c_mu->add_option("--grid", mu.grid, "torus size M (0: automatic)");
  c_mu->callback([&] {
    run = [&] {
      const RealSequence f = mu.in.load(common.seed);
      TimeProfile a;
      double bound = 1.0;
      if (mu.profile == "imaginary-power") {
        a = imaginary_power_profile(mu.gamma);
        bound = imaginary_power_bound(mu.gamma);
      } else if (mu.profile == "cos") {
        const double w = mu.omega;
        a = [w](double t) { return cdouble(std::cos(w * t), 0.0); };
      } else {
        const double w = mu.omega;
        if (!(w >= 0.0)) throw DomainError("exp profile requires omega >= 0 (bounded a)");
        a = [w](double t) { return cdouble(std::exp(-w * t), 0.0); };
      }
      const ComplexSequence u = laplace_multiplier_apply(to_complex(f), a, bound, mu.radius, mu.grid);
      const RealSequence re = real_part(u), im = imag_part(u);
      Table t{"Laplace-type multiplier T_M f(n)", "input units", "laplace"};
      t.columns = point_columns(f.dim());
      t.columns.push_back("re");
      t.columns.push_back("im");
      t.scalars = {{"profile_bound", bound}};
      add_sequence_rows(t, {&re, &im});
      return t;
    };
  });

  // verify -----------------------------------------------------------------------------------
  struct {
    std::vector<std::string> suites{"all"};
    std::string fixture = DHA_FIXTURE_PATH;
    int points = 10000;
    bool calibrate = false;
    bool list = false;
  } vf;
  auto* c_vf = app.add_subcommand(
      "verify", "run the inequality suite against calibrated constants (exit 3 on any violation);\n"
                "--calibrate recomputes the selected constants with --seed and rewrites the fixture");
  c_vf->add_option("--suite", vf.suites, "suites (bessel, heat, fractional, riesz, squarefn), ids, or all");
  c_vf->add_option("--fixture", vf.fixture, "calibration fixture file");
  c_vf->add_option("--points", vf.points, "samples per inequality (capped per id)");
  c_vf->add_flag("--calibrate", vf.calibrate, "recalibrate and write the fixture instead of verifying");
  c_vf->add_flag("--list", vf.list, "list registered inequalities");
  c_vf->callback([&] {
    run_verify = [&]() -> int {
      const std::string fmt = common.format.empty() ? "table" : common.format;
      if (vf.list) {
        std::ostringstream os;
        for (const auto& i : registered_inequalities())
          os << i.id << "  [" << i.suite << (i.calibrated ? ", calibrated" : ", explicit") << "]  " << i.domain
             << '\n';
        write_output(os.str(), common, "verify", "txt");
        return 0;
      }
      if (vf.calibrate) {
        Fixture fx;
        if (std::filesystem::exists(vf.fixture)) fx = read_fixture(vf.fixture);
        fx.tool_version = DHA_VERSION;
        for (const auto& id : select_ids(vf.suites))
          if (inequality_info(id).calibrated) fx.set(calibrate(id, common.seed, vf.points));
        write_fixture(fx, vf.fixture);
        write_output(fixture_json(fx), common, "verify", "json");
        return 0;
      }
      const Fixture fx = read_fixture(vf.fixture);
      const SuiteReport rep = run_suite(vf.suites, common.seed, fx, vf.points);
      std::string text;
      if (fmt == "json") {
        json j = json::parse(rep.to_json());
        j["fixture_version"] = fx.version;
        j["fixture_tool_version"] = fx.tool_version;
        text = j.dump(2) + "\n";
      } else if (fmt == "csv") {
        Table t{"inequality suite report", "margin: 1 - ratio/C (calibrated) or signed margin (explicit)", "verify"};
        t.columns = {"pass", "samples", "violations", "C", "worst_margin"};
        std::ostringstream os;
        os << "# quantity: " << t.quantity << ", scale: " << t.scale << ", anchor: " << t.anchor << '\n'
           << "# seed = " << rep.seed << '\n'
           << "id,pass,samples,violations,C,worst_margin,worst_location\n";
        for (const auto& i : rep.items)
          os << i.id << ',' << (i.pass ? 1 : 0) << ',' << i.samples << ',' << i.violations << ',' << num(i.C) << ','
             << num(i.worst_margin) << ",\"" << i.worst_location << "\"\n";
        text = os.str();
      } else {
        text = rep.to_table();
      }
      write_output(text, common, "verify", fmt == "json" ? "json" : (fmt == "csv" ? "csv" : "txt"));
      return rep.all_pass() ? 0 : kExitVerify;
    };
  });

  std::set<std::string> commands;
  for (const auto* s : app.get_subcommands([](CLI::App*) { return true; })) commands.insert(s->get_name());

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i + 1 < args.size(); ++i)
      if (args[i] == "--config") {
        const auto extra = config_arguments(args[i + 1], args, commands);
        std::vector<std::string> merged;
        // a config-supplied command must come before the flags
        size_t start = 0;
        if (!extra.empty() && commands.count(extra.front())) {
          merged.push_back(extra.front());
          start = 1;
        }
        merged.insert(merged.end(), args.begin(), args.end());
        merged.insert(merged.end(), extra.begin() + start, extra.end());
        args = merged;
        break;
      }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    set_thread_count(common.threads);
    if (run_verify) return run_verify();
    const std::string fmt = common.format.empty() || common.format == "table" ? "csv" : common.format;
    for (const auto* s : app.get_subcommands()) command = s->get_name();
    write_output(render(run(), fmt, command), common, command, fmt);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
