#include "dha/lattice_io.hpp"

#include <fstream>

namespace dha {

using nlohmann::json;

json to_json(const RealSequence& f) {
  json vals = json::array();
  for (Index i = 0; i < f.size(); ++i) vals.push_back(f[i]);
  return json{{"dim", f.dim()}, {"radius", f.radius()}, {"values", std::move(vals)}};
}

json to_json(const ComplexSequence& f) {
  json vals = json::array();
  for (Index i = 0; i < f.size(); ++i) vals.push_back({f[i].real(), f[i].imag()});
  return json{{"dim", f.dim()}, {"radius", f.radius()}, {"complex", true}, {"values", std::move(vals)}};
}

namespace {
Window window_of(const json& j) {
  require(j.contains("dim") && j.contains("radius") && j.contains("values"),
          "sequence JSON needs dim, radius and values");
  Window w(j.at("dim").get<int>(), j.at("radius").get<int>());
  require(j.at("values").is_array() && static_cast<Index>(j.at("values").size()) == w.size(),
          "sequence JSON value count does not match (2R+1)^N");
  return w;
}
}  // namespace

RealSequence real_sequence_from_json(const json& j) {
  const Window w = window_of(j);
  RealSequence f(w);
  const auto& v = j.at("values");
  for (Index i = 0; i < w.size(); ++i) f[i] = v[i].get<double>();
  require(f.all_finite(), "sequence values must be finite");
  return f;
}

ComplexSequence complex_sequence_from_json(const json& j) {
  const Window w = window_of(j);
  ComplexSequence f(w);
  const auto& v = j.at("values");
  for (Index i = 0; i < w.size(); ++i) {
    if (v[i].is_array())
      f[i] = cdouble(v[i].at(0).get<double>(), v[i].at(1).get<double>());
    else
      f[i] = v[i].get<double>();
  }
  require(f.all_finite(), "sequence values must be finite");
  return f;
}

RealSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
  return real_sequence_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace dha
