#pragma once

#include <json.hpp>

#include <string>

#include "dha/lattice.hpp"

namespace dha {

// {"dim": N, "radius": R, "values": [...]} with row-major values; complex values are [re, im] pairs.
nlohmann::json to_json(const RealSequence& f);
nlohmann::json to_json(const ComplexSequence& f);

RealSequence real_sequence_from_json(const nlohmann::json& j);
ComplexSequence complex_sequence_from_json(const nlohmann::json& j);

RealSequence read_sequence_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace dha
