#pragma once

// JSON payloads (all carry "format": 1) and CSV output.

#include <string>

#include <nlohmann/json.hpp>

#include "chaut/dynamics.hpp"

namespace chaut {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

Json to_json(const CellularComplex& c);
Json to_json(const PWLFunction& f);
Json to_json(const CombinatorialIso& iso);
Json to_json(const PiecewiseFractionalMap& map, const AutomorphismCert* cert = nullptr);

/// With `validate`, rejects complexes that fail validate_complex (InvalidComplex).
CellularComplex complex_from_json(const Json& j, bool validate = true);
PWLFunction function_from_json(const Json& j);
CombinatorialIso iso_from_json(const Json& j);
PiecewiseFractionalMap map_from_json(const Json& j);

Json parse_json(const std::string& text);
Json load_json(const std::string& path);

std::string orbit_csv(const OrbitRecord& orbit);
std::string histogram_csv(const EmpiricalMeasure& m);

}  // namespace chaut
