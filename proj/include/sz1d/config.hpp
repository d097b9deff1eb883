#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sz1d/bounds.hpp"
#include "sz1d/engine.hpp"
#include "sz1d/parametric.hpp"
#include "sz1d/potential.hpp"

namespace sz1d {

// Declarative run description, schema_version 1. The potential block takes
// kind = <catalog name> | "tabulated" | "expression" | "frequency"; the CSV
// and JSON emitters mirror each other column for column.
struct SweepSpec {
  double min = 1.0;
  double max = 1.0;
  int count = 1;
  enum class Spacing { linear, log } spacing = Spacing::linear;

  std::vector<double> grid() const;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  int schema_version = 1;
  UnitsConfig units;
  std::optional<Potential> potential;
  std::optional<FrequencyProfile> profile;
  SweepSpec sweep;
  PhaseVariant phase = PhaseVariant::constant_k;
  std::vector<BoundFamily> families;  // empty = every admissible family
  IntegratorOptions tolerances;
  OutputFormat output = OutputFormat::csv;
  std::uint64_t seed = 20240817;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);

Potential potential_from_json(const nlohmann::json& j);
FrequencyProfile profile_from_json(const nlohmann::json& j);

}  // namespace sz1d
