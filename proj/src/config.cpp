#include "sz1d/config.hpp"

#include <cmath>
#include <fstream>

#include "sz1d/catalog.hpp"
#include "sz1d/expr.hpp"
#include "sz1d/interpolation.hpp"

namespace sz1d {

using nlohmann::json;

std::vector<double> SweepSpec::grid() const {
  if (count < 1)
    fail(ErrorCode::invalid_config, "sweep count must be >= 1");
  if (count > 1 && !(min < max))
    fail(ErrorCode::invalid_config, "sweep requires min < max");
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(min);
    return out;
  }
  if (spacing == Spacing::log) {
    if (!(min > 0.0))
      fail(ErrorCode::invalid_config, "log spacing requires min > 0");
    const double ratio = std::log(max / min);
    for (int i = 0; i < count; ++i)
      out.push_back(min * std::exp(ratio * i / (count - 1)));
  } else {
    for (int i = 0; i < count; ++i)
      out.push_back(min + (max - min) * i / (count - 1));
  }
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  fail(ErrorCode::invalid_config, what);
}

double need_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    bad("missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad("field '" + key + "' must be a number");
  return j[key].get<double>();
}

ParamMap params_from(const json& j) {
  ParamMap p;
  if (!j.contains("params")) return p;
  if (!j["params"].is_object()) bad("'params' must be an object");
  for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
    if (!it.value().is_number())
      bad("parameter '" + it.key() + "' must be a number");
    p[it.key()] = it.value().get<double>();
  }
  return p;
}

void apply_common(Potential& pot, const json& j) {
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_array() || d.size() != 2) bad("'domain' must be [x_lo, x_hi]");
    pot.x_lo = d[0].get<double>();
    pot.x_hi = d[1].get<double>();
    if (!(pot.x_lo < pot.x_hi)) bad("'domain' must satisfy x_lo < x_hi");
  }
  pot.tail_tolerance = number_or(j, "tail_tolerance", pot.tail_tolerance);
  if (j.contains("spikes")) {
    if (!j["spikes"].is_array()) bad("'spikes' must be an array");
    pot.spikes.clear();
    for (const auto& s : j["spikes"])
      pot.spikes.push_back(
          {need_number(s, "location"), need_number(s, "strength")});
    std::sort(pot.spikes.begin(), pot.spikes.end(),
              [](const DeltaSpike& a, const DeltaSpike& b) {
                return a.location < b.location;
              });
  }
}

}  // namespace

Potential potential_from_json(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string())
    bad("potential block needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "frequency")
    bad("frequency profiles are loaded as profiles, not potentials");

  Potential pot;
  if (kind == "tabulated") {
    if (!j.contains("points") || !j["points"].is_array() ||
        j["points"].size() < 2)
      bad("tabulated potential needs a 'points' array of [x, V] pairs");
    std::vector<double> xs, ys;
    for (const auto& p : j["points"]) {
      if (!p.is_array() || p.size() != 2) bad("each point must be [x, V]");
      xs.push_back(p[0].get<double>());
      ys.push_back(p[1].get<double>());
    }
    CubicSpline spline(std::move(xs), std::move(ys));
    pot.v = [spline](double x) { return spline(x); };
    pot.dv = [spline](double x) { return spline.derivative(x); };
    pot.x_lo = spline.x_front();
    pot.x_hi = spline.x_back();
    pot.v_minus_inf = spline(spline.x_front());
    pot.v_plus_inf = spline(spline.x_back());
    pot.name = "tabulated";
  } else if (kind == "expression") {
    if (!j.contains("expression") || !j["expression"].is_string())
      bad("expression potential needs an 'expression' string");
    auto f = compile_expression(j["expression"].get<std::string>(), "x");
    pot.v = f;
    pot.name = "expression";
    if (!j.contains("domain")) bad("expression potential needs a 'domain'");
    pot.v_minus_inf = number_or(j, "v_minus_inf", 0.0);
    pot.v_plus_inf = number_or(j, "v_plus_inf", 0.0);
  } else {
    pot = make_catalog_potential(kind, params_from(j));
  }
  apply_common(pot, j);
  return pot;
}

FrequencyProfile profile_from_json(const json& j) {
  if (!j.contains("kind") || j["kind"].get<std::string>() != "frequency")
    bad("profile block needs kind = \"frequency\"");
  if (!j.contains("expression") || !j["expression"].is_string())
    bad("frequency profile needs an 'expression' string in t");
  FrequencyProfile profile;
  profile.omega = compile_expression(j["expression"].get<std::string>(), "t");
  profile.omega_minus_inf = need_number(j, "omega_minus_inf");
  profile.omega_plus_inf = need_number(j, "omega_plus_inf");
  if (!j.contains("domain")) bad("frequency profile needs a 'domain'");
  const auto& d = j["domain"];
  if (!d.is_array() || d.size() != 2) bad("'domain' must be [t_lo, t_hi]");
  profile.t_lo = d[0].get<double>();
  profile.t_hi = d[1].get<double>();
  profile.tail_tolerance = number_or(j, "tail_tolerance", 1e-10);
  profile.name = j.value("name", std::string("frequency"));
  return profile;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    bad("config needs an integer 'schema_version'");
  cfg.schema_version = j["schema_version"].get<int>();
  if (cfg.schema_version != 1)
    bad("unsupported schema_version " + std::to_string(cfg.schema_version));

  if (j.contains("units")) {
    cfg.units.hbar = number_or(j["units"], "hbar", 1.0);
    cfg.units.mass = number_or(j["units"], "mass", 0.5);
    cfg.units.validate();
  }

  if (!j.contains("potential")) bad("config needs a 'potential' block");
  const auto& pj = j["potential"];
  if (pj.value("kind", std::string()) == "frequency")
    cfg.profile = profile_from_json(pj);
  else
    cfg.potential = potential_from_json(pj);

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    cfg.sweep.min = need_number(s, "min");
    cfg.sweep.max = number_or(s, "max", cfg.sweep.min);
    cfg.sweep.count = static_cast<int>(number_or(s, "count", 1));
    const std::string spacing = s.value("spacing", std::string("linear"));
    if (spacing == "linear")
      cfg.sweep.spacing = SweepSpec::Spacing::linear;
    else if (spacing == "log")
      cfg.sweep.spacing = SweepSpec::Spacing::log;
    else
      bad("sweep spacing must be 'linear' or 'log'");
  }

  const std::string phase = j.value("phase", std::string("constant_k"));
  if (phase == "constant_k")
    cfg.phase = PhaseVariant::constant_k;
  else if (phase == "wkb")
    cfg.phase = PhaseVariant::wkb;
  else
    bad("phase must be 'constant_k' or 'wkb'");

  if (j.contains("families")) {
    if (j["families"].is_string() && j["families"] == "all") {
      // empty list = all admissible
    } else if (j["families"].is_array()) {
      for (const auto& f : j["families"])
        cfg.families.push_back(
            bound_family_from_name(f.get<std::string>()));
    } else {
      bad("'families' must be \"all\" or an array of family names");
    }
  }

  if (j.contains("tolerances")) {
    cfg.tolerances.rel_tol =
        number_or(j["tolerances"], "rel", cfg.tolerances.rel_tol);
    cfg.tolerances.abs_tol =
        number_or(j["tolerances"], "abs", cfg.tolerances.abs_tol);
  }

  const std::string output = j.value("output", std::string("csv"));
  if (output == "csv")
    cfg.output = OutputFormat::csv;
  else if (output == "json")
    cfg.output = OutputFormat::json;
  else
    bad("output must be 'csv' or 'json'");

  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::invalid_config, "cannot open config file", "path=" + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_config, std::string("config is not valid JSON: ") + e.what(),
         "path=" + path);
  }
  return config_from_json(j);
}

}  // namespace sz1d
