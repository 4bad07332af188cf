#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcat/errors.hpp"
#include "qcat/sweep.hpp"

namespace qcat {

// All floating-point output goes through one formatter: 12 significant
// digits, infinities as the literal token `inf`.
inline std::string fmt12(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ContractError("bad numeric field: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ContractError("bad numeric field: '" + s + "'");
  }
}

// value rounded to its 12-significant-digit decimal rendering, so that JSON
// numbers round-trip to the same bytes
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  return parse_double(fmt12(x));
}

inline Model model_from_name(const std::string& s) {
  if (s == "cusp") return Model::Cusp;
  if (s == "butterfly") return Model::Butterfly;
  if (s == "molar") return Model::Molar;
  throw ContractError("unknown model name '" + s + "'");
}

inline Method method_from_name(const std::string& s) {
  if (s == "asymptotic") return Method::Asymptotic;
  if (s == "numeric") return Method::Numeric;
  throw ContractError("unknown method name '" + s + "'");
}

// ---------------------------------------------------------------------------
// CSV:  model,mu,param_name,param,entropy_bits,method
// ---------------------------------------------------------------------------

inline std::string to_csv(const SweepResult& sr) {
  std::string out = "model,mu,param_name,param,entropy_bits,method\n";
  for (const auto& pt : sr.points) {
    out += model_name(sr.model);
    out += ',';
    out += fmt12(sr.mu);
    out += ',';
    out += sr.param_name;
    out += ',';
    out += fmt12(pt.param);
    out += ',';
    out += fmt12(pt.entropy_bits);
    out += ',';
    out += method_name(pt.method);
    out += '\n';
  }
  return out;
}

inline SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "model,mu,param_name,param,entropy_bits,method")
    throw ContractError("parse_sweep_csv: bad header");
  SweepResult sr;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ContractError("parse_sweep_csv: bad row: " + line);
    if (first) {
      sr.model = model_from_name(f[0]);
      sr.mu = parse_double(f[1]);
      sr.param_name = f[2];
      first = false;
    }
    sr.points.push_back({parse_double(f[3]), parse_double(f[4]),
                         method_from_name(f[5])});
  }
  return sr;
}

// ---------------------------------------------------------------------------
// JSON (infinities encoded as the string "inf")
// ---------------------------------------------------------------------------

inline nlohmann::json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

inline double json_to_double(const nlohmann::json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

inline nlohmann::json to_json(const SweepResult& sr) {
  nlohmann::json j;
  j["model"] = model_name(sr.model);
  j["mu"] = json_number(sr.mu);
  j["param_name"] = sr.param_name;
  j["points"] = nlohmann::json::array();
  for (const auto& pt : sr.points)
    j["points"].push_back({{"param", json_number(pt.param)},
                           {"entropy_bits", json_number(pt.entropy_bits)},
                           {"method", method_name(pt.method)}});
  return j;
}

inline SweepResult sweep_from_json(const nlohmann::json& j) {
  SweepResult sr;
  sr.model = model_from_name(j.at("model").get<std::string>());
  sr.mu = json_to_double(j.at("mu"));
  sr.param_name = j.at("param_name").get<std::string>();
  for (const auto& pj : j.at("points"))
    sr.points.push_back({json_to_double(pj.at("param")),
                         json_to_double(pj.at("entropy_bits")),
                         method_from_name(pj.at("method").get<std::string>())});
  return sr;
}

inline nlohmann::json to_json(const PowerLawFit& fit) {
  nlohmann::json j;
  j["form"] = fit.form == FitForm::Plain ? "plain" : "offset";
  j["c0"] = json_number(fit.c0);
  j["c1"] = json_number(fit.c1);
  j["residual_rms"] = json_number(fit.residual_rms);
  j["mu_values"] = nlohmann::json::array();
  for (double m : fit.mu_values) j["mu_values"].push_back(json_number(m));
  return j;
}

inline PowerLawFit fit_from_json(const nlohmann::json& j) {
  PowerLawFit fit;
  fit.form = j.at("form").get<std::string>() == "plain" ? FitForm::Plain
                                                        : FitForm::Offset;
  fit.c0 = json_to_double(j.at("c0"));
  fit.c1 = json_to_double(j.at("c1"));
  fit.residual_rms = json_to_double(j.at("residual_rms"));
  for (const auto& m : j.at("mu_values"))
    fit.mu_values.push_back(json_to_double(m));
  return fit;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace qcat
