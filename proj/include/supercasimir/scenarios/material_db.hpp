#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/materials/material_model.hpp"

namespace supercasimir {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Whole-string strtod; anything else (trailing junk, inf, nan) is rejected.
inline double parse_number(std::string_view text, std::string_view what, int line = 0) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": not a finite number: '" + s + "'", line);
  }
  return v;
}

}  // namespace detail

struct MaterialEntry {
  std::string name;
  MaterialModel model;
};

/// Named materials. "vacuum" is always available and cannot be redefined.
class MaterialCatalog {
 public:
  MaterialCatalog() = default;
  explicit MaterialCatalog(std::vector<MaterialEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<MaterialEntry>& entries() const { return entries_; }

  const MaterialModel* find(std::string_view name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return &e.model;
    }
    return nullptr;
  }

  MaterialModel get(std::string_view name) const {
    if (name == "vacuum") return Vacuum{};
    if (const auto* m = find(name)) return *m;
    std::string known = "vacuum";
    for (const auto& e : entries_) known += ", " + e.name;
    throw ConfigError("unknown material '" + std::string(name) + "' (known: " + known + ")");
  }

 private:
  std::vector<MaterialEntry> entries_;
};

/// Parses the material database: one record per line as whitespace-separated
/// key=value pairs, '#' starts a comment. Keys: name, model (drude | bcs |
/// twofluid | dielectric | perfect), eps0, omega_p_eV, gamma0_eV, rrr, tc_K, eps.
inline MaterialCatalog parse_materials(std::string_view text) {
  static const std::set<std::string> kKeys = {"name",      "model", "eps0", "omega_p_eV",
                                              "gamma0_eV", "rrr",   "tc_K", "eps"};
  std::vector<MaterialEntry> entries;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    std::map<std::string, std::string> fields;
    std::istringstream tokens{std::string(line)};
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
        throw ConfigError("expected key=value, got '" + token + "'", line_no);
      }
      std::string key = token.substr(0, eq);
      if (!kKeys.count(key)) throw ConfigError("unknown key '" + key + "'", line_no);
      if (!fields.emplace(key, token.substr(eq + 1)).second) {
        throw ConfigError("key '" + key + "' given twice", line_no);
      }
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
      auto it = fields.find(key);
      if (it == fields.end()) return std::nullopt;
      std::string v = it->second;
      fields.erase(it);
      return v;
    };
    auto number = [&](const std::string& key, std::optional<double> fallback) {
      auto v = take(key);
      if (!v) {
        if (fallback) return *fallback;
        throw ConfigError("missing key '" + key + "'", line_no);
      }
      return detail::parse_number(*v, key, line_no);
    };

    const auto name = take("name");
    if (!name) throw ConfigError("missing key 'name'", line_no);
    if (*name == "vacuum") throw ConfigError("'vacuum' is built in and cannot be redefined", line_no);
    const auto kind = take("model");
    if (!kind) throw ConfigError("missing key 'model'", line_no);

    MaterialModel model;
    if (*kind == "drude" || *kind == "bcs" || *kind == "twofluid") {
      DrudeParams d;
      d.eps0 = number("eps0", 1.0);
      d.omega_p_eV = number("omega_p_eV", std::nullopt);
      d.gamma0_eV = number("gamma0_eV", std::nullopt);
      d.rrr = number("rrr", 1.0);
      if (*kind == "drude") {
        model = Drude{d};
      } else {
        const BcsParams b{d, number("tc_K", std::nullopt)};
        model = *kind == "bcs" ? MaterialModel{Bcs{b}} : MaterialModel{TwoFluid{b}};
      }
    } else if (*kind == "dielectric") {
      model = ConstantDielectric{number("eps", std::nullopt)};
    } else if (*kind == "perfect") {
      model = PerfectConductor{};
    } else {
      throw ConfigError("unknown model '" + *kind + "' (drude, bcs, twofluid, dielectric, perfect)",
                        line_no);
    }
    if (!fields.empty()) {
      throw ConfigError("key '" + fields.begin()->first + "' does not apply to model '" + *kind + "'",
                        line_no);
    }
    try {
      validate(model);
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), line_no);
    }
    if (auto [it, inserted] = seen.emplace(*name, line_no); !inserted) {
      throw ConfigError("duplicate material '" + *name + "' (first defined on line " +
                            std::to_string(it->second) + ")",
                        line_no);
    }
    entries.push_back({*name, std::move(model)});
  }
  if (entries.empty()) throw ConfigError("no materials");
  return MaterialCatalog(std::move(entries));
}

inline MaterialCatalog load_materials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material database '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_materials(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// Same records as data/materials.db.
inline constexpr std::string_view kDefaultMaterials = R"(# Room-temperature optical data; gamma = gamma0_eV / rrr.
name=Au    model=drude      eps0=6.3  omega_p_eV=9    gamma0_eV=0.035 rrr=1
name=Al    model=bcs        eps0=1.03 omega_p_eV=13   gamma0_eV=0.1   rrr=1    tc_K=1.2
name=NbTiN model=bcs        eps0=1    omega_p_eV=5.33 gamma0_eV=0.465 rrr=1.12 tc_K=13.6
# static permittivity of silicon nitride
name=SiN   model=dielectric eps=7.6
name=ideal model=perfect
)";

inline const MaterialCatalog& default_catalog() {
  static const MaterialCatalog catalog = parse_materials(kDefaultMaterials);
  return catalog;
}

/// Catalog from SUPERCASIMIR_MATERIALS when set, else the built-in records.
inline MaterialCatalog environment_catalog() {
  if (const char* path = std::getenv("SUPERCASIMIR_MATERIALS"); path && *path) {
    return load_materials(path);
  }
  return default_catalog();
}

}  // namespace supercasimir
