#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"
#include "supercasimir/materials/permittivity.hpp"
#include "supercasimir/numerics/parallel.hpp"
#include "supercasimir/scenarios/sweep.hpp"

namespace supercasimir {

enum class ResponseKind { g_function, permittivity };

/// Material response curves on the imaginary axis versus xi / 2 Delta(0).
struct ResponseSpec {
  std::string name;
  ResponseKind kind = ResponseKind::g_function;
  BcsParams material;
  std::vector<double> T_over_Tc;
  std::vector<double> xi_over_2gap;
  unsigned threads = 0;
};

struct ResponseTable {
  std::string scenario;
  std::vector<std::string> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// g is evaluated directly (no table) so these curves double as a reference.
inline ResponseTable run_response(const ResponseSpec& spec) {
  if (spec.T_over_Tc.empty() || spec.xi_over_2gap.empty()) {
    throw ConfigError("response: empty temperature or frequency grid");
  }
  spec.material.validate();
  const double two_gap0 = 2.0 * zero_temperature_gap(spec.material.tc_K);
  ResponseTable table;
  table.scenario = spec.name;
  table.parameters = {"kind=" + std::string(spec.kind == ResponseKind::g_function ? "g" : "permittivity"),
                      "material=" + describe(Bcs{spec.material}),
                      "two_gap0_eV=" + detail::exact(two_gap0)};
  table.columns = {"series", "T_over_Tc", "xi_over_2Delta0", "xi_eV"};
  if (spec.kind == ResponseKind::g_function) {
    table.columns.push_back("g");
  } else {
    for (const char* c : {"eps_bcs", "eps_twofluid", "eps_drude"}) table.columns.push_back(c);
  }
  for (double t : spec.T_over_Tc) {
    if (!(t > 0 && t <= 1)) throw ConfigError("response: T_over_Tc must be in (0, 1]");
    const double T = t * spec.material.tc_K;
    std::vector<std::vector<std::string>> block(spec.xi_over_2gap.size());
    numerics::parallel_for(block.size(), spec.threads, [&](std::size_t i) {
      const double x = spec.xi_over_2gap[i];
      const double xi = x * two_gap0;
      const double g = g_function(xi, T, spec.material);
      std::vector<std::string> row = {"T_over_Tc=" + detail::exact(t), detail::sci(t),
                                      detail::sci(x), detail::sci(xi)};
      if (spec.kind == ResponseKind::g_function) {
        row.push_back(detail::sci(g));
      } else {
        row.push_back(detail::sci(bcs_permittivity(spec.material, xi, g)));
        row.push_back(detail::sci(two_fluid_permittivity(spec.material, xi, T)));
        row.push_back(detail::sci(drude_permittivity(spec.material.drude, xi)));
      }
      block[i] = std::move(row);
    });
    for (auto& r : block) table.rows.push_back(std::move(r));
  }
  return table;
}

inline void write_csv(std::ostream& out, const ResponseTable& table) {
  write_csv_header(out, table.scenario, table.parameters, table.columns);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

inline std::string to_csv(const ResponseTable& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

}  // namespace supercasimir
