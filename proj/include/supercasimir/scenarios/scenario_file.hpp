#pragma once

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
#include "supercasimir/scenarios/material_db.hpp"
#include "supercasimir/scenarios/sweep.hpp"

namespace supercasimir {

namespace detail {

struct IniValue {
  std::string text;
  int line = 0;
};

struct IniSection {
  std::string name;   // "cavity", "series", ...
  std::string label;  // text after the name, e.g. [series eps0=10]
  int line = 0;
  std::vector<std::pair<std::string, IniValue>> entries;

  const IniValue* find(std::string_view key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

inline std::vector<IniSection> parse_ini(std::string_view text) {
  std::vector<IniSection> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const std::string_view inner = trim(line.substr(1, line.size() - 2));
      const auto space = inner.find_first_of(" \t");
      IniSection s;
      s.name = std::string(inner.substr(0, space));
      if (space != std::string_view::npos) s.label = std::string(trim(inner.substr(space)));
      s.line = line_no;
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    if (sections.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError("empty key or value", line_no);
    auto& section = sections.back();
    if (section.find(key)) throw ConfigError("key '" + key + "' given twice", line_no);
    section.entries.push_back({key, {value, line_no}});
  }
  return sections;
}

inline void check_keys(const IniSection& s, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : s.entries) {
    if (!allowed.count(k)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError("unknown key '" + k + "' in [" + s.name + "] (allowed: " + list + ")", v.line);
    }
  }
}

// Runs fn, re-throwing configuration and domain errors with the line number.
template <class Fn>
auto at_line(int line, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    throw ConfigError(e.what(), line);
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), line);
  }
}

inline std::vector<double> parse_list(const IniValue& v) {
  std::vector<double> out;
  std::string_view rest = v.text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma), "points", v.line));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

}  // namespace detail

/// Parses a scenario file:
///
///   [scenario]  name
///   [cavity]    a_nm, T_K | T_over_Tc, T_ref_K
///   [mirror1]   material, w_nm, substrate          (same for [mirror2])
///   [sweep]     axis, points | from,to,count,scale, mode, output
///   [series L]  overrides (a_nm, T_K, T_over_Tc, rrr_sc, rrr_au, core_eps,
///               substrate_eps, sc_model); one curve per section
///
/// Without [sweep] the result has no points; with require_sweep the section
/// is mandatory.
inline SweepSpec parse_scenario(std::string_view text, const MaterialCatalog& catalog,
                                bool require_sweep = true) {
  using detail::at_line;
  const auto sections = detail::parse_ini(text);
  const detail::IniSection* scenario = nullptr;
  const detail::IniSection* cavity = nullptr;
  const detail::IniSection* mirrors[2] = {nullptr, nullptr};
  const detail::IniSection* sweep = nullptr;
  std::vector<const detail::IniSection*> series;
  for (const auto& s : sections) {
    const detail::IniSection** slot = nullptr;
    if (s.name == "scenario") slot = &scenario;
    else if (s.name == "cavity") slot = &cavity;
    else if (s.name == "mirror1") slot = &mirrors[0];
    else if (s.name == "mirror2") slot = &mirrors[1];
    else if (s.name == "sweep") slot = &sweep;
    else if (s.name == "series") {
      if (s.label.empty()) throw ConfigError("[series] needs a label, e.g. [series eps0=10]", s.line);
      for (const auto* other : series) {
        if (other->label == s.label) throw ConfigError("duplicate series '" + s.label + "'", s.line);
      }
      series.push_back(&s);
      continue;
    } else {
      throw ConfigError("unknown section [" + s.name + "] (scenario, cavity, mirror1, mirror2, sweep, series)",
                        s.line);
    }
    if (!s.label.empty()) throw ConfigError("section [" + s.name + "] takes no label", s.line);
    if (*slot) throw ConfigError("section [" + s.name + "] given twice", s.line);
    *slot = &s;
  }
  if (!cavity) throw ConfigError("missing section [cavity]");
  for (int i = 0; i < 2; ++i) {
    if (!mirrors[i]) throw ConfigError("missing section [mirror" + std::to_string(i + 1) + "]");
  }
  if (require_sweep && !sweep) throw ConfigError("missing section [sweep]");

  SweepSpec spec;
  if (scenario) {
    detail::check_keys(*scenario, {"name"});
    if (const auto* n = scenario->find("name")) spec.name = n->text;
  }

  CavityConfig base;
  Mirror* targets[2] = {&base.mirror1, &base.mirror2};
  for (int i = 0; i < 2; ++i) {
    const auto& m = *mirrors[i];
    detail::check_keys(m, {"material", "w_nm", "substrate"});
    const auto* material = m.find("material");
    if (!material) throw ConfigError("[" + m.name + "] needs 'material'", m.line);
    const MaterialModel top = at_line(material->line, [&] { return catalog.get(material->text); });
    const auto* w = m.find("w_nm");
    const auto* sub = m.find("substrate");
    if (!w) {
      if (sub) throw ConfigError("'substrate' needs 'w_nm'", sub->line);
      *targets[i] = HalfSpace{top};
    } else {
      const double thickness = detail::parse_number(w->text, "w_nm", w->line);
      MaterialModel substrate = Vacuum{};
      if (sub) substrate = at_line(sub->line, [&] { return catalog.get(sub->text); });
      *targets[i] = Film{top, thickness, substrate};
    }
    at_line(m.line, [&] { validate(*targets[i]); return 0; });
  }

  detail::check_keys(*cavity, {"a_nm", "T_K", "T_over_Tc", "T_ref_K"});
  const auto* a = cavity->find("a_nm");
  if (!a) throw ConfigError("[cavity] needs 'a_nm'", cavity->line);
  at_line(a->line, [&] { apply_override(base, "a_nm", a->text); return 0; });
  const auto* tk = cavity->find("T_K");
  const auto* tr = cavity->find("T_over_Tc");
  if (tk && tr) throw ConfigError("give either T_K or T_over_Tc, not both", tr->line);
  std::optional<double> t_ref;
  if (const auto* r = cavity->find("T_ref_K")) {
    t_ref = detail::parse_number(r->text, "T_ref_K", r->line);
    if (!(*t_ref > 0)) throw ConfigError("T_ref_K must be > 0", r->line);
  }
  auto set_temperature = [&](CavityConfig& c) {
    if (tk) at_line(tk->line, [&] { apply_override(c, "T_K", tk->text); return 0; });
    if (tr) at_line(tr->line, [&] { apply_override(c, "T_over_Tc", tr->text); return 0; });
  };
  set_temperature(base);

  if (series.empty()) {
    spec.series.push_back({"base", base, t_ref});
  } else {
    for (const auto* s : series) {
      detail::check_keys(*s, {"a_nm", "T_K", "T_over_Tc", "rrr_sc", "rrr_au", "core_eps",
                              "substrate_eps", "sc_model"});
      CavityConfig c = base;
      for (const auto& [k, v] : s->entries) {
        if (k == "T_K" || k == "T_over_Tc") continue;
        at_line(v.line, [&] { apply_override(c, k, v.text); return 0; });
      }
      // Temperatures last, so T_over_Tc sees the final materials.
      bool own_temperature = false;
      for (const auto& [k, v] : s->entries) {
        if (k == "T_K" || k == "T_over_Tc") {
          at_line(v.line, [&] { apply_override(c, k, v.text); return 0; });
          own_temperature = true;
        }
      }
      if (!own_temperature) set_temperature(c);
      spec.series.push_back({s->label, c, t_ref});
    }
  }

  if (sweep) {
    detail::check_keys(*sweep, {"axis", "points", "from", "to", "count", "scale", "mode", "output"});
    const auto* axis = sweep->find("axis");
    if (!axis) throw ConfigError("[sweep] needs 'axis'", sweep->line);
    spec.axis = at_line(axis->line, [&] { return parse_axis(axis->text); });
    if (const auto* m = sweep->find("mode")) spec.mode = at_line(m->line, [&] { return parse_mode(m->text); });
    if (const auto* o = sweep->find("output")) {
      spec.output = at_line(o->line, [&] { return parse_output(o->text); });
    }
    const auto* points = sweep->find("points");
    const auto* from = sweep->find("from");
    const auto* to = sweep->find("to");
    const auto* count = sweep->find("count");
    const auto* scale = sweep->find("scale");
    if (points) {
      if (from || to || count || scale) {
        throw ConfigError("give either 'points' or from/to/count/scale", points->line);
      }
      spec.points = detail::parse_list(*points);
    } else {
      if (!from || !to || !count) throw ConfigError("[sweep] needs 'points' or from, to and count", sweep->line);
      const double f = detail::parse_number(from->text, "from", from->line);
      const double t = detail::parse_number(to->text, "to", to->line);
      const double n = detail::parse_number(count->text, "count", count->line);
      if (!(n >= 1) || n != std::floor(n) || n > 100000) {
        throw ConfigError("count must be a positive integer", count->line);
      }
      const std::string sc = scale ? scale->text : "lin";
      if (sc != "lin" && sc != "log") throw ConfigError("scale must be lin or log", scale->line);
      spec.points = at_line(sweep->line, [&] {
        return sc == "lin" ? linear_grid(f, t, static_cast<std::size_t>(n))
                           : log_grid(f, t, static_cast<std::size_t>(n));
      });
    }
    at_line(sweep->line, [&] { validate(spec); return 0; });
  }
  return spec;
}

inline SweepSpec load_scenario(const std::string& path, const MaterialCatalog& catalog,
                               bool require_sweep = true) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str(), catalog, require_sweep);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace supercasimir
