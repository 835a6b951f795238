#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/materials/bcs_gap.hpp"
#include "supercasimir/materials/g_function.hpp"
#include "supercasimir/numerics/monotone_cubic.hpp"
#include "supercasimir/numerics/parallel.hpp"

namespace supercasimir {

struct GTableOptions {
  double tol = 1e-10;          // absolute interpolation tolerance on g
  double xi_min_eV = 0.0;      // 0: 1e-3 * 2 Delta(T)
  double xi_max_eV = 0.0;      // 0: 1e3 * 2 Delta(0); extended until g(xi_max) < tol
  int nodes_per_decade = 8;    // initial grid density before refinement
  std::size_t max_nodes = 20000;
  unsigned threads = 0;
  GOptions g;                  // direct evaluation; tol_abs is capped at tol/100
};

/// Cached g(xi; T) for one superconductor at one temperature.
///
/// Nodes are log-spaced in xi and refined by bisection until the monotone
/// cubic interpolant (in ln xi) agrees with direct evaluation at the quarter,
/// half and three-quarter points of every interval to within tol/2. Queries below xi_min fall back to direct
/// evaluation, queries above xi_max return 0 (g(xi_max) < tol is enforced).
class GTable {
 public:
  GTable() = default;

  static GTable build(const BcsParams& params, double T_K, GTableOptions options = {}) {
    if (!(options.tol > 0)) throw DomainError("g_table: tol must be > 0");
    params.validate();
    GTable table;
    table.params_ = params;
    table.T_K_ = T_K;
    table.g_options_ = options.g;
    table.g_options_.tol_abs = std::min(options.g.tol_abs, options.tol / 100.0);
    const double gap = bcs_gap(params.tc_K, T_K);
    if (T_K >= params.tc_K || gap == 0.0) {
      table.zero_ = true;
      return table;
    }
    table.g0_ = g_function(0.0, T_K, params, table.g_options_);

    const double xi_min = options.xi_min_eV > 0 ? options.xi_min_eV : 2e-3 * gap;
    double xi_max = options.xi_max_eV > 0 ? options.xi_max_eV
                                          : 2e3 * zero_temperature_gap(params.tc_K);
    xi_max = std::max(xi_max, 10.0 * xi_min);

    std::map<double, double> cache;  // ln xi -> g
    auto evaluate = [&](const std::vector<double>& us) {
      std::vector<double> missing;
      for (double u : us) {
        if (!cache.count(u)) missing.push_back(u);
      }
      std::vector<double> values(missing.size());
      numerics::parallel_for(missing.size(), options.threads, [&](std::size_t i) {
        values[i] = g_function(std::exp(missing[i]), T_K, params, table.g_options_);
      });
      for (std::size_t i = 0; i < missing.size(); ++i) cache[missing[i]] = values[i];
    };

    const double u_min = std::log(xi_min);
    double u_max = std::log(xi_max);
    const double du = std::log(10.0) / options.nodes_per_decade;
    std::vector<double> nodes;
    auto append_range = [&](double from, double to) {
      const auto n = static_cast<int>(std::ceil((to - from) / du));
      for (int i = nodes.empty() ? 0 : 1; i <= n; ++i) nodes.push_back(from + (to - from) * i / n);
    };
    append_range(u_min, u_max);
    u_max = nodes.back();
    evaluate({u_max});
    for (int extensions = 0; std::abs(cache[u_max]) >= options.tol; ++extensions) {
      if (extensions >= 12) {
        throw NumericalError("g_table: g does not fall below tol at large xi", cache[u_max],
                             options.tol);
      }
      const double next = u_max + std::log(10.0);
      append_range(u_max, next);
      u_max = nodes.back();
      evaluate({u_max});
    }
    evaluate(nodes);

    double worst = 0.0;
    while (true) {
      std::vector<double> values;
      for (double u : nodes) values.push_back(cache[u]);
      numerics::MonotoneCubic spline(nodes, values);
      // The midpoint alone can sit near a zero of the interpolation error, so
      // the quarter points are probed too; after a bisection they become the
      // new midpoints and are already cached.
      std::vector<double> probes;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double h = nodes[i + 1] - nodes[i];
        for (double f : {0.25, 0.5, 0.75}) probes.push_back(nodes[i] + f * h);
      }
      evaluate(probes);
      std::vector<double> refined;
      worst = 0.0;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        refined.push_back(nodes[i]);
        double error = 0.0;
        for (std::size_t k = 3 * i; k < 3 * i + 3; ++k) {
          error = std::max(error, std::abs(spline(probes[k]) - cache[probes[k]]));
        }
        worst = std::max(worst, error);
        if (error > 0.5 * options.tol) refined.push_back(probes[3 * i + 1]);
      }
      refined.push_back(nodes.back());
      if (refined.size() == nodes.size()) {
        table.spline_ = std::move(spline);
        break;
      }
      if (refined.size() > options.max_nodes) {
        throw NumericalError("g_table: node budget exhausted before reaching tol", worst,
                             options.tol);
      }
      nodes = std::move(refined);
    }
    table.max_probe_error_ = worst;
    table.xi_min_ = xi_min;
    table.xi_max_ = std::exp(u_max);
    table.tail_bound_ = std::abs(cache[u_max]);
    return table;
  }

  double operator()(double xi_eV) const {
    if (zero_) return 0.0;
    if (xi_eV == 0.0) return g0_;
    if (xi_eV < xi_min_) return g_function(xi_eV, T_K_, params_, g_options_);
    if (xi_eV > xi_max_) return 0.0;
    return spline_(std::log(xi_eV));
  }

  bool identically_zero() const { return zero_; }
  double g0() const { return g0_; }
  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_max_; }
  double tail_bound() const { return tail_bound_; }
  double max_probe_error() const { return max_probe_error_; }
  std::size_t size() const { return spline_.nodes().size(); }
  // Node abscissae are ln(xi / eV).
  std::span<const double> log_nodes() const { return spline_.nodes(); }
  std::span<const double> node_values() const { return spline_.values(); }

 private:
  BcsParams params_;
  double T_K_ = 0.0;
  GOptions g_options_;
  bool zero_ = false;
  double g0_ = 0.0;
  double xi_min_ = 0.0;
  double xi_max_ = 0.0;
  double tail_bound_ = 0.0;
  double max_probe_error_ = 0.0;
  numerics::MonotoneCubic spline_;
};

}  // namespace supercasimir
