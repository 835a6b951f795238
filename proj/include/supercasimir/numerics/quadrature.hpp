#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/numerics/compensated_sum.hpp"

namespace supercasimir::numerics {

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double tol_rel = 1e-10;
  double tol_abs = 0.0;
  std::size_t max_subdivisions = 4000;
};

// How the infinite range of integrate_semi_infinite is covered.
//  exp_decay: consecutive panels of doubling width, stopped once two panels in
//             a row are negligible; suited to integrands decaying like e^{-t}.
//  algebraic: t = lower + u/(1-u) onto [0,1); suited to power-law tails.
enum class TailTransform { exp_decay, algebraic };

namespace detail {

// 21-point Kronrod rule with its embedded 10-point Gauss rule.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980898318, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[10] * fc;
  double absolute = std::abs(kronrod);
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    absolute += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  absolute *= std::abs(half);
  // |K - G| bounds the Gauss error and hence, very conservatively, the
  // Kronrod error; the second term is a floor for accumulated rounding.
  const double error = std::abs(kronrod - gauss) +
                       50.0 * std::numeric_limits<double>::epsilon() * absolute;
  return {a, b, kronrod, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21/10) integration of f over the
/// intervals delimited by `breakpoints` (ascending or descending).
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate falls below max(tol_abs, tol_rel*|value|). Throws NumericalError
/// carrying the best estimate when max_subdivisions is exhausted.
template <class F>
QuadResult integrate(F&& f, std::span<const double> breakpoints, const QuadOptions& options = {}) {
  if (breakpoints.size() < 2) throw DomainError("quadrature: need at least two breakpoints");
  std::priority_queue<detail::Segment> heap;
  std::size_t evaluations = 0;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i] == breakpoints[i + 1]) continue;
    const detail::Segment segment = detail::kronrod21(f, breakpoints[i], breakpoints[i + 1]);
    evaluations += 21;
    value += segment.value;
    error += segment.error;
    heap.push(segment);
  }
  if (heap.empty()) return {0.0, 0.0, 0};
  std::size_t subdivisions = 0;
  while (error > std::max(options.tol_abs, options.tol_rel * std::abs(value))) {
    if (subdivisions >= options.max_subdivisions) {
      throw NumericalError("quadrature: subdivision budget exhausted", value, error);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      throw NumericalError("quadrature: interval collapsed below machine resolution", value,
                           error);
    }
    const detail::Segment left = detail::kronrod21(f, worst.a, mid);
    const detail::Segment right = detail::kronrod21(f, mid, worst.b);
    evaluations += 42;
    ++subdivisions;
    value += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
    // Running updates drift; resum exactly every so often.
    if (subdivisions % 64 == 0) {
      auto copy = heap;
      CompensatedSum v;
      CompensatedSum e;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      value = v.value();
      error = e.value();
    }
  }
  // Final value from a compensated resummation in a fixed (left-to-right) order.
  std::vector<detail::Segment> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const detail::Segment& x, const detail::Segment& y) { return x.a < y.a; });
  CompensatedSum v;
  CompensatedSum e;
  for (const auto& s : parts) {
    v += s.value;
    e += s.error;
  }
  return {v.value(), e.value(), evaluations};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& options = {}) {
  const std::array<double, 2> ends = {a, b};
  return integrate(f, std::span<const double>(ends), options);
}

/// Integral of f over [lower, infinity).
///
/// For exp_decay, `scale` is the width of the first panel and should be of
/// the order of the decay length; the reported bound includes the size of the
/// last (discarded-beyond) panel as a tail allowance.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double lower, TailTransform transform,
                                   const QuadOptions& options = {}, double scale = 1.0) {
  if (transform == TailTransform::algebraic) {
    auto mapped = [&](double u) {
      const double one_minus = 1.0 - u;
      return f(lower + u / one_minus) / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, options);
  }

  constexpr int kMaxPanels = 80;
  QuadOptions panel_options = options;
  CompensatedSum total;
  CompensatedSum error;
  std::size_t evaluations = 0;
  double start = lower;
  double width = scale;
  int negligible_streak = 0;
  double last_panel = 0.0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    // Later panels only need accuracy relative to what is already summed.
    panel_options.tol_abs =
        std::max(0.1 * options.tol_abs, 0.05 * options.tol_rel * std::abs(total.value()));
    const QuadResult part = integrate(f, start, start + width, panel_options);
    total += part.value;
    error += part.error_bound;
    evaluations += part.evaluations;
    last_panel = std::abs(part.value) + part.error_bound;
    const double target = std::max(options.tol_abs, options.tol_rel * std::abs(total.value()));
    negligible_streak = (last_panel <= 0.1 * target) ? negligible_streak + 1 : 0;
    if (negligible_streak >= 2) {
      error += last_panel;
      return {total.value(), error.value(), evaluations};
    }
    start += width;
    if (panel > 0) width *= 2.0;
  }
  throw NumericalError("semi-infinite quadrature: integrand did not decay", total.value(),
                       error.value() + last_panel);
}

}  // namespace supercasimir::numerics
