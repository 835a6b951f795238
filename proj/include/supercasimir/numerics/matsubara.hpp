#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include "supercasimir/errors.hpp"
#include "supercasimir/numerics/compensated_sum.hpp"
#include "supercasimir/numerics/parallel.hpp"

namespace supercasimir::numerics {

struct SumDiagnostics {
  std::size_t terms_used = 0;
  double last_term_ratio = 0.0;   // |last term| / |partial sum|
  double truncation_bound = 0.0;  // geometric estimate of the discarded tail
};

struct MatsubaraOptions {
  double cutoff_ratio = 1e-10;
  double tol_abs = 1e-12;
  std::size_t max_terms = 50'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

// A term together with the error bound of whatever computed it.
struct TermValue {
  double value = 0.0;
  double error = 0.0;
};

struct MatsubaraResult {
  double value = 0.0;
  double term_error = 0.0;  // weighted sum of per-term error bounds
  SumDiagnostics diagnostics;
};

/// Primed Matsubara sum  term(0)/2 + sum_{l>=1} term(l).
///
/// Terms are evaluated in parallel blocks but accumulated strictly in index
/// order with compensated addition, so the result does not depend on the
/// thread count. Summation stops at the first l >= 2 for which
/// |term(l)| <= cutoff_ratio*|partial| and the geometric tail estimate
/// |term(l)|*rho/(1-rho), rho = |term(l)/term(l-1)|, is below tol_abs.
/// `term` may return double or TermValue.
template <class Term>
MatsubaraResult matsubara_sum(Term&& term, const MatsubaraOptions& options = {}) {
  using Raw = std::invoke_result_t<Term&, std::size_t>;
  constexpr bool kHasError = std::is_same_v<std::decay_t<Raw>, TermValue>;
  auto as_term = [](const Raw& r) -> TermValue {
    if constexpr (kHasError) {
      return r;
    } else {
      return TermValue{static_cast<double>(r), 0.0};
    }
  };

  CompensatedSum partial;
  CompensatedSum errors;
  double previous = 0.0;
  std::size_t next = 0;
  std::size_t block = 32;
  std::vector<TermValue> values;
  constexpr std::size_t kMaxBlock = 16384;

  while (next < options.max_terms) {
    const std::size_t count = std::min(block, options.max_terms - next);
    values.assign(count, TermValue{});
    parallel_for(count, options.threads,
                 [&](std::size_t i) { values[i] = as_term(term(next + i)); });
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t l = next + i;
      const double weight = (l == 0) ? 0.5 : 1.0;
      const double t = weight * values[i].value;
      partial += t;
      errors += weight * values[i].error;
      if (l >= 2) {
        const double magnitude = std::abs(t);
        const double sum = std::abs(partial.value());
        const double ratio = sum > 0.0 ? magnitude / sum
                                       : (magnitude == 0.0 ? 0.0
                                                           : std::numeric_limits<double>::infinity());
        const double rho = previous != 0.0
                               ? magnitude / std::abs(previous)
                               : (magnitude == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        const double tail = rho < 1.0 ? magnitude * rho / (1.0 - rho)
                                      : std::numeric_limits<double>::infinity();
        if (ratio <= options.cutoff_ratio && tail <= options.tol_abs) {
          return {partial.value(), errors.value(), SumDiagnostics{l + 1, ratio, tail}};
        }
      }
      previous = t;
    }
    next += count;
    block = std::min(block * 2, kMaxBlock);
  }
  throw NumericalError("matsubara sum: terms did not decay within the term budget",
                       partial.value(), std::abs(previous));
}

}  // namespace supercasimir::numerics
