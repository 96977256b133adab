#include "ztnd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ztnd/errors.hpp"

namespace ztnd {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Negligible: return "Negligible";
    case Classification::Bounded: return "Bounded";
    case Classification::Divergent: return "Divergent";
  }
  return "Unknown";
}

RunSummary summarize(std::span<const double> times, std::span<const double> values,
                     Termination terminated, const SummaryOptions& opts) {
  if (times.empty() || values.empty()) throw EmptyTrace("cannot summarize an empty trace");
  if (times.size() != values.size()) throw DimensionMismatch("times and values differ in length");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction < 1.0)) {
    throw InvalidArgument("tail_fraction must lie in (0, 1)");
  }

  RunSummary out;

  // Earliest sample after which the series never again reaches the threshold.
  std::size_t settled = values.size();
  while (settled > 0 && values[settled - 1] < opts.threshold) --settled;
  if (settled < values.size()) out.convergence_time = times[settled];

  const double span = times.back() - times.front();
  const double tail_start = times.back() - opts.tail_fraction * span;
  const auto first = static_cast<std::size_t>(
      std::lower_bound(times.begin(), times.end(), tail_start) - times.begin());
  const auto tail = values.subspan(std::min(first, values.size() - 1));

  double sum = 0.0;
  for (double v : tail) {
    out.steady_state_max = std::max(out.steady_state_max, v);
    sum += v;
  }
  out.steady_state_mean = sum / static_cast<double>(tail.size());

  const bool increasing =
      tail.size() >= 2 && std::adjacent_find(tail.begin(), tail.end(), std::greater_equal<>()) == tail.end();
  const bool runaway = increasing && tail.back() > 10.0 * tail.front();

  if (terminated == Termination::Diverged || runaway) {
    out.classification = Classification::Divergent;
  } else if (out.steady_state_max < opts.negligible_cutoff) {
    out.classification = Classification::Negligible;
  } else {
    out.classification = Classification::Bounded;
  }
  return out;
}

RunSummary summarize(const Trace& tr, const SummaryOptions& opts) {
  return summarize(tr.times, tr.residual_norms, tr.terminated, opts);
}

}  // namespace ztnd
