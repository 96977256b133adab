#pragma once

#include <optional>
#include <string_view>

#include "ztnd/integrator.hpp"

namespace ztnd {

enum class Classification { Negligible, Bounded, Divergent };

std::string_view to_string(Classification c);

struct SummaryOptions {
  double threshold = 1e-4;
  double tail_fraction = 0.2;
  double negligible_cutoff = 1e-3;
};

struct RunSummary {
  std::optional<double> convergence_time;
  double steady_state_max = 0.0;
  double steady_state_mean = 0.0;
  Classification classification = Classification::Bounded;
};

/// Summarizes a residual series. The tail is the final tail_fraction of the
/// recorded time span. Divergent means the tail is strictly increasing and
/// ends above 10x its first value, or the run itself diverged.
RunSummary summarize(std::span<const double> times, std::span<const double> values,
                     Termination terminated, const SummaryOptions& opts = {});

/// summarize() over trace.residual_norms.
RunSummary summarize(const Trace& tr, const SummaryOptions& opts = {});

}  // namespace ztnd
