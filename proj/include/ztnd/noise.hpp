#pragma once

#include <cstdint>
#include <variant>

#include "ztnd/linalg.hpp"

namespace ztnd {

struct NoNoise {};

struct ConstantNoise {
  Vector level;
};

/// Each component grows as slope_i * t.
struct LinearNoise {
  Vector slope;
};

/// Per-component uniform draw on [lower, upper], a pure function of
/// (seed, step_index, component).
struct BoundedRandomNoise {
  double lower = 0.5;
  double upper = 3.0;
  std::uint64_t seed = 0;
};

using NoiseModel = std::variant<NoNoise, ConstantNoise, LinearNoise, BoundedRandomNoise>;

/// Throws InvalidArgument when lower >= upper.
void validate(const NoiseModel& nm);

/// True for models whose value only changes between integration steps.
bool is_step_held(const NoiseModel& nm);

/// Noise vector of length `dim` at time t / step `step_index`.
Vector sample(const NoiseModel& nm, double t, std::uint64_t step_index, std::size_t dim);

/// Uniform double in [0, 1) from a stateless hash of (seed, stream, index).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace ztnd
