#include "ztnd/noise.hpp"

#include <type_traits>

#include "ztnd/errors.hpp"

namespace ztnd {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vector sized(const Vector& v, std::size_t dim, const char* what) {
  if (v.size() == dim) return v;
  if (v.size() == 1) return Vector(dim, v.front());
  throw DimensionMismatch(std::string(what) + " has " + std::to_string(v.size()) +
                          " components, expected " + std::to_string(dim));
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ stream) ^ index);
  // Top 53 bits -> [0, 1).
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

void validate(const NoiseModel& nm) {
  if (const auto* r = std::get_if<BoundedRandomNoise>(&nm)) {
    if (!(r->lower < r->upper)) throw InvalidArgument("bounded random noise needs lower < upper");
  }
}

bool is_step_held(const NoiseModel& nm) { return std::holds_alternative<BoundedRandomNoise>(nm); }

Vector sample(const NoiseModel& nm, double t, std::uint64_t step_index, std::size_t dim) {
  return std::visit(
      overloaded{
          [&](const NoNoise&) { return Vector(dim, 0.0); },
          [&](const ConstantNoise& c) { return sized(c.level, dim, "constant noise level"); },
          [&](const LinearNoise& l) {
            Vector v = sized(l.slope, dim, "linear noise slope");
            for (double& x : v) x *= t;
            return v;
          },
          [&](const BoundedRandomNoise& r) {
            Vector v(dim);
            for (std::size_t i = 0; i < dim; ++i) {
              // Stream = component, index = step: no dependence on call order.
              v[i] = r.lower + (r.upper - r.lower) * counter_uniform(r.seed, i, step_index);
            }
            return v;
          },
      },
      nm);
}

}  // namespace ztnd
