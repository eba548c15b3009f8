#pragma once

#include <cstdint>
#include <optional>

namespace leglab {

/// splitmix64 step; used to expand seeds into generator state.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// xoshiro256++ with explicit seeding and stream splitting.
///
/// Stream convention: the pair (seed, stream) fully determines the sequence.
/// Components that must not share randomness (process noise, observation
/// noise, reservoir inputs, sampling boxes, ...) each take a distinct stream
/// tag; state words come from splitmix64 seeded with
/// seed + GOLDEN_GAMMA * (stream + 1). Determinism is per-implementation:
/// integer output is exactly reproducible, gaussian() additionally depends on
/// the platform's libm.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform01();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller; second deviate of each pair is cached.
    double gaussian();

private:
    std::uint64_t s_[4];
    std::optional<double> spare_;
};

/// Stream tags used across the harness; fixed so that outputs are stable.
namespace streams {
inline constexpr std::uint64_t process_noise = 1;
inline constexpr std::uint64_t observation_noise = 2;
inline constexpr std::uint64_t inputs = 3;
inline constexpr std::uint64_t sampling = 4;
inline constexpr std::uint64_t instances = 5;
}  // namespace streams

}  // namespace leglab
