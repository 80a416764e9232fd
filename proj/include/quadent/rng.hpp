#pragma once

// Deterministic random streams.
//
// Every trace of a measurement draws from its own substream. The substream
// seed is a pure function of (run seed, trace index, lock) built from
// splitmix64, so results do not depend on thread scheduling. Each substream
// is an std::mt19937_64 (whose output sequence the standard fixes). Normal
// deviates use the basic Box-Muller transform on 53-bit uniforms, both
// outputs consumed in order. std::normal_distribution is not used because its
// algorithm is implementation-defined.

#include <cstdint>
#include <random>
#include <string_view>

namespace quadent {

inline constexpr std::string_view generator_identity =
    "mt19937_64;splitmix64-substreams(seed,trace,lock);box-muller-53bit";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for substream (seed, a, b).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    /// Standard normal deviate.
    double operator()();

private:
    double uniform_open();  // (0, 1]

    std::mt19937_64 engine_;
    double spare_{0.0};
    bool has_spare_{false};
};

}  // namespace quadent
