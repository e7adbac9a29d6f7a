#pragma once

#include <cstdint>
#include <random>

namespace mfscale {

/// SplitMix64 finalizer, used to derive engine seeds and stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Portable seeded generator: std::mt19937_64 (bit-exact across platforms
/// by the standard) seeded with splitmix64(seed). All variate transforms are
/// implemented here rather than taken from <random> distributions, whose
/// output is implementation-defined.
///
/// Stream splitting: `split(k)` returns an independent generator seeded with
/// splitmix64(seed ^ splitmix64(k + 1)), so stream k of seed s is the same
/// on every platform and does not depend on how many numbers were drawn
/// from the parent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    Rng split(std::uint64_t stream) const { return Rng(seed_ ^ splitmix64(stream + 1)); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Exponential with unit mean.
    double exponential();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mfscale
