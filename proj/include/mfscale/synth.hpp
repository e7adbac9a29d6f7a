#pragma once

// Seeded generators of processes with known scaling. They serve as oracles
// for the estimators: white noise (H = 1/2), fractional Gaussian noise
// (H chosen), symmetric stable flights (P(0) ~ tau^(-1/mu)) and the binomial
// multiplicative cascade (analytic h(q)).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mfscale/series.hpp"

namespace mfscale {

enum class GenKind { gaussian_noise, fgn, stable_flight, binomial_cascade };

std::string_view to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view name);

struct GenSpec {
    GenKind kind = GenKind::gaussian_noise;
    std::size_t length = 65536;  // ignored for the cascade, which has 2^levels cells
    std::uint64_t seed = 0;
    double hurst = 0.5;          // fgn
    double mu = 2.0;             // stable_flight
    double gamma = 1.0;          // stable_flight
    double cascade_a = 0.7;      // binomial_cascade, in (0.5, 1)
    unsigned levels = 16;        // binomial_cascade
    bool shuffle = false;        // binomial_cascade: randomly swap the two multipliers per split

    /// Throws DomainError when the parameters violate the kind's invariants.
    void validate() const;
    bool operator==(const GenSpec&) const = default;
};

/// i.i.d. standard normal values.
Series gen_gaussian_noise(const GenSpec& spec);

/// Exact fractional Gaussian noise by circulant embedding of the fGn
/// autocovariance (Davies-Harte).
Series gen_fgn(const GenSpec& spec);

/// Cumulative sum of i.i.d. symmetric stable increments with characteristic
/// function exp(-gamma |q|^mu), drawn by the Chambers-Mallows-Stuck transform.
Series gen_stable_flight(const GenSpec& spec);

/// Cell masses of the binomial multiplicative measure on 2^levels cells.
/// Each refinement sends fraction a of a cell's mass to its left half and
/// 1 - a to its right (swapped at random per cell when shuffled).
Series gen_binomial_cascade(const GenSpec& spec);

/// Dispatches on spec.kind.
Series generate(const GenSpec& spec);

}  // namespace mfscale
