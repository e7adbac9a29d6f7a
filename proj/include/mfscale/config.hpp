#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mfscale/fdetrend.hpp"
#include "mfscale/fit.hpp"
#include "mfscale/synth.hpp"

namespace mfscale {

/// Everything that determines the analysis. Output locations are not part
/// of it, so the echoed configuration is independent of where results go.
struct RunConfig {
    // Source: either a CSV path or a generator.
    std::string input;
    std::optional<GenKind> generator;
    std::size_t length = 65536;
    std::optional<std::uint64_t> seed;
    double hurst = 0.5;
    double mu = 2.0;
    double gamma = 1.0;
    double cascade_a = 0.7;
    unsigned levels = 16;
    bool shuffle = false;

    DetrendConfig detrend;

    // Increment lags (samples).
    std::vector<std::size_t> lags;  // structure functions and sigma(tau)
    std::vector<std::size_t> pdf_lags{1, 20, 60, 200};
    std::vector<std::size_t> micro_lags{1, 2, 4, 8};
    std::vector<std::size_t> macro_lags{30, 60, 120, 200};
    std::vector<std::size_t> levy_lags{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    // MF-DFA.
    std::vector<std::size_t> scales;  // empty: log-spaced grid below
    std::size_t scale_min = 10;
    std::size_t scale_max = 0;        // 0: N/4
    std::size_t scale_count = 20;
    std::vector<double> q_orders;
    bool q0_log_mode = false;
    unsigned poly_order = 1;
    FitRange mfdfa_fit{10, 100};
    double break_threshold = 0.1;
    std::size_t break_min_points = 3;

    // Structure functions.
    std::vector<double> n_orders;
    FitRange zeta_fit{1, 100};
    FitRange sigma_fit{1, 100};
    double multifractal_threshold = 0.05;

    // PDFs, collapse, Levy fit.
    std::size_t bin_count = 0;  // 0: Rice rule clamped to [25, 201]
    double pdf_window = 3.0;    // half-width in std units for collapse/Levy PDFs; 0: full range
    std::optional<double> collapse_alpha;  // unset: sigma(tau) exponent
    double collapse_threshold = 0.05;
    double collapse_central_width = 3.0;
    std::size_t collapse_min_count = 50;
    double levy_boundary_tolerance = 0.1;

    // Moving-window statistics; window 0 disables them.
    std::size_t rolling_window = 0;
    std::size_t rolling_step = 1;

    RunConfig();
    bool operator==(const RunConfig&) const = default;

    /// Generator spec; throws ConfigError when no generator or no seed is set.
    GenSpec gen_spec() const;
    /// Checks grids and ranges against module preconditions that do not depend on the data.
    void validate() const;
};

struct ConfigKey {
    std::string name;
    std::string help;
};

/// Every key accepted by the key-value format, in documentation order.
const std::vector<ConfigKey>& config_keys();

/// Applies one `key = value` assignment.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Applies a key-value document: one `key = value` per line, '#' comments.
void apply_config_text(RunConfig& config, std::string_view text);

/// Renders the configuration in the key-value format, one line per key.
std::string to_config_text(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
/// Accepts either a bare configuration object or a result document holding one under "config".
RunConfig config_from_json(const nlohmann::json& j);

/// Loads a config file: JSON when the first non-space character is '{', key-value otherwise.
void apply_config_file(RunConfig& config, const std::string& path);

/// Log-spaced integer lags in [1, 200].
std::vector<std::size_t> default_lags();

}  // namespace mfscale
