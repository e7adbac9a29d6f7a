#include "mfscale/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <set>

#include "mfscale/error.hpp"
#include "mfscale/io.hpp"
#include "mfscale/mfdfa.hpp"
#include "mfscale/structure.hpp"

namespace mfscale {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw ConfigError("config key `" + std::string(key) + "`: cannot parse `" + std::string(value) + "`");
}

template <class T>
T parse_number(std::string_view key, std::string_view s) {
    s = trim(s);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) bad_value(key, s);
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(v)) bad_value(key, s);
    }
    return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    s = trim(s);
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        out.push_back(trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

// Per-type conversions between config values, key-value text and JSON.
template <class T>
struct Codec;

template <>
struct Codec<std::string> {
    static std::string parse(std::string_view, std::string_view s) { return std::string(trim(s)); }
    static std::string text(const std::string& v) { return v; }
    static json to_json(const std::string& v) { return v; }
};

template <>
struct Codec<std::size_t> {
    static std::size_t parse(std::string_view k, std::string_view s) { return parse_number<std::size_t>(k, s); }
    static std::string text(std::size_t v) { return std::to_string(v); }
    static json to_json(std::size_t v) { return v; }
};

template <>
struct Codec<unsigned> {
    static unsigned parse(std::string_view k, std::string_view s) { return parse_number<unsigned>(k, s); }
    static std::string text(unsigned v) { return std::to_string(v); }
    static json to_json(unsigned v) { return v; }
};

template <>
struct Codec<double> {
    static double parse(std::string_view k, std::string_view s) { return parse_number<double>(k, s); }
    static std::string text(double v) { return format_shortest(v); }
    static json to_json(double v) { return v; }
};

template <>
struct Codec<bool> {
    static bool parse(std::string_view k, std::string_view s) {
        s = trim(s);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        bad_value(k, s);
    }
    static std::string text(bool v) { return v ? "true" : "false"; }
    static json to_json(bool v) { return v; }
};

template <>
struct Codec<std::optional<std::uint64_t>> {
    static std::optional<std::uint64_t> parse(std::string_view k, std::string_view s) {
        if (trim(s).empty()) return std::nullopt;
        return parse_number<std::uint64_t>(k, s);
    }
    static std::string text(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }
    static json to_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }
};

template <>
struct Codec<std::optional<double>> {
    static std::optional<double> parse(std::string_view k, std::string_view s) {
        s = trim(s);
        if (s.empty() || s == "auto") return std::nullopt;
        return parse_number<double>(k, s);
    }
    static std::string text(const std::optional<double>& v) { return v ? format_shortest(*v) : "auto"; }
    static json to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
};

template <>
struct Codec<std::optional<GenKind>> {
    static std::optional<GenKind> parse(std::string_view k, std::string_view s) {
        s = trim(s);
        if (s.empty() || s == "none") return std::nullopt;
        const auto kind = parse_gen_kind(s);
        if (!kind) bad_value(k, s);
        return kind;
    }
    static std::string text(const std::optional<GenKind>& v) { return v ? std::string(to_string(*v)) : "none"; }
    static json to_json(const std::optional<GenKind>& v) { return v ? json(std::string(to_string(*v))) : json(nullptr); }
};

template <class E>
struct Codec<std::vector<E>> {
    static std::vector<E> parse(std::string_view k, std::string_view s) {
        std::vector<E> out;
        for (auto item : split_list(s)) out.push_back(Codec<E>::parse(k, item));
        return out;
    }
    static std::string text(const std::vector<E>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += Codec<E>::text(v[i]);
        }
        return out;
    }
    static json to_json(const std::vector<E>& v) {
        json arr = json::array();
        for (const auto& e : v) arr.push_back(Codec<E>::to_json(e));
        return arr;
    }
};

template <>
struct Codec<FitRange> {
    static FitRange parse(std::string_view k, std::string_view s) {
        const auto items = split_list(s);
        if (items.size() != 2) bad_value(k, s);
        return {parse_number<double>(k, items[0]), parse_number<double>(k, items[1])};
    }
    static std::string text(const FitRange& r) { return format_shortest(r.lo) + "," + format_shortest(r.hi); }
    static json to_json(const FitRange& r) { return json::array({r.lo, r.hi}); }
};

struct Field {
    ConfigKey key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> text;
    std::function<json(const RunConfig&)> to_json;
};

template <class Access>
Field field(std::string name, std::string help, Access access) {
    using T = std::remove_reference_t<decltype(access(std::declval<RunConfig&>()))>;
    Field f;
    f.key = {name, std::move(help)};
    f.set = [access, name](RunConfig& c, std::string_view s) { access(c) = Codec<T>::parse(name, s); };
    f.text = [access](const RunConfig& c) { return Codec<T>::text(access(const_cast<RunConfig&>(c))); };
    f.to_json = [access](const RunConfig& c) { return Codec<T>::to_json(access(const_cast<RunConfig&>(c))); };
    return f;
}

#define MFSCALE_FIELD(name, member, help) field(name, help, [](RunConfig& c) -> auto& { return c.member; })

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        MFSCALE_FIELD("input", input, "CSV file with date,value rows"),
        MFSCALE_FIELD("generator", generator, "gaussian_noise | fgn | stable_flight | binomial_cascade | none"),
        MFSCALE_FIELD("length", length, "generated series length"),
        MFSCALE_FIELD("seed", seed, "generator seed (required with a generator)"),
        MFSCALE_FIELD("hurst", hurst, "fgn Hurst exponent"),
        MFSCALE_FIELD("mu", mu, "stable_flight stability index"),
        MFSCALE_FIELD("gamma", gamma, "stable_flight scale factor"),
        MFSCALE_FIELD("cascade_a", cascade_a, "binomial_cascade multiplier"),
        MFSCALE_FIELD("levels", levels, "binomial_cascade refinement levels"),
        MFSCALE_FIELD("shuffle", shuffle, "binomial_cascade random multiplier order"),
        MFSCALE_FIELD("detrend_modes", detrend.n_modes_removed, "lowest Fourier modes removed before analysis"),
        MFSCALE_FIELD("detrend_mean", detrend.remove_mean, "also remove the zero-frequency mode"),
        MFSCALE_FIELD("lags", lags, "increment lags for structure functions and sigma(tau)"),
        MFSCALE_FIELD("pdf_lags", pdf_lags, "lags of the full-range PDFs"),
        MFSCALE_FIELD("micro_lags", micro_lags, "lags of the micro-scale collapse set"),
        MFSCALE_FIELD("macro_lags", macro_lags, "lags of the macro-scale collapse set"),
        MFSCALE_FIELD("levy_lags", levy_lags, "lags of the peak-scaling Levy fit"),
        MFSCALE_FIELD("scales", scales, "MF-DFA scales (empty: log-spaced grid)"),
        MFSCALE_FIELD("scale_min", scale_min, "smallest MF-DFA scale of the default grid"),
        MFSCALE_FIELD("scale_max", scale_max, "largest MF-DFA scale of the default grid (0: N/4)"),
        MFSCALE_FIELD("scale_count", scale_count, "points in the default scale grid"),
        MFSCALE_FIELD("q_orders", q_orders, "MF-DFA moment orders"),
        MFSCALE_FIELD("q0_log_mode", q0_log_mode, "allow q = 0 via the logarithmic average"),
        MFSCALE_FIELD("poly_order", poly_order, "MF-DFA detrending polynomial degree"),
        MFSCALE_FIELD("mfdfa_fit", mfdfa_fit, "scale range of the alpha(q) fit"),
        MFSCALE_FIELD("break_threshold", break_threshold, "slope change reported as a scaling break"),
        MFSCALE_FIELD("break_min_points", break_min_points, "scales required on each side of a break"),
        MFSCALE_FIELD("n_orders", n_orders, "structure-function orders"),
        MFSCALE_FIELD("zeta_fit", zeta_fit, "lag range of the zeta_n fit"),
        MFSCALE_FIELD("sigma_fit", sigma_fit, "lag range of the sigma(tau) fit"),
        MFSCALE_FIELD("multifractal_threshold", multifractal_threshold, "max nonlinearity of a monofractal"),
        MFSCALE_FIELD("bin_count", bin_count, "histogram bins (0: Rice rule clamped to [25, 201])"),
        MFSCALE_FIELD("pdf_window", pdf_window, "collapse/Levy histogram half-width in std units (0: full range)"),
        MFSCALE_FIELD("collapse_alpha", collapse_alpha, "rescaling exponent (auto: sigma(tau) exponent)"),
        MFSCALE_FIELD("collapse_threshold", collapse_threshold, "max log-density MSE counted as collapsed"),
        MFSCALE_FIELD("collapse_central_width", collapse_central_width, "comparison region in reference std units"),
        MFSCALE_FIELD("collapse_min_count", collapse_min_count, "minimum samples per compared bin"),
        MFSCALE_FIELD("levy_boundary_tolerance", levy_boundary_tolerance, "raw mu above 2 clamped up to 2 + this"),
        MFSCALE_FIELD("rolling_window", rolling_window, "moving-window statistics window (0: off)"),
        MFSCALE_FIELD("rolling_step", rolling_step, "moving-window step"),
    };
    return table;
}

#undef MFSCALE_FIELD

const Field& find_field(std::string_view key) {
    for (const auto& f : fields()) {
        if (f.key.name == key) return f;
    }
    throw ConfigError("unknown config key `" + std::string(key) + "`");
}

std::string json_value_text(const std::string& key, const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return format_shortest(v.get<double>());
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += json_value_text(key, v[i]);
        }
        return out;
    }
    throw ConfigError("config key `" + key + "`: unsupported JSON value");
}

}  // namespace

std::vector<std::size_t> default_lags() {
    std::set<std::size_t> grid;
    constexpr int count = 24;
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        grid.insert(static_cast<std::size_t>(std::lround(std::exp(t * std::log(200.0)))));
    }
    return {grid.begin(), grid.end()};
}

RunConfig::RunConfig()
    : lags(default_lags()), q_orders(default_q_orders()), n_orders(default_structure_orders()) {}

GenSpec RunConfig::gen_spec() const {
    if (!generator) throw ConfigError("no generator configured");
    if (!seed) throw ConfigError("generator runs require an explicit seed");
    GenSpec spec;
    spec.kind = *generator;
    spec.length = length;
    spec.seed = *seed;
    spec.hurst = hurst;
    spec.mu = mu;
    spec.gamma = gamma;
    spec.cascade_a = cascade_a;
    spec.levels = levels;
    spec.shuffle = shuffle;
    return spec;
}

void RunConfig::validate() const {
    if (input.empty() == !generator.has_value()) {
        throw ConfigError(input.empty() ? "no input: set `input` or `generator`"
                                        : "set either `input` or `generator`, not both");
    }
    if (generator) gen_spec().validate();
    auto check_lags = [](const char* name, const std::vector<std::size_t>& v) {
        if (v.empty()) throw ConfigError(std::string(name) + " must not be empty");
        for (auto lag : v) {
            if (lag < 1) throw ConfigError(std::string(name) + " entries must be >= 1");
        }
    };
    check_lags("lags", lags);
    check_lags("pdf_lags", pdf_lags);
    check_lags("micro_lags", micro_lags);
    check_lags("macro_lags", macro_lags);
    check_lags("levy_lags", levy_lags);
    if (q_orders.empty()) throw ConfigError("q_orders must not be empty");
    for (double q : q_orders) {
        if (q == 0.0 && !q0_log_mode) throw ConfigError("q = 0 requires q0_log_mode = true");
    }
    if (n_orders.empty()) throw ConfigError("n_orders must not be empty");
    for (double n : n_orders) {
        if (!(n > 0.0)) throw ConfigError("n_orders entries must be positive");
    }
    for (const auto* r : {&mfdfa_fit, &zeta_fit, &sigma_fit}) {
        if (!(r->lo < r->hi)) throw ConfigError("fit ranges need lo < hi");
    }
    if (bin_count != 0 && bin_count < 8) throw ConfigError("bin_count must be 0 (auto) or >= 8");
    if (!(pdf_window >= 0.0)) throw ConfigError("pdf_window must be >= 0");
    if (!(collapse_threshold > 0.0)) throw ConfigError("collapse_threshold must be positive");
    if (!(collapse_central_width > 0.0)) throw ConfigError("collapse_central_width must be positive");
    if (!(multifractal_threshold > 0.0)) throw ConfigError("multifractal_threshold must be positive");
    if (!(levy_boundary_tolerance >= 0.0)) throw ConfigError("levy_boundary_tolerance must be >= 0");
    if (rolling_window != 0 && rolling_step == 0) throw ConfigError("rolling_step must be >= 1");
}

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> out;
        for (const auto& f : fields()) out.push_back(f.key);
        return out;
    }();
    return keys;
}

void set_config_value(RunConfig& config, std::string_view key, std::string_view value) {
    find_field(trim(key)).set(config, value);
}

void apply_config_text(RunConfig& config, std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected `key = value`");
        }
        set_config_value(config, line.substr(0, eq), line.substr(eq + 1));
    }
}

std::string to_config_text(const RunConfig& config) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key.name;
        out += " = ";
        out += f.text(config);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const RunConfig& config) {
    json j = json::object();
    for (const auto& f : fields()) j[f.key.name] = f.to_json(config);
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    const json& obj = j.contains("config") && j["config"].is_object() ? j["config"] : j;
    if (!obj.is_object()) throw ConfigError("configuration JSON must be an object");
    RunConfig config;
    for (const auto& [key, value] : obj.items()) {
        find_field(key).set(config, json_value_text(key, value));
    }
    return config;
}

void apply_config_file(RunConfig& config, const std::string& path) {
    const auto text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError("cannot parse JSON config " + path + ": " + e.what());
        }
        const json& obj = j.contains("config") && j["config"].is_object() ? j["config"] : j;
        for (const auto& [key, value] : obj.items()) find_field(key).set(config, json_value_text(key, value));
        return;
    }
    apply_config_text(config, text);
}

}  // namespace mfscale
