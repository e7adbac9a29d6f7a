// mfscale command-line tool.

#include <cstdlib>
#include <deque>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfscale/config.hpp"
#include "mfscale/error.hpp"
#include "mfscale/io.hpp"
#include "mfscale/pipeline.hpp"
#include "mfscale/synth.hpp"

namespace {

using mfscale::ErrorCategory;

constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_numerical = 4;

int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return exit_usage;
        case ErrorCategory::data: return exit_data;
        case ErrorCategory::numerical: return exit_numerical;
    }
    return exit_numerical;
}

std::string_view category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return "usage";
        case ErrorCategory::data: return "data";
        case ErrorCategory::numerical: return "numerical";
    }
    return "unknown";
}

int report(std::string_view stage, std::string_view category, std::string_view kind, std::string_view message,
           int code, const nlohmann::json& details = nlohmann::json::object()) {
    nlohmann::json err{{"error",
                        {{"stage", stage}, {"category", category}, {"kind", kind}, {"message", message}}}};
    err["error"].update(details);
    std::cerr << err.dump() << '\n';
    return code;
}

struct KeyOption {
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

// Options shared by every analysis subcommand: one flag per config key plus
// the config file and output directory.
struct CommonOptions {
    std::string config_file;
    std::string output_dir;
    std::deque<KeyOption> keys;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config_file, "key-value or JSON configuration file");
        sub->add_option("--output-dir", output_dir,
                        "output directory (default: $MFSCALE_OUTPUT_DIR, then ./mfscale_out)");
        for (const auto& k : mfscale::config_keys()) {
            auto& slot = keys.emplace_back();
            slot.key = k.name;
            std::string flag = "--" + k.name;
            for (auto& ch : flag) {
                if (ch == '_') ch = '-';
            }
            slot.option = sub->add_option(flag, slot.value, k.help);
        }
    }

    mfscale::RunConfig build() const {
        mfscale::RunConfig cfg;
        if (!config_file.empty()) mfscale::apply_config_file(cfg, config_file);
        for (const auto& k : keys) {
            if (k.option->count() > 0) mfscale::set_config_value(cfg, k.key, k.value);
        }
        return cfg;
    }

    std::filesystem::path resolve_output_dir() const {
        if (!output_dir.empty()) return output_dir;
        if (const char* env = std::getenv("MFSCALE_OUTPUT_DIR"); env && *env) return env;
        return "mfscale_out";
    }
};

int run_analysis(const CommonOptions& opts, const mfscale::StageSet& stages) {
    const auto cfg = opts.build();
    const auto doc = mfscale::run_pipeline(cfg, stages);
    const auto dir = opts.resolve_output_dir();
    for (const auto& path : mfscale::write_outputs(doc, dir)) std::cout << path.string() << '\n';
    return 0;
}

int run_synth(const CommonOptions& opts, const std::string& out) {
    const auto cfg = opts.build();
    const auto series = mfscale::generate(cfg.gen_spec());
    const auto csv = mfscale::format_csv(series);
    if (out.empty() || out == "-") {
        std::cout << csv;
    } else {
        mfscale::write_file(out, csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multifractal and self-similarity analysis of scalar time series"};
    app.set_version_flag("--version", std::string(MFSCALE_VERSION));
    app.require_subcommand(1);

    CommonOptions opts;
    struct Command {
        const char* name;
        const char* help;
        mfscale::StageSet stages;
    };
    auto only = [](auto member) {
        auto s = mfscale::StageSet::none();
        s.*member = true;
        return s;
    };
    const Command commands[] = {
        {"stats", "summary statistics of lag-1 returns", only(&mfscale::StageSet::stats)},
        {"mfdfa", "multifractal detrended fluctuation analysis", only(&mfscale::StageSet::mfdfa)},
        {"structure", "structure functions, zeta_n and sigma(tau)", only(&mfscale::StageSet::structure)},
        {"pdf", "increment PDFs at the configured lags", only(&mfscale::StageSet::pdf)},
        {"collapse", "rescaled PDF collapse at micro and macro lags", only(&mfscale::StageSet::collapse)},
        {"levy-fit", "stable index from the PDF peak scaling", only(&mfscale::StageSet::levy)},
        {"run", "full pipeline", mfscale::StageSet::all()},
    };

    std::string selected;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        opts.attach(sub);
        sub->callback([&selected, name = c.name] { selected = name; });
    }
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "write a generated series as CSV");
    opts.attach(synth);
    synth->add_option("--out", synth_out, "output CSV path (default: stdout)");
    synth->callback([&selected] { selected = "synth"; });
    app.add_subcommand("keys", "list configuration keys")->callback([&selected] { selected = "keys"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (selected == "keys") {
            for (const auto& k : mfscale::config_keys()) std::cout << k.name << "\t" << k.help << '\n';
            return 0;
        }
        if (selected == "synth") return run_synth(opts, synth_out);
        for (const auto& c : commands) {
            if (selected == c.name) return run_analysis(opts, c.stages);
        }
        return report("cli", "usage", "usage", "no subcommand", exit_usage);
    } catch (const mfscale::StageError& e) {
        return report(e.stage(), category_name(e.category()), e.kind(), e.what(), exit_code(e.category()),
                      e.details());
    } catch (const mfscale::Error& e) {
        return report("cli", category_name(e.category()), e.kind(), e.what(), exit_code(e.category()));
    } catch (const std::filesystem::filesystem_error& e) {
        return report("output", "usage", "io", e.what(), exit_usage);
    } catch (const std::exception& e) {
        return report("cli", "numerical", "internal", e.what(), exit_numerical);
    }
}
