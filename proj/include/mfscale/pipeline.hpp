#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfscale/config.hpp"
#include "mfscale/error.hpp"
#include "mfscale/levy.hpp"
#include "mfscale/mfdfa.hpp"
#include "mfscale/pdf.hpp"
#include "mfscale/series.hpp"
#include "mfscale/structure.hpp"

namespace mfscale {

/// Which analysis stages to run. Ingestion and lag-1 returns always run.
struct StageSet {
    bool stats = true;
    bool mfdfa = true;
    bool structure = true;
    bool pdf = true;
    bool collapse = true;
    bool levy = true;

    static StageSet none() { return {false, false, false, false, false, false}; }
    static StageSet all() { return {}; }
};

/// A module error annotated with the stage that raised it. Keeps the
/// category of the original error.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause);
    const std::string& stage() const noexcept { return stage_; }
    /// Extra fields of the cause, e.g. raw_mu and raw_slope of a rejected fit.
    const nlohmann::json& details() const noexcept { return details_; }

private:
    std::string stage_;
    nlohmann::json details_ = nlohmann::json::object();
};

struct InputInfo {
    std::string source;  // "csv" or "generator"
    std::string path;    // empty for generators
    std::string label;
    std::string sha256;  // of the file bytes, or of the generated series rendered as CSV
    std::size_t length = 0;
};

struct StatsResult {
    SummaryStats returns;
    std::size_t rolling_window = 0;
    std::vector<WindowStats> rolling;
};

struct MfdfaResult {
    FluctuationSurface surface;
    ScalingExponents exponents;
    std::optional<ScalingBreak> scaling_break;  // of F_2(s)
};

struct StructureResult {
    StructureSet functions;
    ZetaExponents zeta;
    MultifractalityResult test;
    SigmaScaling sigma;
};

struct CollapseResult {
    std::string alpha_source;  // "config" or "sigma_tau"
    std::vector<EmpiricalPdf> micro_pdfs;
    std::vector<EmpiricalPdf> macro_pdfs;
    CollapseReport micro;
    CollapseReport macro;
};

struct LevyResult {
    std::vector<EmpiricalPdf> pdfs;
    LevyFit fit;
    LevyModel model;  // fitted mu and gamma, delta_s = smallest lag
};

struct ResultDocument {
    ResultDocument(RunConfig config, InputInfo input, Series series, ReturnSet returns);

    RunConfig config;
    std::string tool_version;
    InputInfo input;
    Series series;     // after detrending
    ReturnSet returns; // lag 1

    std::optional<StatsResult> stats;
    std::optional<MfdfaResult> mfdfa;
    std::optional<StructureResult> structure;
    std::optional<std::vector<EmpiricalPdf>> pdfs;
    std::optional<CollapseResult> collapse;
    std::optional<LevyResult> levy;

    nlohmann::json to_json() const;
    /// Key-sorted JSON, two-space indent, trailing newline.
    std::string canonical_json() const;
};

/// Runs ingestion or generation, optional detrending, then the selected stages.
/// Module errors are rethrown as StageError.
ResultDocument run_pipeline(const RunConfig& config, const StageSet& stages = StageSet::all());

enum class PlotKind {
    series,
    returns,
    fluctuation,          // F_2(s)
    fluctuation_surface,  // F_q(s) for every q
    pdfs,                 // one file per lag
    micro_pdfs,
    macro_pdfs,
    structure_functions,
    zeta,
    sigma,
    rescaled_micro,  // one file per lag, with Levy overlay
    rescaled_macro,  // one file per lag
    levy_peaks,
    rolling,
};

std::string_view to_string(PlotKind kind);
std::optional<PlotKind> parse_plot_kind(std::string_view name);
const std::vector<PlotKind>& all_plot_kinds();

struct PlotFile {
    std::string name;  // file name, e.g. "pdf_tau1.tsv"
    std::string content;
};

/// Renders the TSV tables of one plot. Throws NotComputedError when the
/// document lacks a stage the plot needs.
std::vector<PlotFile> render_plot_data(const ResultDocument& doc, PlotKind kind);

/// Writes the TSV files of one plot into `dir`; returns the paths written.
std::vector<std::filesystem::path> export_plot_data(const ResultDocument& doc, PlotKind kind,
                                                    const std::filesystem::path& dir);

/// Writes result.json and every plot the document supports.
std::vector<std::filesystem::path> write_outputs(const ResultDocument& doc, const std::filesystem::path& dir);

}  // namespace mfscale
