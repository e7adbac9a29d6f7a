#include "mfscale/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "mfscale/fdetrend.hpp"
#include "mfscale/io.hpp"
#include "mfscale/synth.hpp"

namespace mfscale {

namespace {

using nlohmann::json;

template <class F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(stage, e);
    }
}

std::vector<EmpiricalPdf> pdf_set(const Series& series, std::span<const std::size_t> lags, std::size_t bin_count,
                                  std::optional<double> window) {
    std::vector<EmpiricalPdf> out;
    out.reserve(lags.size());
    for (auto lag : lags) {
        const auto returns = compute_returns(series, lag);
        const auto bins = bin_count ? bin_count : default_bin_count(returns.values.size());
        out.push_back(estimate_pdf(returns, bins, window));
    }
    return out;
}

std::optional<double> window_of(const RunConfig& c) {
    if (c.pdf_window > 0.0) return c.pdf_window;
    return std::nullopt;
}

json stats_json(const SummaryStats& s) {
    return {{"mean", s.mean}, {"std_dev", s.std_dev}, {"skewness", s.skewness}, {"kurtosis", s.kurtosis},
            {"count", s.count}};
}

json fit_range_json(const FitRange& r) { return json::array({r.lo, r.hi}); }

json pdf_summary_json(const EmpiricalPdf& p) {
    return {{"lag", p.lag},
            {"bins", p.density.size()},
            {"bin_width", p.bin_width},
            {"normalization", p.normalization},
            {"sample_count", p.sample_count},
            {"coverage", p.coverage}};
}

json collapse_json(const CollapseReport& r, const std::vector<EmpiricalPdf>& pdfs) {
    json lags = json::array();
    for (const auto& d : r.per_lag_distance) {
        lags.push_back({{"lag", d.lag}, {"distance", d.distance}, {"points", d.points}});
    }
    json pdf_arr = json::array();
    for (const auto& p : pdfs) pdf_arr.push_back(pdf_summary_json(p));
    return {{"alpha", r.alpha},
            {"reference_lag", r.reference_lag},
            {"per_lag", lags},
            {"max_distance", r.max_distance()},
            {"collapsed", r.collapsed},
            {"pdfs", pdf_arr}};
}

std::string lag_name(std::size_t lag) { return "tau" + std::to_string(lag); }

std::string q_label(double q) { return "F_q=" + format_shortest(q) + "[price]"; }

std::size_t order_index(const std::vector<double>& orders, double q) {
    const auto it = std::find(orders.begin(), orders.end(), q);
    if (it == orders.end()) throw NotComputedError("order q = " + format_shortest(q) + " was not evaluated");
    return static_cast<std::size_t>(it - orders.begin());
}

PlotFile table(std::string name, std::vector<TsvColumn> columns) {
    return {std::move(name), format_tsv(columns)};
}

[[noreturn]] void missing(std::string_view plot, std::string_view stage) {
    throw NotComputedError("plot `" + std::string(plot) + "` needs the " + std::string(stage) +
                           " stage, which was not run");
}

const EmpiricalPdf& find_reference(const std::vector<EmpiricalPdf>& pdfs, std::size_t lag) {
    for (const auto& p : pdfs) {
        if (p.lag == lag) return p;
    }
    throw NotComputedError("reference lag " + std::to_string(lag) + " missing");
}

std::vector<PlotFile> rescaled_tables(const std::vector<EmpiricalPdf>& pdfs, const CollapseReport& report,
                                      const std::optional<LevyModel>& overlay, const char* prefix) {
    std::vector<PlotFile> out;
    find_reference(pdfs, report.reference_lag);
    for (const auto& p : pdfs) {
        const double lambda = static_cast<double>(p.lag) / static_cast<double>(report.reference_lag);
        const auto r = rescale_pdf(p, report.alpha, lambda);
        TsvColumn x{"x[price]", {}};
        TsvColumn d{"density[1/price]", {}};
        for (std::size_t i = 0; i < r.density.size(); ++i) {
            x.values.push_back(r.physical_center(i));
            d.values.push_back(r.physical_density(i));
        }
        std::vector<TsvColumn> cols{x, d};
        if (overlay) cols.push_back({"levy[1/price]", levy_overlay(*overlay, x.values)});
        out.push_back(table(std::string(prefix) + lag_name(p.lag) + ".tsv", std::move(cols)));
    }
    return out;
}

std::vector<PlotFile> pdf_group_table(const std::vector<EmpiricalPdf>& pdfs, const std::string& name) {
    std::vector<TsvColumn> cols;
    for (const auto& p : pdfs) {
        TsvColumn x{"x_" + lag_name(p.lag) + "[price]", {}};
        TsvColumn d{"P_" + lag_name(p.lag) + "[1/price]", {}};
        for (std::size_t i = 0; i < p.density.size(); ++i) {
            x.values.push_back(p.physical_center(i));
            d.values.push_back(p.physical_density(i));
        }
        cols.push_back(std::move(x));
        cols.push_back(std::move(d));
    }
    return {table(name, std::move(cols))};
}

}  // namespace

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.category(), cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {
    if (const auto* s = dynamic_cast<const StabilityError*>(&cause)) {
        details_ = {{"raw_mu", s->raw_mu}, {"raw_slope", s->raw_slope}};
    } else if (const auto* p = dynamic_cast<const ParseError*>(&cause); p && p->line()) {
        details_ = {{"line", p->line()}};
    }
}

ResultDocument::ResultDocument(RunConfig config_, InputInfo input_, Series series_, ReturnSet returns_)
    : config(std::move(config_)),
      tool_version(MFSCALE_VERSION),
      input(std::move(input_)),
      series(std::move(series_)),
      returns(std::move(returns_)) {}

nlohmann::json ResultDocument::to_json() const {
    json doc;
    doc["config"] = mfscale::to_json(config);
    doc["tool_version"] = tool_version;
    doc["input"] = {{"source", input.source},
                    {"path", input.path},
                    {"label", input.label},
                    {"sha256", input.sha256},
                    {"length", input.length}};
    if (stats) {
        json s{{"returns", stats_json(stats->returns)}};
        if (stats->rolling_window) {
            json rows = json::array();
            for (const auto& w : stats->rolling) rows.push_back({w.start, w.mean, w.variance});
            s["rolling"] = {{"window", stats->rolling_window}, {"columns", {"start", "mean", "variance"}},
                            {"rows", rows}};
        }
        doc["stats"] = s;
    }
    if (mfdfa) {
        const auto& sf = mfdfa->surface;
        const auto& ex = mfdfa->exponents;
        json f = json::array();
        for (std::size_t si = 0; si < sf.scales.size(); ++si) {
            json row = json::array();
            for (std::size_t qi = 0; qi < sf.orders.size(); ++qi) row.push_back(sf.f(si, qi));
            f.push_back(row);
        }
        json m{{"scales", sf.scales},
               {"orders", sf.orders},
               {"segments_per_scale", sf.segments_per_scale},
               {"poly_order", sf.poly_order},
               {"F", f},
               {"alpha", ex.alpha},
               {"alpha_std_error", ex.std_error},
               {"fit_range", fit_range_json(ex.fit_range)}};
        if (std::find(ex.orders.begin(), ex.orders.end(), 2.0) != ex.orders.end()) {
            m["hurst"] = ex.hurst();
            m["hurst_std_error"] = ex.hurst_std_error();
        }
        if (mfdfa->scaling_break) {
            const auto& b = *mfdfa->scaling_break;
            m["scaling_break"] = {{"scale", b.scale},
                                  {"slope_below", b.slope_below},
                                  {"slope_above", b.slope_above},
                                  {"residual", b.residual}};
        } else {
            m["scaling_break"] = nullptr;
        }
        doc["mfdfa"] = m;
    }
    if (structure) {
        const auto& st = *structure;
        json s_rows = json::array();
        for (std::size_t li = 0; li < st.functions.lags.size(); ++li) {
            json row = json::array();
            for (std::size_t ni = 0; ni < st.functions.orders.size(); ++ni) row.push_back(st.functions.s(li, ni));
            s_rows.push_back(row);
        }
        doc["structure"] = {
            {"lags", st.functions.lags},
            {"orders", st.functions.orders},
            {"S", s_rows},
            {"zeta", st.zeta.zeta},
            {"zeta_std_error", st.zeta.std_error},
            {"zeta_fit_range", fit_range_json(st.zeta.fit_range)},
            {"linear_alpha", st.zeta.linear_alpha},
            {"nonlinearity", st.zeta.nonlinearity},
            {"verdict", std::string(to_string(st.test.verdict))},
            {"strictly_increasing", st.test.strictly_increasing},
            {"sigma", {{"lags", st.sigma.lags},
                       {"sigma", st.sigma.sigma},
                       {"alpha", st.sigma.alpha},
                       {"std_error", st.sigma.std_error},
                       {"fit_range", fit_range_json(st.sigma.fit_range)}}},
        };
    }
    if (pdfs) {
        json arr = json::array();
        for (const auto& p : *pdfs) arr.push_back(pdf_summary_json(p));
        doc["pdfs"] = arr;
    }
    if (collapse) {
        doc["collapse"] = {{"alpha_source", collapse->alpha_source},
                           {"micro", collapse_json(collapse->micro, collapse->micro_pdfs)},
                           {"macro", collapse_json(collapse->macro, collapse->macro_pdfs)}};
    }
    if (levy) {
        const auto& fit = levy->fit;
        json peaks = json::array();
        for (const auto& [tau, p0] : fit.peak_table) peaks.push_back({tau, p0});
        doc["levy"] = {{"mu_hat", fit.mu_hat},
                       {"mu_std_error", fit.mu_stderr},
                       {"gamma_hat", fit.gamma_hat},
                       {"raw_mu", fit.raw_mu},
                       {"slope", fit.slope},
                       {"slope_std_error", fit.slope_stderr},
                       {"clamped", fit.clamped},
                       {"peak_table", peaks},
                       {"fit_range", fit_range_json(fit.fit_range)},
                       {"model", {{"mu", levy->model.mu}, {"gamma", levy->model.gamma},
                                  {"delta_s", levy->model.delta_s}}}};
    }
    return doc;
}

std::string ResultDocument::canonical_json() const { return to_json().dump(2) + "\n"; }

ResultDocument run_pipeline(const RunConfig& config, const StageSet& stages) {
    in_stage("config", [&] { config.validate(); });

    InputInfo info;
    auto series = [&]() -> Series {
        if (config.generator) {
            return in_stage("generate", [&] {
                auto s = generate(config.gen_spec());
                info.source = "generator";
                info.label = std::string(to_string(*config.generator));
                info.sha256 = sha256_hex(format_csv(s));
                return s;
            });
        }
        return in_stage("ingest", [&] {
            const auto bytes = read_file(config.input);
            auto s = parse_csv(bytes, std::filesystem::path(config.input).stem().string());
            info.source = "csv";
            info.path = config.input;
            info.label = s.label();
            info.sha256 = sha256_hex(bytes);
            return s;
        });
    }();
    info.length = series.size();

    if (config.detrend.n_modes_removed > 0 || config.detrend.remove_mean) {
        series = in_stage("detrend", [&] { return fourier_detrend(series, config.detrend); });
    }
    auto returns = in_stage("returns", [&] { return compute_returns(series, 1); });

    ResultDocument doc(config, std::move(info), std::move(series), std::move(returns));
    const auto& s = doc.series;
    const auto& c = config;

    if (stages.stats) {
        doc.stats = in_stage("stats", [&] {
            StatsResult r;
            r.returns = summary_stats(doc.returns.values);
            if (c.rolling_window) {
                r.rolling_window = c.rolling_window;
                r.rolling = rolling_stats(s, c.rolling_window, c.rolling_step);
            }
            return r;
        });
    }

    if (stages.mfdfa) {
        doc.mfdfa = in_stage("mfdfa", [&] {
            const auto& x = doc.returns.values;
            const auto scales =
                c.scales.empty() ? default_scales(x.size(), c.scale_count, c.scale_min, c.scale_max) : c.scales;
            MfdfaResult r;
            r.surface = mfdfa_surface(x, scales, c.q_orders, {c.poly_order, c.q0_log_mode});
            r.exponents = fit_exponents(r.surface, c.mfdfa_fit);
            const bool has_q2 = std::find(c.q_orders.begin(), c.q_orders.end(), 2.0) != c.q_orders.end();
            if (has_q2 && scales.size() >= 2 * c.break_min_points && scales.size() >= 8) {
                r.scaling_break = detect_scaling_break(r.surface, 2.0, {c.break_min_points, c.break_threshold});
            }
            return r;
        });
    }

    std::optional<SigmaScaling> sigma;
    if (stages.structure) {
        doc.structure = in_stage("structure", [&] {
            StructureResult r;
            r.functions = structure_functions(s, c.lags, c.n_orders);
            r.zeta = fit_zeta(r.functions, c.zeta_fit);
            r.test = multifractality_test(r.zeta, c.multifractal_threshold);
            r.sigma = sigma_tau(s, c.lags, c.sigma_fit);
            return r;
        });
        sigma = doc.structure->sigma;
    }

    if (stages.pdf) {
        doc.pdfs = in_stage("pdf", [&] { return pdf_set(s, c.pdf_lags, c.bin_count, std::nullopt); });
    }

    if (stages.collapse) {
        doc.collapse = in_stage("collapse", [&] {
            CollapseResult r;
            double alpha = 0.0;
            if (c.collapse_alpha) {
                alpha = *c.collapse_alpha;
                r.alpha_source = "config";
            } else {
                if (!sigma) sigma = sigma_tau(s, c.lags, c.sigma_fit);
                alpha = sigma->alpha;
                r.alpha_source = "sigma_tau";
            }
            const CollapseOptions opts{c.collapse_threshold, c.collapse_central_width, c.collapse_min_count};
            r.micro_pdfs = pdf_set(s, c.micro_lags, c.bin_count, window_of(c));
            r.macro_pdfs = pdf_set(s, c.macro_lags, c.bin_count, window_of(c));
            r.micro = mfscale::collapse(r.micro_pdfs, alpha, c.micro_lags.front(), opts);
            r.macro = mfscale::collapse(r.macro_pdfs, alpha, c.macro_lags.front(), opts);
            return r;
        });
    }

    if (stages.levy) {
        doc.levy = in_stage("levy", [&] {
            LevyResult r;
            r.pdfs = pdf_set(s, c.levy_lags, c.bin_count, window_of(c));
            r.fit = fit_mu_from_peaks(r.pdfs, {c.levy_boundary_tolerance});
            std::size_t tau_min = r.fit.peak_table.front().first;
            for (const auto& [tau, p0] : r.fit.peak_table) tau_min = std::min(tau_min, tau);
            r.model = {r.fit.mu_hat, r.fit.gamma_hat, static_cast<double>(tau_min)};
            return r;
        });
    }
    return doc;
}

std::string_view to_string(PlotKind kind) {
    switch (kind) {
        case PlotKind::series: return "series";
        case PlotKind::returns: return "returns";
        case PlotKind::fluctuation: return "fluctuation";
        case PlotKind::fluctuation_surface: return "fluctuation_surface";
        case PlotKind::pdfs: return "pdfs";
        case PlotKind::micro_pdfs: return "micro_pdfs";
        case PlotKind::macro_pdfs: return "macro_pdfs";
        case PlotKind::structure_functions: return "structure_functions";
        case PlotKind::zeta: return "zeta";
        case PlotKind::sigma: return "sigma";
        case PlotKind::rescaled_micro: return "rescaled_micro";
        case PlotKind::rescaled_macro: return "rescaled_macro";
        case PlotKind::levy_peaks: return "levy_peaks";
        case PlotKind::rolling: return "rolling";
    }
    return "unknown";
}

const std::vector<PlotKind>& all_plot_kinds() {
    static const std::vector<PlotKind> kinds{
        PlotKind::series,         PlotKind::returns,        PlotKind::fluctuation, PlotKind::fluctuation_surface,
        PlotKind::pdfs,           PlotKind::micro_pdfs,     PlotKind::macro_pdfs,  PlotKind::structure_functions,
        PlotKind::zeta,           PlotKind::sigma,          PlotKind::rescaled_micro, PlotKind::rescaled_macro,
        PlotKind::levy_peaks,     PlotKind::rolling,
    };
    return kinds;
}

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
    for (auto k : all_plot_kinds()) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

std::vector<PlotFile> render_plot_data(const ResultDocument& doc, PlotKind kind) {
    const auto name = to_string(kind);
    switch (kind) {
        case PlotKind::series: {
            const auto ts = doc.series.timestamps();
            const auto v = doc.series.values();
            return {table("series.tsv", {{"t[day]", {ts.begin(), ts.end()}}, {"p[price]", {v.begin(), v.end()}}})};
        }
        case PlotKind::returns: {
            const auto ts = doc.series.timestamps();
            return {table("returns.tsv", {{"t[day]", {ts.begin(), ts.begin() + doc.returns.values.size()}},
                                          {"dp[price]", doc.returns.values}})};
        }
        case PlotKind::fluctuation: {
            if (!doc.mfdfa) missing(name, "mfdfa");
            const auto& sf = doc.mfdfa->surface;
            const auto qi = order_index(sf.orders, 2.0);
            return {table("fluctuation_F2.tsv",
                          {{"s[samples]", {sf.scales.begin(), sf.scales.end()}}, {"F_2[price]", sf.column(qi)}})};
        }
        case PlotKind::fluctuation_surface: {
            if (!doc.mfdfa) missing(name, "mfdfa");
            const auto& sf = doc.mfdfa->surface;
            std::vector<TsvColumn> cols{{"s[samples]", {sf.scales.begin(), sf.scales.end()}}};
            for (std::size_t qi = 0; qi < sf.orders.size(); ++qi) cols.push_back({q_label(sf.orders[qi]), sf.column(qi)});
            return {table("fluctuation_surface.tsv", std::move(cols))};
        }
        case PlotKind::pdfs: {
            if (!doc.pdfs) missing(name, "pdf");
            std::vector<PlotFile> out;
            for (const auto& p : *doc.pdfs) {
                out.push_back(table("pdf_" + lag_name(p.lag) + ".tsv",
                                    {{"bin_center[std]", p.bin_centers}, {"density[1/std]", p.density}}));
            }
            return out;
        }
        case PlotKind::micro_pdfs:
            if (!doc.collapse) missing(name, "collapse");
            return pdf_group_table(doc.collapse->micro_pdfs, "micro_pdfs.tsv");
        case PlotKind::macro_pdfs:
            if (!doc.collapse) missing(name, "collapse");
            return pdf_group_table(doc.collapse->macro_pdfs, "macro_pdfs.tsv");
        case PlotKind::structure_functions: {
            if (!doc.structure) missing(name, "structure");
            const auto& sf = doc.structure->functions;
            std::vector<TsvColumn> cols{{"tau[samples]", {sf.lags.begin(), sf.lags.end()}}};
            for (std::size_t ni = 0; ni < sf.orders.size(); ++ni) {
                cols.push_back({"S_n=" + format_shortest(sf.orders[ni]) + "[price^n]", sf.column(ni)});
            }
            return {table("structure_functions.tsv", std::move(cols))};
        }
        case PlotKind::zeta: {
            if (!doc.structure) missing(name, "structure");
            const auto& z = doc.structure->zeta;
            std::vector<double> linear;
            for (double n : z.orders) linear.push_back(z.linear_alpha * n);
            return {table("zeta.tsv", {{"n[order]", z.orders},
                                       {"zeta[1]", z.zeta},
                                       {"std_error[1]", z.std_error},
                                       {"alpha_n[1]", linear}})};
        }
        case PlotKind::sigma: {
            if (!doc.structure) missing(name, "structure");
            const auto& sg = doc.structure->sigma;
            return {table("sigma.tsv", {{"tau[samples]", {sg.lags.begin(), sg.lags.end()}}, {"sigma[price]", sg.sigma}})};
        }
        case PlotKind::rescaled_micro: {
            if (!doc.collapse) missing(name, "collapse");
            if (!doc.levy) missing(name, "levy");
            LevyModel overlay = doc.levy->model;
            overlay.delta_s = static_cast<double>(doc.collapse->micro.reference_lag);
            return rescaled_tables(doc.collapse->micro_pdfs, doc.collapse->micro, overlay, "rescaled_micro_");
        }
        case PlotKind::rescaled_macro:
            if (!doc.collapse) missing(name, "collapse");
            return rescaled_tables(doc.collapse->macro_pdfs, doc.collapse->macro, std::nullopt, "rescaled_macro_");
        case PlotKind::levy_peaks: {
            if (!doc.levy) missing(name, "levy");
            TsvColumn tau{"tau[samples]", {}};
            TsvColumn p0{"P0[1/price]", {}};
            TsvColumn model{"levy_peak[1/price]", {}};
            for (const auto& [t, p] : doc.levy->fit.peak_table) {
                tau.values.push_back(static_cast<double>(t));
                p0.values.push_back(p);
                LevyModel m = doc.levy->model;
                m.delta_s = static_cast<double>(t);
                model.values.push_back(levy_peak(m));
            }
            return {table("levy_peaks.tsv", {tau, p0, model})};
        }
        case PlotKind::rolling: {
            if (!doc.stats || doc.stats->rolling_window == 0) missing(name, "rolling stats");
            TsvColumn start{"start[index]", {}};
            TsvColumn mean{"mean[price]", {}};
            TsvColumn var{"variance[price^2]", {}};
            for (const auto& w : doc.stats->rolling) {
                start.values.push_back(static_cast<double>(w.start));
                mean.values.push_back(w.mean);
                var.values.push_back(w.variance);
            }
            return {table("rolling.tsv", {start, mean, var})};
        }
    }
    throw NotComputedError("unknown plot kind");
}

std::vector<std::filesystem::path> export_plot_data(const ResultDocument& doc, PlotKind kind,
                                                    const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> written;
    for (const auto& f : render_plot_data(doc, kind)) {
        const auto path = dir / f.name;
        write_file(path, f.content);
        written.push_back(path);
    }
    return written;
}

std::vector<std::filesystem::path> write_outputs(const ResultDocument& doc, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written{dir / "result.json"};
    write_file(written.front(), doc.canonical_json());
    for (auto kind : all_plot_kinds()) {
        try {
            auto paths = export_plot_data(doc, kind, dir);
            written.insert(written.end(), paths.begin(), paths.end());
        } catch (const NotComputedError&) {
            // stage not run; nothing to export
        }
    }
    return written;
}

}  // namespace mfscale
