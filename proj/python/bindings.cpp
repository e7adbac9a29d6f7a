#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <string>
#include <vector>

#include "mfscale/config.hpp"
#include "mfscale/error.hpp"
#include "mfscale/levy.hpp"
#include "mfscale/mfdfa.hpp"
#include "mfscale/pdf.hpp"
#include "mfscale/pipeline.hpp"
#include "mfscale/structure.hpp"
#include "mfscale/synth.hpp"

namespace py = pybind11;
using namespace mfscale;

namespace {

using InArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::span<const double> view(const InArray& a) {
    if (a.ndim() != 1) throw DomainError("expected a one-dimensional array");
    return {a.data(), static_cast<std::size_t>(a.size())};
}

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Series as_series(const InArray& values) {
    const auto v = view(values);
    return Series(std::vector<double>(v.begin(), v.end()));
}

FitRange as_range(std::pair<double, double> r) { return {r.first, r.second}; }

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

RunConfig config_from_dict(const py::dict& d) {
    auto text = py::module_::import("json").attr("dumps")(d).cast<std::string>();
    return config_from_json(nlohmann::json::parse(text));
}

StageSet stage_set(const std::optional<std::vector<std::string>>& names) {
    if (!names) return StageSet::all();
    auto s = StageSet::none();
    for (const auto& n : *names) {
        if (n == "stats") s.stats = true;
        else if (n == "mfdfa") s.mfdfa = true;
        else if (n == "structure") s.structure = true;
        else if (n == "pdf") s.pdf = true;
        else if (n == "collapse") s.collapse = true;
        else if (n == "levy") s.levy = true;
        else throw DomainError("unknown stage '" + n + "'");
    }
    return s;
}

const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return "usage";
        case ErrorCategory::data: return "data";
        case ErrorCategory::numerical: return "numerical";
    }
    return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multifractal and stable-law scaling analysis of time series";
    m.attr("__version__") = MFSCALE_VERSION;

    // Leaked on purpose: the type must outlive interpreter teardown.
    static auto* error_type = new py::object(py::exception<Error>(m, "Error", PyExc_ValueError));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = (*error_type)(e.what());
            inst.attr("category") = category_name(e.category());
            inst.attr("kind") = e.kind();
            if (const auto* se = dynamic_cast<const StageError*>(&e)) {
                inst.attr("stage") = se->stage();
                inst.attr("details") = parse_json(se->details().dump());
            }
            PyErr_SetObject(error_type->ptr(), inst.ptr());
        }
    });

    m.def(
        "generate",
        [](const std::string& kind, std::uint64_t seed, std::size_t length, double hurst, double mu, double gamma,
           double cascade_a, unsigned levels, bool shuffle) {
            const auto k = parse_gen_kind(kind);
            if (!k) throw DomainError("unknown generator '" + kind + "'");
            GenSpec s{*k, length, seed, hurst, mu, gamma, cascade_a, levels, shuffle};
            return to_array(generate(s).values());
        },
        py::arg("kind"), py::arg("seed"), py::arg("length") = 65536, py::arg("hurst") = 0.5, py::arg("mu") = 2.0,
        py::arg("gamma") = 1.0, py::arg("cascade_a") = 0.7, py::arg("levels") = 16, py::arg("shuffle") = false,
        "Seeded synthetic series: gaussian_noise, fgn, stable_flight or binomial_cascade.");

    m.def(
        "returns",
        [](const InArray& values, std::size_t lag, bool nonoverlapping) {
            const auto mode = nonoverlapping ? IncrementMode::nonoverlapping : IncrementMode::overlapping;
            return to_array(compute_returns(as_series(values), lag, mode).values);
        },
        py::arg("values"), py::arg("lag") = 1, py::arg("nonoverlapping") = false);

    m.def(
        "summary_stats",
        [](const InArray& values) {
            const auto s = summary_stats(view(values));
            return py::dict(py::arg("mean") = s.mean, py::arg("std") = s.std_dev, py::arg("skewness") = s.skewness,
                            py::arg("kurtosis") = s.kurtosis, py::arg("count") = s.count);
        },
        py::arg("values"));

    m.def("default_scales", &default_scales, py::arg("length"), py::arg("count") = 20, py::arg("s_min") = 10,
          py::arg("s_max") = 0);
    m.def("default_q_orders", &default_q_orders);
    m.def("default_lags", &default_lags);
    m.def("default_structure_orders", &default_structure_orders);

    m.def(
        "mfdfa",
        [](const InArray& values, std::optional<std::vector<std::size_t>> scales,
           std::optional<std::vector<double>> q, unsigned poly_order, bool q0_log_mode,
           std::pair<double, double> fit_range) {
            const auto v = view(values);
            const auto sc = scales ? *scales : default_scales(v.size());
            const auto qs = q ? *q : default_q_orders();
            const auto surface = mfdfa_surface(v, sc, qs, {poly_order, q0_log_mode});
            const auto ex = fit_exponents(surface, as_range(fit_range));
            py::array_t<double> f(std::vector<py::ssize_t>{static_cast<py::ssize_t>(surface.scales.size()),
                                                           static_cast<py::ssize_t>(surface.orders.size())});
            std::copy(surface.f_values.begin(), surface.f_values.end(), f.mutable_data());
            return py::dict(py::arg("scales") = surface.scales, py::arg("q") = surface.orders, py::arg("F") = f,
                            py::arg("alpha") = to_array(ex.alpha), py::arg("std_error") = to_array(ex.std_error));
        },
        py::arg("values"), py::arg("scales") = py::none(), py::arg("q") = py::none(), py::arg("poly_order") = 1,
        py::arg("q0_log_mode") = false, py::arg("fit_range") = std::pair{10.0, 100.0},
        "MF-DFA of a signal: F[scale, q] and the fitted exponents alpha(q).");

    m.def(
        "structure",
        [](const InArray& values, std::optional<std::vector<std::size_t>> lags,
           std::optional<std::vector<double>> orders, std::pair<double, double> fit_range, double threshold) {
            const auto series = as_series(values);
            const auto lg = lags ? *lags : default_lags();
            const auto ns = orders ? *orders : default_structure_orders();
            const auto set = structure_functions(series, lg, ns);
            const auto z = fit_zeta(set, as_range(fit_range));
            const auto t = multifractality_test(z, threshold);
            py::array_t<double> s(std::vector<py::ssize_t>{static_cast<py::ssize_t>(set.lags.size()),
                                                           static_cast<py::ssize_t>(set.orders.size())});
            std::copy(set.s_values.begin(), set.s_values.end(), s.mutable_data());
            return py::dict(py::arg("lags") = set.lags, py::arg("orders") = set.orders, py::arg("S") = s,
                            py::arg("zeta") = to_array(z.zeta), py::arg("linear_alpha") = z.linear_alpha,
                            py::arg("nonlinearity") = t.nonlinearity,
                            py::arg("verdict") = std::string(to_string(t.verdict)));
        },
        py::arg("values"), py::arg("lags") = py::none(), py::arg("orders") = py::none(),
        py::arg("fit_range") = std::pair{1.0, 100.0}, py::arg("threshold") = 0.05,
        "Structure functions S^n(tau) of a price series, zeta_n and the multifractality verdict.");

    m.def(
        "sigma_tau",
        [](const InArray& values, const std::vector<std::size_t>& lags, std::pair<double, double> fit_range) {
            const auto s = sigma_tau(as_series(values), lags, as_range(fit_range));
            return py::dict(py::arg("lags") = s.lags, py::arg("sigma") = to_array(s.sigma), py::arg("alpha") = s.alpha,
                            py::arg("std_error") = s.std_error);
        },
        py::arg("values"), py::arg("lags"), py::arg("fit_range") = std::pair{1.0, 100.0});

    py::class_<EmpiricalPdf>(m, "Pdf")
        .def_readonly("lag", &EmpiricalPdf::lag)
        .def_property_readonly("bin_centers", [](const EmpiricalPdf& p) { return to_array(p.bin_centers); })
        .def_property_readonly("density", [](const EmpiricalPdf& p) { return to_array(p.density); })
        .def_readonly("bin_counts", &EmpiricalPdf::bin_counts)
        .def_readonly("bin_width", &EmpiricalPdf::bin_width)
        .def_readonly("normalization", &EmpiricalPdf::normalization)
        .def_readonly("sample_count", &EmpiricalPdf::sample_count)
        .def_readonly("coverage", &EmpiricalPdf::coverage)
        .def("__repr__", [](const EmpiricalPdf& p) {
            return "<Pdf lag=" + std::to_string(p.lag) + " bins=" + std::to_string(p.density.size()) + ">";
        });

    m.def(
        "estimate_pdf",
        [](const InArray& values, std::size_t lag, std::size_t bins, std::optional<double> window) {
            const auto r = compute_returns(as_series(values), lag);
            return estimate_pdf(r, bins ? bins : default_bin_count(r.values.size()), window);
        },
        py::arg("values"), py::arg("lag"), py::arg("bins") = 0, py::arg("window") = py::none(),
        "Histogram density of the lag-tau increments of a price series. bins = 0 picks the default rule; "
        "window limits the range to +-window standard deviations.");

    m.def("rescale_pdf", &rescale_pdf, py::arg("pdf"), py::arg("alpha"), py::arg("lam"));

    m.def(
        "collapse",
        [](const std::vector<EmpiricalPdf>& pdfs, double alpha, std::size_t reference_lag, double threshold,
           double central_width, std::size_t min_count) {
            const auto rep = collapse(pdfs, alpha, reference_lag, {threshold, central_width, min_count});
            py::list per_lag;
            for (const auto& d : rep.per_lag_distance) {
                per_lag.append(py::dict(py::arg("lag") = d.lag, py::arg("distance") = d.distance,
                                        py::arg("points") = d.points));
            }
            return py::dict(py::arg("alpha") = rep.alpha, py::arg("reference_lag") = rep.reference_lag,
                            py::arg("per_lag") = per_lag, py::arg("max_distance") = rep.max_distance(),
                            py::arg("collapsed") = rep.collapsed);
        },
        py::arg("pdfs"), py::arg("alpha"), py::arg("reference_lag"), py::arg("threshold") = 0.05,
        py::arg("central_width") = 3.0, py::arg("min_count") = 50);

    m.def(
        "levy_density",
        [](const InArray& x, double mu, double gamma, double delta_s) {
            return to_array(levy_overlay({mu, gamma, delta_s}, view(x)));
        },
        py::arg("x"), py::arg("mu"), py::arg("gamma") = 1.0, py::arg("delta_s") = 1.0,
        "Symmetric stable density with characteristic function exp(-gamma delta_s |q|^mu).");

    m.def(
        "levy_peak", [](double mu, double gamma, double delta_s) { return levy_peak({mu, gamma, delta_s}); },
        py::arg("mu"), py::arg("gamma") = 1.0, py::arg("delta_s") = 1.0);

    m.def(
        "fit_mu",
        [](const std::vector<EmpiricalPdf>& pdfs, double boundary_tolerance) {
            const auto f = fit_mu_from_peaks(pdfs, {boundary_tolerance});
            return py::dict(py::arg("mu_hat") = f.mu_hat, py::arg("mu_stderr") = f.mu_stderr,
                            py::arg("gamma_hat") = f.gamma_hat, py::arg("raw_mu") = f.raw_mu,
                            py::arg("slope") = f.slope, py::arg("clamped") = f.clamped,
                            py::arg("peaks") = f.peak_table);
        },
        py::arg("pdfs"), py::arg("boundary_tolerance") = 0.1,
        "Stability index from the decay of the central peak P(0) across lags.");

    m.def(
        "config_keys",
        [] {
            py::dict out;
            for (const auto& k : config_keys()) out[py::str(k.name)] = k.help;
            return out;
        },
        "Configuration keys with their descriptions.");

    m.def(
        "run",
        [](const py::dict& config, std::optional<std::vector<std::string>> stages,
           std::optional<std::filesystem::path> output_dir) {
            const auto doc = run_pipeline(config_from_dict(config), stage_set(stages));
            if (output_dir) write_outputs(doc, *output_dir);
            return parse_json(doc.canonical_json());
        },
        py::arg("config"), py::arg("stages") = py::none(), py::arg("output_dir") = py::none(),
        "Runs the analysis pipeline on a configuration dict and returns the result document. "
        "With output_dir, also writes result.json and the plot tables there.");
}
