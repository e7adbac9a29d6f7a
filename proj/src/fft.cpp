#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace mfscale::fft {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using Buffer = std::unique_ptr<T[], FftwFree>;

template <class T>
Buffer<T> alloc(std::size_t n) {
    return Buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t m = n / 2 + 1;
    auto in = alloc<double>(n);
    auto out = alloc<fftw_complex>(m);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(x.begin(), x.end(), in.get());
    fftw_execute(plan.get());
    std::vector<std::complex<double>> result(m);
    for (std::size_t k = 0; k < m; ++k) result[k] = {out[k][0], out[k][1]};
    return result;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> spectrum, std::size_t n) {
    const std::size_t m = n / 2 + 1;
    auto in = alloc<fftw_complex>(m);
    auto out = alloc<double>(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    // c2r overwrites its input, so fill after planning.
    for (std::size_t k = 0; k < m; ++k) {
        in[k][0] = spectrum[k].real();
        in[k][1] = spectrum[k].imag();
    }
    fftw_execute(plan.get());
    std::vector<double> result(out.get(), out.get() + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : result) v *= scale;
    return result;
}

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x) {
    const std::size_t n = x.size();
    auto in = alloc<fftw_complex>(n);
    auto out = alloc<fftw_complex>(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    }
    for (std::size_t j = 0; j < n; ++j) {
        in[j][0] = x[j].real();
        in[j][1] = x[j].imag();
    }
    fftw_execute(plan.get());
    std::vector<std::complex<double>> result(n);
    for (std::size_t k = 0; k < n; ++k) result[k] = {out[k][0], out[k][1]};
    return result;
}

}  // namespace mfscale::fft
