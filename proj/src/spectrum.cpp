#include "onm/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace onm {

namespace {

// FFTW planning is not thread-safe; execution with new-array functions is.
std::mutex g_plan_mutex;

} // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("FFT length must be positive");
    }
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(g_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    const std::size_t m = std::min(n, x.size());
    std::copy_n(x.begin(), m, in);
    std::fill(in + m, in + n, 0.0);
    fftw_execute(plan);
    std::vector<std::complex<double>> result(n / 2 + 1);
    for (std::size_t k = 0; k < result.size(); ++k) {
        result[k] = {out[k][0], out[k][1]};
    }
    {
        std::lock_guard lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return result;
}

std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("FFT length must be positive");
    }
    const std::size_t nb = n / 2 + 1;
    fftw_complex* in = fftw_alloc_complex(nb);
    double* out = fftw_alloc_real(n);
    fftw_plan plan;
    {
        std::lock_guard lock(g_plan_mutex);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    for (std::size_t k = 0; k < nb; ++k) {
        const auto v = k < bins.size() ? bins[k] : std::complex<double>{};
        in[k][0] = v.real();
        in[k][1] = v.imag();
    }
    fftw_execute(plan);
    std::vector<double> result(out, out + n);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : result) {
        v *= scale;
    }
    {
        std::lock_guard lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return result;
}

} // namespace onm
