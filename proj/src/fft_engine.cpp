#include "fft_engine.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace phl::detail {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

void fft_axes(std::vector<cplx>& data, const GridSpec& grid, std::span<const int> axes, FftDirection dir)
{
    if (data.size() != grid.size())
        throw std::invalid_argument("fft_axes: buffer size does not match grid");
    if (axes.empty())
        return;

    std::vector<fftw_iodim> dims;
    std::vector<fftw_iodim> loops;
    for (int i = 0; i < grid.dim(); ++i) {
        fftw_iodim d{static_cast<int>(grid.n(i)), static_cast<int>(grid.stride(i)),
                     static_cast<int>(grid.stride(i))};
        bool transformed = false;
        for (int a : axes)
            transformed = transformed || a == i;
        (transformed ? dims : loops).push_back(d);
    }
    if (dims.size() != axes.size())
        throw std::invalid_argument("fft_axes: axes must be distinct and < d");

    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(), static_cast<int>(loops.size()),
                                  loops.data(), buf, buf, static_cast<int>(dir), FFTW_ESTIMATE);
    }
    if (plan == nullptr)
        throw std::runtime_error("FFTW failed to create a plan");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

void fft_all(std::vector<cplx>& data, const GridSpec& grid, FftDirection dir)
{
    std::vector<int> axes(static_cast<std::size_t>(grid.dim()));
    for (int i = 0; i < grid.dim(); ++i)
        axes[i] = i;
    fft_axes(data, grid, axes, dir);
}

cplx half_offset_phase(long k, std::size_t n)
{
    // exp(-2 pi i (-L + h/2) k / (2L)) with h = 2L/n.
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double angle = -std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return sign * cplx(std::cos(angle), std::sin(angle));
}

} // namespace phl::detail
