#include "phl/cesaro.hpp"

#include <cmath>
#include <stdexcept>

#include "phl/spectral.hpp"

namespace phl {

namespace {

// In-place average along `axis` of a half-offset grid.
void average_half_offset(std::vector<cplx>& v, const GridSpec& g, int axis)
{
    const std::size_t n = g.n(axis);
    const std::size_t stride = g.stride(axis);
    const std::size_t mid = n / 2; // first sample with x > 0
    const double h = g.spacing(axis);
    std::vector<cplx> line(n);
    for (std::size_t base = 0; base < v.size(); ++base) {
        if ((base / stride) % n != 0)
            continue;
        for (std::size_t k = 0; k < n; ++k)
            line[k] = v[base + k * stride];
        cplx acc = 0.0;
        for (std::size_t k = mid; k < n; ++k) {
            v[base + k * stride] = (acc + 0.5 * h * line[k]) / g.coord(axis, k);
            acc += h * line[k];
        }
        acc = 0.0;
        for (std::size_t k = mid; k-- > 0;) {
            v[base + k * stride] = -(acc + 0.5 * h * line[k]) / g.coord(axis, k);
            acc += h * line[k];
        }
    }
}

// In-place average along `axis` of values on the lattice xi_k = k dxi,
// k in [-n/2, n/2), stored in centered order (index k + n/2). The k = 0
// entry keeps its value (the limit of the average).
void average_lattice(std::vector<cplx>& v, std::size_t n, std::size_t stride, double step)
{
    const std::size_t zero = n / 2;
    std::vector<cplx> line(n);
    for (std::size_t base = 0; base < v.size(); ++base) {
        if ((base / stride) % n != 0)
            continue;
        for (std::size_t k = 0; k < n; ++k)
            line[k] = v[base + k * stride];
        cplx acc = 0.0;
        for (std::size_t k = zero + 1; k < n; ++k) {
            acc += 0.5 * step * (line[k - 1] + line[k]);
            v[base + k * stride] = acc / (static_cast<double>(k - zero) * step);
        }
        acc = 0.0;
        for (std::size_t k = zero; k-- > 0;) {
            acc += 0.5 * step * (line[k + 1] + line[k]);
            // int_0^xi = -acc for xi < 0, divided by xi < 0.
            v[base + k * stride] = acc / (static_cast<double>(zero - k) * step);
        }
    }
}

} // namespace

Field hardy_cesaro(const Field& f)
{
    const auto& g = f.grid();
    std::vector<cplx> v(f.values().begin(), f.values().end());
    for (int axis = 0; axis < g.dim(); ++axis)
        average_half_offset(v, g, axis);
    if (f.is_real()) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            r[i] = v[i].real();
        return Field::from_real(g, std::move(r));
    }
    return Field::from_complex(g, std::move(v));
}

double cesaro_hardy_lhs(const Field& f, double p, CesaroMode mode)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("cesaro_hardy_lhs: p must lie in (0, 1]");
    if (mode == CesaroMode::direct)
        return lp_quasinorm(hardy_cesaro(f), p);

    const auto& g = f.grid();
    const int d = g.dim();
    auto spec = forward_ft(f);

    // Re-layout the spectrum in centered order so each axis is the lattice
    // -n/2 .. n/2-1 in increasing frequency.
    std::vector<cplx> v(spec.size());
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        auto idx = g.unflatten(flat);
        std::size_t target = 0;
        for (int i = 0; i < d; ++i)
            target += ((idx[i] + g.n(i) / 2) % g.n(i)) * g.stride(i);
        v[target] = spec[flat];
    }
    for (int axis = 0; axis < d; ++axis)
        average_lattice(v, g.n(axis), g.stride(axis), g.frequency_step(axis));

    double sum = 0.0;
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        auto idx = g.unflatten(flat);
        double w = 1.0;
        for (int i = 0; i < d; ++i) {
            auto k = static_cast<long>(idx[i]) - static_cast<long>(g.n(i) / 2);
            w *= std::abs(static_cast<double>(k) * g.frequency_step(i));
        }
        if (w == 0.0)
            continue;
        sum += std::pow(std::abs(v[flat]), p) * std::pow(w, p - 2.0);
    }
    for (int i = 0; i < d; ++i)
        sum *= g.frequency_step(i);
    return std::pow(sum, 1.0 / p);
}

} // namespace phl
