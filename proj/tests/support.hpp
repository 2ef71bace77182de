#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "phl/grid.hpp"
#include "phl/spectral.hpp"

namespace testing_support {

using phl::cplx;
using phl::Field;
using phl::GridSpec;

inline double max_abs_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const Field& a)
{
    double m = 0.0;
    for (auto v : a.values())
        m = std::max(m, std::abs(v));
    return m;
}

inline Field random_real(const GridSpec& g, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.size());
    for (auto& x : v)
        x = nd(rng);
    return Field::from_real(g, std::move(v));
}

inline Field random_complex(const GridSpec& g, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(g.size());
    for (auto& x : v)
        x = {nd(rng), nd(rng)};
    return Field::from_complex(g, std::move(v));
}

// Real field whose spectrum lives on bins with 0 < |k_i| <= kmax on every axis:
// a sum of separable random cosines and sines with no dc or nyquist content.
inline Field band_limited(const GridSpec& g, int kmax, std::uint64_t seed, int terms = 12)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kd(1, kmax);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    std::normal_distribution<double> amp;
    std::vector<double> v(g.size(), 0.0);
    for (int t = 0; t < terms; ++t) {
        std::array<int, phl::kMaxDim> k{};
        std::array<double, phl::kMaxDim> phase{};
        for (int i = 0; i < g.dim(); ++i) {
            k[i] = kd(rng);
            phase[i] = ph(rng);
        }
        double a = amp(rng);
        for (std::size_t flat = 0; flat < g.size(); ++flat) {
            auto idx = g.unflatten(flat);
            double s = a;
            for (int i = 0; i < g.dim(); ++i)
                s *= std::cos(M_PI * k[i] * g.coord(i, idx[i]) / g.half_width(i) + phase[i]);
            v[flat] += s;
        }
    }
    return Field::from_real(g, std::move(v));
}

} // namespace testing_support
