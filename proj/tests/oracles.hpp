#pragma once

// Reference computations shared by the unit tests and the acceptance suite.
// None of them go through the FFT paths under test.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "phl/grid.hpp"
#include "phl/square_fn.hpp"

namespace oracles {

using phl::cplx;

inline constexpr double pi = std::numbers::pi;

// Second derivative of (1 - u^2)^8, dilated to [-r, r]: compact support and
// vanishing moments of order 0 and 1.
inline double bump_dd(double x, double r)
{
    double u = x / r;
    if (std::abs(u) >= 1.0)
        return 0.0;
    double w = 1.0 - u * u;
    return std::pow(w, 6) * (240.0 * u * u - 16.0);
}

// int |y|^(beta - 1) bump_dd(x - y, r) dy by tanh-sinh on the pieces of
// [x - r, x + r] split at the kernel singularity y = 0.
inline double riesz_quadrature(double x, double r, double beta)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    auto integrand = [&](double y) { return std::pow(std::abs(y), beta - 1.0) * bump_dd(x - y, r); };
    double a = x - r;
    double b = x + r;
    if (a < 0.0 && b > 0.0)
        return ts.integrate(integrand, a, 0.0) + ts.integrate(integrand, 0.0, b);
    return ts.integrate(integrand, a, b);
}

inline double poisson(double t, double x) { return t / (pi * (t * t + x * x)); }

// sup over t >= 0 of P_(1+t)(x): attained at 1 + t = |x| when |x| > 1.
inline double poisson_maximal(double x)
{
    return std::abs(x) <= 1.0 ? poisson(1.0, x) : 1.0 / (2.0 * pi * std::abs(x));
}

// (1 - 2 pi x^2) exp(-pi x^2), with transform 2 pi xi^2 exp(-pi xi^2).
inline double mexican_hat(double x) { return (1.0 - 2.0 * pi * x * x) * std::exp(-pi * x * x); }

// psi_hat(zeta) by composite 20-point Gauss-Legendre on the closed form.
inline double psi_hat_gauss(const phl::AnalyzingWavelet& psi, double zeta)
{
    const int panels = 512;
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = -1.0 + 2.0 * i / panels;
        double b = a + 2.0 / panels;
        s += boost::math::quadrature::gauss<double, 20>::integrate(
            [&](double x) { return psi.value(x) * std::cos(2.0 * pi * x * zeta); }, a, b);
    }
    return s;
}

// S(f)^2 of a 1-d field at the samples `points` from the definition: explicit
// kernel by direct inverse DFT, circular convolution, then the weighted sum
// over cone shifts.
inline std::vector<double> s_function_squared(const phl::Field& f, const phl::AnalyzingWavelet& psi,
                                              const phl::ConeQuadrature& quad, const std::vector<std::size_t>& points)
{
    const auto& g = f.grid();
    const std::size_t n = g.n(0);
    const double h = g.spacing(0);
    auto rhos = quad.apertures();
    auto ws = quad.weights();
    std::vector<double> total(points.size(), 0.0);
    for (std::size_t r = 0; r < rhos.size(); ++r) {
        std::vector<double> mult(n);
        for (std::size_t k = 0; k < n; ++k)
            mult[k] = psi_hat_gauss(psi, rhos[r] * g.frequency(0, k));
        std::vector<cplx> kernel(n);
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += mult[k] * std::polar(1.0, 2.0 * pi * static_cast<double>(k * j % n) / static_cast<double>(n));
            kernel[j] = s / static_cast<double>(n);
        }
        std::vector<cplx> conv(n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t j = 0; j < n; ++j)
                conv[x] += f[j] * kernel[(x + n - j) % n];
        long M = static_cast<long>(std::ceil(rhos[r] / h)) - 1;
        for (std::size_t p = 0; p < points.size(); ++p) {
            double inner = 0.0;
            for (long m = -M; m <= M; ++m) {
                long x = (static_cast<long>(points[p]) - m) % static_cast<long>(n);
                if (x < 0)
                    x += static_cast<long>(n);
                inner += h * std::norm(conv[static_cast<std::size_t>(x)]);
            }
            total[p] += ws[r] * inner;
        }
    }
    return total;
}

} // namespace oracles
