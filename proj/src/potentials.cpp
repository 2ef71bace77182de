#include "phl/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phl {

RieszOrder::RieszOrder(double beta) : beta_(beta)
{
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("Riesz order must lie in (0, 1), got " + std::to_string(beta));
}

double riesz_constant(double beta)
{
    return 2.0 * std::tgamma(beta) * std::cos(std::numbers::pi * beta / 2.0)
           * std::pow(2.0 * std::numbers::pi, -beta);
}

MultiplierSpec riesz_multiplier(int axis, RieszOrder beta)
{
    const double b = beta.value();
    const double c = riesz_constant(b);
    MultiplierSpec m;
    m.evaluator = [axis, b, c](std::span<const double> xi) -> cplx { return c * std::pow(std::abs(xi[axis]), -b); };
    m.dc_policy = cplx(0.0);
    m.nyquist_policy.reset();
    m.active_axes = {axis};
    m.real_preserving = true;
    return m;
}

double axis_dc_energy_ratio(const Field& f, int axis)
{
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.dim())
        throw std::invalid_argument("axis out of range");
    auto s = forward_ft(f);
    double total = 0.0;
    double dc = 0.0;
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        double e = std::norm(s[flat]);
        total += e;
        if ((flat / g.stride(axis)) % g.n(axis) == 0)
            dc += e;
    }
    return total > 0.0 ? dc / total : 0.0;
}

PotentialResult riesz_axis(const Field& f, int axis, RieszOrder beta)
{
    if (axis < 0 || axis >= f.grid().dim())
        throw std::invalid_argument("riesz_axis: axis out of range");
    PotentialResult r;
    r.dc_energy_ratio = axis_dc_energy_ratio(f, axis);
    r.dc_flagged = r.dc_energy_ratio > kDcFlagThreshold;
    r.field = apply_multiplier(f, riesz_multiplier(axis, beta));
    return r;
}

PotentialResult product_fractional(const Field& f, double alpha)
{
    const int d = f.grid().dim();
    if (!(alpha > 0.0 && alpha < d))
        throw std::invalid_argument("product_fractional: alpha must lie in (0, d)");
    RieszOrder beta(alpha / d);
    PotentialResult out;
    out.field = f;
    for (int axis = 0; axis < d; ++axis) {
        auto step = riesz_axis(out.field, axis, beta);
        out.field = std::move(step.field);
        out.dc_energy_ratio = std::max(out.dc_energy_ratio, step.dc_energy_ratio);
    }
    out.dc_flagged = out.dc_energy_ratio > kDcFlagThreshold;
    return out;
}

} // namespace phl
