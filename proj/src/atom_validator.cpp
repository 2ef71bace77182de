// Atom checks written against the definitions directly; nothing here is
// shared with the generators in atoms.cpp.

#include <cmath>
#include <sstream>

#include "phl/atoms.hpp"

namespace phl {

namespace {

constexpr double kMomentTol = 1e-8;

int cancellation_order(double p) { return static_cast<int>(std::floor(1.0 / p - 1.0 + 1e-12)); }

ValidationResult fail(const std::string& msg) { return {false, msg}; }

} // namespace

ValidationResult validate_hp_atom_1d(const Field& a, double p, double center, double radius)
{
    const auto& g = a.grid();
    if (g.dim() != 1)
        return fail("not a one-dimensional field");
    const double bound = std::pow(2.0 * radius, -1.0 / p);
    const double h = g.spacing(0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        double x = g.coord(0, j);
        double v = std::abs(a[j]);
        if (std::abs(x - center) >= radius && v != 0.0) {
            std::ostringstream os;
            os << "nonzero sample outside B at x = " << x;
            return fail(os.str());
        }
        if (v > bound * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "sup bound violated: " << v << " > " << bound;
            return fail(os.str());
        }
    }
    for (int k = 0; k <= cancellation_order(p); ++k) {
        double s = 0.0;
        double s_abs = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            double t = std::pow((g.coord(0, j) - center) / radius, k) * a[j].real() * h;
            s += t;
            s_abs += std::abs(t);
        }
        if (std::abs(s) > kMomentTol * s_abs) {
            std::ostringstream os;
            os << "moment " << k << " = " << s << " does not vanish";
            return fail(os.str());
        }
    }
    return {};
}

ValidationResult validate_product_atom(const Field& a, double p, std::span<const Rectangle> rects)
{
    const auto& g = a.grid();
    const int d = g.dim();
    const double cell = g.cell_volume();
    std::vector<int> owner(a.size(), -1);
    std::array<double, kMaxDim> x{};
    for (std::size_t flat = 0; flat < a.size(); ++flat) {
        std::size_t rem = flat;
        for (int i = 0; i < d; ++i) {
            x[i] = g.coord(i, rem / g.stride(i));
            rem %= g.stride(i);
        }
        for (std::size_t r = 0; r < rects.size(); ++r) {
            const auto& R = rects[r];
            bool inside = true;
            for (int i = 0; i < d; ++i)
                inside = inside && x[i] >= R.lo[i] && x[i] < R.lo[i] + R.side[i];
            if (inside) {
                if (owner[flat] >= 0)
                    return fail("rectangles overlap");
                owner[flat] = static_cast<int>(r);
            }
        }
        if (owner[flat] < 0 && a[flat] != cplx(0.0)) {
            std::ostringstream os;
            os << "nonzero sample outside every rectangle at flat index " << flat;
            return fail(os.str());
        }
    }

    double omega = 0.0;
    for (const auto& R : rects) {
        double v = 1.0;
        for (int i = 0; i < d; ++i)
            v *= R.side[i];
        omega += v;
    }
    double budget = 0.0;
    for (std::size_t flat = 0; flat < a.size(); ++flat)
        if (owner[flat] >= 0)
            budget += std::norm(a[flat]) * cell;
    double limit = std::pow(omega, 1.0 - 2.0 / p);
    if (budget > limit * (1.0 + 1e-10)) {
        std::ostringstream os;
        os << "L2 budget violated: " << budget << " > " << limit;
        return fail(os.str());
    }

    const int order = cancellation_order(p);
    for (int axis = 0; axis < d; ++axis) {
        const std::size_t n = g.n(axis);
        const std::size_t stride = g.stride(axis);
        const double h = g.spacing(axis);
        for (std::size_t r = 0; r < rects.size(); ++r) {
            const double c = rects[r].lo[axis] + rects[r].side[axis] / 2.0;
            const double half = rects[r].side[axis] / 2.0;
            for (std::size_t base = 0; base < a.size(); ++base) {
                if ((base / stride) % n != 0)
                    continue;
                for (int k = 0; k <= order; ++k) {
                    double s = 0.0;
                    double s_abs = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        std::size_t flat = base + j * stride;
                        if (owner[flat] != static_cast<int>(r))
                            continue;
                        double t = std::pow((g.coord(axis, j) - c) / half, k) * a[flat].real() * h;
                        s += t;
                        s_abs += std::abs(t);
                    }
                    if (std::abs(s) > kMomentTol * s_abs) {
                        std::ostringstream os;
                        os << "rectangle " << r << ", axis " << axis << ": moment " << k << " = " << s
                           << " does not vanish on a grid line";
                        return fail(os.str());
                    }
                }
            }
        }
    }
    return {};
}

} // namespace phl
