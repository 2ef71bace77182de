#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace phl {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 3;

/// Uniform, half-offset sampling of the box [-L_1, L_1) x ... x [-L_d, L_d).
///
/// Sample k along axis i sits at x_i(k) = -L_i + (k + 1/2) h_i with
/// h_i = 2 L_i / n_i, so no sample lies on a coordinate hyperplane.
class GridSpec {
public:
    GridSpec() = default;

    int dim() const { return dim_; }
    std::size_t n(int axis) const { return n_[axis]; }
    double half_width(int axis) const { return half_width_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double coord(int axis, std::size_t k) const
    {
        return -half_width_[axis] + (static_cast<double>(k) + 0.5) * spacing_[axis];
    }

    /// Row-major stride of `axis` (last axis contiguous).
    std::size_t stride(int axis) const { return stride_[axis]; }
    std::size_t size() const { return size_; }
    double cell_volume() const;
    double min_spacing() const;
    double max_half_width() const;

    /// Signed frequency index of natural (FFT-order) bin m along `axis`:
    /// m for m < n/2, m - n otherwise.
    long freq_index(int axis, std::size_t m) const
    {
        auto nn = static_cast<long>(n_[axis]);
        auto mm = static_cast<long>(m);
        return mm < nn / 2 ? mm : mm - nn;
    }
    /// Frequency xi = k / (2 L) of natural bin m along `axis`.
    double frequency(int axis, std::size_t m) const
    {
        return static_cast<double>(freq_index(axis, m)) / (2.0 * half_width_[axis]);
    }
    double frequency_step(int axis) const { return 1.0 / (2.0 * half_width_[axis]); }

    /// Multi-index of flat index `flat`.
    std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;

    bool operator==(const GridSpec&) const = default;

private:
    friend GridSpec make_grid(int, std::span<const std::size_t>, std::span<const double>);

    int dim_ = 0;
    std::array<std::size_t, kMaxDim> n_{};
    std::array<double, kMaxDim> half_width_{};
    std::array<double, kMaxDim> spacing_{};
    std::array<std::size_t, kMaxDim> stride_{};
    std::size_t size_ = 0;
};

/// Throws std::invalid_argument unless d in {1,2,3}, every n_i is a power of
/// two >= 16 and every L_i > 0.
GridSpec make_grid(int d, std::span<const std::size_t> n, std::span<const double> half_width);

/// Isotropic convenience overload.
GridSpec make_grid(int d, std::size_t n, double half_width);

enum class ScalarKind : std::uint8_t { real = 0, complex = 1 };

/// Sampled function on a GridSpec. Values are stored as complex numbers; a
/// field of kind `real` has identically zero imaginary parts.
class Field {
public:
    Field() = default;

    static Field zeros(const GridSpec& grid, ScalarKind kind = ScalarKind::real);
    static Field from_real(const GridSpec& grid, std::vector<double> values);
    static Field from_complex(const GridSpec& grid, std::vector<cplx> values);

    const GridSpec& grid() const { return grid_; }
    ScalarKind kind() const { return kind_; }
    bool is_real() const { return kind_ == ScalarKind::real; }
    std::size_t size() const { return values_.size(); }
    std::span<const cplx> values() const { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }

    std::vector<double> real_part() const;
    std::vector<double> imag_part() const;
    /// Drops the imaginary part.
    Field to_real() const;

    Field scaled(cplx c) const;
    Field operator+(const Field& other) const;
    Field operator-(const Field& other) const;

    /// Reflection x -> -x along every axis.
    Field reflected() const;

    /// Discrete integral sum_k values[k] * prod h_i.
    cplx integral() const;

private:
    Field(GridSpec grid, std::vector<cplx> values, ScalarKind kind);

    GridSpec grid_;
    std::vector<cplx> values_;
    ScalarKind kind_ = ScalarKind::real;
};

using PointFunction = std::function<double(std::span<const double>)>;
using ComplexPointFunction = std::function<cplx(std::span<const double>)>;

/// values[k] = f(x(k)); rejects non-finite evaluations.
Field sample_fn(const GridSpec& grid, const PointFunction& f);
Field sample_complex_fn(const GridSpec& grid, const ComplexPointFunction& f);

/// Tensor product g_1(x_1) * ... * g_d(x_d) of 1-d fields on the axes of `grid`.
Field tensor_product(const GridSpec& grid, std::span<const Field> factors);

/// (sum_k |f_k|^p prod h_i)^{1/p}; throws for p <= 0.
double lp_quasinorm(const Field& f, double p);

/// Exponent triple of the fractional-integration experiments: 1/q = 1/p - alpha/d.
class Exponents {
public:
    Exponents(double p, double alpha, int d);

    double p() const { return p_; }
    double alpha() const { return alpha_; }
    int dim() const { return d_; }
    double q() const { return q_; }

private:
    double p_;
    double alpha_;
    int d_;
    double q_;
};

/// Integer part [1/p - 1]: the highest moment order an H^p atom must cancel.
int moment_order(double p);

} // namespace phl
