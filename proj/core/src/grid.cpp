#include "sumdist/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sumdist/errors.hpp"

namespace sumdist {
namespace {

bool is_integral(double value) { return std::abs(value - std::round(value)) <= 1e-9 * std::max(1.0, std::abs(value)); }

// start + k*step. When 1/step and start/step are integers (0.05, 0.025, ...)
// the point is formed as an integer ratio, which rounds once and gives
// 4.6 rather than 4.6000000000000014.
double lattice_point(double start, std::size_t k, double step) {
    const double inverse = 1.0 / step;
    const double offset = start * inverse;
    if (is_integral(inverse) && is_integral(offset)) {
        return (std::round(offset) + static_cast<double>(k)) / std::round(inverse);
    }
    return start + static_cast<double>(k) * step;
}

}  // namespace

void GridSpec::validate() const {
    const bool finite = std::isfinite(half_width) && std::isfinite(step) && std::isfinite(z_min) &&
                        std::isfinite(z_max) && std::isfinite(z_step);
    if (!finite) throw ValidationError("grid parameters must be finite");
    if (!(step > 0.0)) throw ValidationError("grid step must be positive");
    if (!(half_width > 0.0)) throw ValidationError("grid half-width must be positive");
    if (!is_integral(2.0 * half_width / step)) {
        throw ValidationError("2*half_width/step must be an integer (lattice must close)");
    }
    if (!(z_min < z_max)) throw ValidationError("z_min must be smaller than z_max");
    if (!(z_step > 0.0)) throw ValidationError("z step must be positive");
    if (!is_integral((z_max - z_min) / z_step)) {
        throw ValidationError("(z_max - z_min)/z_step must be an integer");
    }
}

std::size_t GridSpec::points_per_axis() const {
    return static_cast<std::size_t>(std::llround(2.0 * half_width / step)) + 1;
}

std::size_t GridSpec::z_count() const {
    return static_cast<std::size_t>(std::llround((z_max - z_min) / z_step)) + 1;
}

std::vector<double> GridSpec::axis() const {
    std::vector<double> out(points_per_axis());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = lattice_point(-half_width, i, step);
    return out;
}

std::vector<double> GridSpec::z_values() const {
    std::vector<double> out(z_count());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = lattice_point(z_min, k, z_step);
    return out;
}

GridSpec paper_grid() { return GridSpec{}; }

}  // namespace sumdist
