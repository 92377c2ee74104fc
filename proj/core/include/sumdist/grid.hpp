#ifndef SUMDIST_GRID_HPP
#define SUMDIST_GRID_HPP

#include <cstddef>
#include <vector>

namespace sumdist {

// Discretization of the truncated square [-half_width, half_width]^2 and of
// the z-range on which F_Z is tabulated. Defaults are the published setup:
// S = [-5, 5]^2, dx = dy = 0.05, z = -5:0.05:5.
struct GridSpec {
    double half_width = 5.0;
    double step = 0.05;
    double z_min = -5.0;
    double z_max = 5.0;
    double z_step = 0.05;

    // Throws ValidationError unless step > 0, 2*half_width/step is an integer
    // within 1e-9, z_min < z_max, z_step > 0 and the z-range closes on its
    // own lattice within 1e-9.
    void validate() const;

    // Number of lattice points per axis, 2*half_width/step + 1.
    [[nodiscard]] std::size_t points_per_axis() const;
    [[nodiscard]] std::size_t cells_per_axis() const { return points_per_axis() - 1; }
    [[nodiscard]] std::size_t z_count() const;

    // x_i = -half_width + i*step, i = 0..points_per_axis()-1.
    [[nodiscard]] std::vector<double> axis() const;
    [[nodiscard]] std::vector<double> z_values() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

[[nodiscard]] GridSpec paper_grid();

}  // namespace sumdist

#endif  // SUMDIST_GRID_HPP
