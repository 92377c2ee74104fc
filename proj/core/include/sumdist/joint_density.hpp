#ifndef SUMDIST_JOINT_DENSITY_HPP
#define SUMDIST_JOINT_DENSITY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sumdist/copula.hpp"
#include "sumdist/grid.hpp"

namespace sumdist {

// One standard normal coordinate prepared for density evaluation.
struct NormalMargin {
    double x = 0.0;
    double log_pdf = 0.0;
    bool representable = true;  // false once Phi(x) or Phi(-x) underflows to 0
    MarginTerms terms;
};

// f_{X,Y}(x, y) = c(Phi(x), Phi(y)) phi(x) phi(y) for X, Y ~ N(0, 1) coupled by
// the copula in spec. For the Gauss copula this is exactly the bivariate
// standard normal density.
class JointDensityModel {
   public:
    explicit JointDensityModel(CopulaSpec spec) : spec_(spec) {}

    [[nodiscard]] const CopulaSpec& spec() const { return spec_; }

    [[nodiscard]] NormalMargin margin(double x) const;
    [[nodiscard]] double density(const NormalMargin& a, const NormalMargin& b) const;
    [[nodiscard]] double operator()(double x, double y) const { return density(margin(x), margin(y)); }

   private:
    CopulaSpec spec_;
};

[[nodiscard]] double joint_pdf(const JointDensityModel& model, double x, double y);

// values are stored x-major: at(i, j) = f(x_axis[i], y_axis[j]).
struct DensityGrid {
    std::vector<double> x_axis;
    std::vector<double> y_axis;
    std::vector<double> values;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * y_axis.size() + j]; }
    [[nodiscard]] std::size_t rows() const { return x_axis.size(); }
    [[nodiscard]] std::size_t cols() const { return y_axis.size(); }
};

// Density on an arbitrary tensor lattice; the per-axis transforms are
// computed once per axis point. Rows are filled in parallel.
[[nodiscard]] DensityGrid evaluate_density_grid(const JointDensityModel& model, std::span<const double> xs,
                                                std::span<const double> ys);

// Density on the grid's own lattice x_i = y_i = -h + i*step.
[[nodiscard]] DensityGrid joint_pdf_grid(const JointDensityModel& model, const GridSpec& grid);

}  // namespace sumdist

#endif  // SUMDIST_JOINT_DENSITY_HPP
