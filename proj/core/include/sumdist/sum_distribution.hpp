#ifndef SUMDIST_SUM_DISTRIBUTION_HPP
#define SUMDIST_SUM_DISTRIBUTION_HPP

#include <span>
#include <string_view>
#include <vector>

#include "sumdist/copula.hpp"
#include "sumdist/grid.hpp"
#include "sumdist/joint_density.hpp"

namespace sumdist {

enum class CdfMode {
    PaperExact,  // lattice-point double sum with the saturating inner limit
    Refined,     // midpoint cells plus half cells along the line x + y = z
    Empirical,   // Monte Carlo estimate (see sampler.hpp)
};

[[nodiscard]] std::string_view to_string(CdfMode mode);
// "paper-exact" or "refined".
[[nodiscard]] CdfMode parse_mode(std::string_view name);

// Tabulated F_Z(z) = P(X + Y <= z) on an ascending z lattice.
struct DistributionTable {
    std::vector<double> z_values;
    std::vector<double> F_values;    // running maximum of raw_values, capped at 1
    std::vector<double> raw_values;  // before the monotonicity clamp
    CopulaSpec spec;
    GridSpec grid;
    CdfMode mode;
};

// Lattice x, y = -h:step:h. For each z the column sum over y_j runs up to the
// lattice point on the line y = z - x_i (first/last point when the line
// leaves the square) and every point contributes f(x_i, y_j) * step^2.
// Lattice points on the line count fully, so the sum behaves like
// F_Z(z + step/2) to first order.
[[nodiscard]] DistributionTable cdf_paper_exact(const CopulaSpec& spec, const GridSpec& grid = paper_grid());
[[nodiscard]] DistributionTable cdf_paper_exact(const JointDensityModel& model, const GridSpec& grid);

// Midpoint rule on the step x step cells of the square, with the cells cut
// by x + y = z integrated as triangles (density at the triangle centroid,
// half the cell area). Second order in step. z values off the cell-corner
// diagonals are linearly interpolated.
[[nodiscard]] DistributionTable cdf_refined(const CopulaSpec& spec, const GridSpec& grid = paper_grid());
[[nodiscard]] DistributionTable cdf_refined(const JointDensityModel& model, const GridSpec& grid);

[[nodiscard]] DistributionTable compute_cdf(const CopulaSpec& spec, const GridSpec& grid, CdfMode mode);

// PaperExact and Empirical tables: smallest lattice z with F(z) >= q.
// Refined tables: linear interpolation between the bracketing lattice points.
// Throws QuantileOutOfRange unless F(z_min) < q <= F(z_max).
[[nodiscard]] double quantile(const DistributionTable& table, double q);

struct FamilyTemplate {
    CopulaFamily family;
    double nu = kDefaultStudentNu;
};

struct QuantileRow {
    CopulaSpec spec;
    std::vector<double> values;  // one per level, same order as QuantileReport::levels
};

struct QuantileReport {
    double rho;
    std::vector<double> levels;
    std::vector<QuantileRow> rows;  // one per family template, template order

    // Throws std::out_of_range if the family or level is not in the report.
    [[nodiscard]] double value(CopulaFamily family, double level) const;
};

[[nodiscard]] std::vector<FamilyTemplate> all_families(double nu = kDefaultStudentNu);

// Correlations of the published quantile table, Test 1..9 order (0.9 down to 0.1).
[[nodiscard]] std::vector<double> published_rhos();

// For every rho, every template is turned into a CopulaSpec via
// CopulaSpec::from_pearson_rho and its quantiles are read off the computed
// distribution. Cells are computed in parallel; output order is fixed.
[[nodiscard]] std::vector<QuantileReport> quantile_sweep(std::span<const FamilyTemplate> families,
                                                         std::span<const double> rhos,
                                                         std::span<const double> levels,
                                                         CdfMode mode = CdfMode::PaperExact,
                                                         const GridSpec& grid = paper_grid());

// F_Z for the Gauss copula in closed form: Z ~ N(0, sqrt(2 + 2 rho)).
[[nodiscard]] double gauss_sum_cdf(double z, double rho);
[[nodiscard]] double gauss_sum_quantile(double q, double rho);

}  // namespace sumdist

#endif  // SUMDIST_SUM_DISTRIBUTION_HPP
