#include "sumdist/sum_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "sumdist/errors.hpp"
#include "sumdist/numerics.hpp"
#include "sumdist/parallel.hpp"
#include "sumdist/specfun.hpp"

namespace sumdist {
namespace {

DistributionTable make_table(const CopulaSpec& spec, const GridSpec& grid, CdfMode mode,
                             std::vector<double> raw) {
    DistributionTable table{grid.z_values(), {}, std::move(raw), spec, grid, mode};
    table.F_values.resize(table.raw_values.size());
    double running = 0.0;
    for (std::size_t k = 0; k < table.raw_values.size(); ++k) {
        running = std::max(running, table.raw_values[k]);
        table.F_values[k] = std::min(running, 1.0);
    }
    return table;
}

// Index of the last y lattice point included for inner limit y <= ylimit.
std::size_t inner_limit_index(double ylimit, double half_width, double step, std::size_t last) {
    const double slack = 1e-9 * step;
    if (ylimit >= half_width - slack) return last;
    if (ylimit <= -half_width + slack) return 0;
    const double position = (ylimit + half_width) / step;
    return std::min(last, static_cast<std::size_t>(std::floor(position + 1e-9)));
}

}  // namespace

std::string_view to_string(CdfMode mode) {
    switch (mode) {
        case CdfMode::PaperExact: return "paper-exact";
        case CdfMode::Refined: return "refined";
        case CdfMode::Empirical: return "empirical";
    }
    throw std::logic_error("unknown cdf mode");
}

CdfMode parse_mode(std::string_view name) {
    if (name == "paper-exact" || name == "paper_exact" || name == "paper") return CdfMode::PaperExact;
    if (name == "refined") return CdfMode::Refined;
    throw ValidationError("unknown mode '" + std::string(name) + "' (expected paper-exact or refined)");
}

DistributionTable cdf_paper_exact(const CopulaSpec& spec, const GridSpec& grid) {
    return cdf_paper_exact(JointDensityModel(spec), grid);
}

DistributionTable cdf_paper_exact(const JointDensityModel& model, const GridSpec& grid) {
    grid.validate();
    const DensityGrid density = joint_pdf_grid(model, grid);
    const std::size_t n = density.rows();
    const double cell = grid.step * grid.step;

    // column_prefix[i*n + j] = sum_{j' <= j} f(x_i, y_j'), ascending j.
    std::vector<double> column_prefix(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        numerics::CompensatedSum sum;
        for (std::size_t j = 0; j < n; ++j) {
            sum += density.at(i, j);
            column_prefix[i * n + j] = sum.value();
        }
    }

    const std::vector<double> zs = grid.z_values();
    std::vector<double> raw(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) {
        numerics::CompensatedSum sum;
        for (std::size_t i = 0; i < n; ++i) {
            const double ylimit = zs[k] - density.x_axis[i];
            const std::size_t j = inner_limit_index(ylimit, grid.half_width, grid.step, n - 1);
            sum += column_prefix[i * n + j];
        }
        raw[k] = sum.value() * cell;
    }
    return make_table(model.spec(), grid, CdfMode::PaperExact, std::move(raw));
}

DistributionTable cdf_refined(const CopulaSpec& spec, const GridSpec& grid) {
    return cdf_refined(JointDensityModel(spec), grid);
}

DistributionTable cdf_refined(const JointDensityModel& model, const GridSpec& grid) {
    grid.validate();
    const std::size_t n = grid.cells_per_axis();
    const double h = grid.half_width;
    const double step = grid.step;

    std::vector<double> centers(n);
    std::vector<double> centroids(n);  // lower-left triangle centroid offset
    for (std::size_t i = 0; i < n; ++i) {
        const double corner = -h + static_cast<double>(i) * step;
        centers[i] = corner + 0.5 * step;
        centroids[i] = corner + step / 3.0;
    }
    const DensityGrid full = evaluate_density_grid(model, centers, centers);
    const DensityGrid lower = evaluate_density_grid(model, centroids, centroids);

    // Cell (i, j) spans x + y in [-2h + (i+j) step, -2h + (i+j+2) step]; sort
    // cells by anti-diagonal s = i + j.
    const std::size_t diagonals = 2 * n - 1;
    std::vector<double> full_by_diagonal(diagonals);
    std::vector<double> lower_by_diagonal(diagonals);
    for (std::size_t s = 0; s < diagonals; ++s) {
        numerics::CompensatedSum full_sum;
        numerics::CompensatedSum lower_sum;
        const std::size_t i_begin = s >= n ? s - n + 1 : 0;
        const std::size_t i_end = std::min(s, n - 1);
        for (std::size_t i = i_begin; i <= i_end; ++i) {
            full_sum += full.at(i, s - i);
            lower_sum += lower.at(i, s - i);
        }
        full_by_diagonal[s] = full_sum.value();
        lower_by_diagonal[s] = lower_sum.value();
    }
    std::vector<double> full_prefix(diagonals);
    {
        numerics::CompensatedSum sum;
        for (std::size_t s = 0; s < diagonals; ++s) {
            sum += full_by_diagonal[s];
            full_prefix[s] = sum.value();
        }
    }

    // z = -2h + m*step: cells with s <= m-2 lie below the line, cells with
    // s = m-1 are cut along their anti-diagonal.
    const auto mass_at = [&](long m) {
        if (m <= 0) return 0.0;
        const long last = static_cast<long>(diagonals) - 1;
        const double below = m - 2 >= 0 ? full_prefix[static_cast<std::size_t>(std::min(m - 2, last))] : 0.0;
        const double cut = (m - 1 <= last) ? 0.5 * lower_by_diagonal[static_cast<std::size_t>(m - 1)] : 0.0;
        return (below + cut) * step * step;
    };

    const std::vector<double> zs = grid.z_values();
    std::vector<double> raw(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const double m = (zs[k] + 2.0 * h) / step;
        const double m_floor = std::floor(m + 1e-9);
        const double frac = m - m_floor;
        const long base = static_cast<long>(m_floor);
        if (std::abs(frac) <= 1e-9) {
            raw[k] = mass_at(base);
        } else {
            raw[k] = (1.0 - frac) * mass_at(base) + frac * mass_at(base + 1);
        }
    }
    return make_table(model.spec(), grid, CdfMode::Refined, std::move(raw));
}

DistributionTable compute_cdf(const CopulaSpec& spec, const GridSpec& grid, CdfMode mode) {
    switch (mode) {
        case CdfMode::PaperExact: return cdf_paper_exact(spec, grid);
        case CdfMode::Refined: return cdf_refined(spec, grid);
        case CdfMode::Empirical: break;
    }
    throw ValidationError("compute_cdf: empirical tables come from the sampler");
}

double quantile(const DistributionTable& table, double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie strictly inside (0, 1)");
    const auto& F = table.F_values;
    if (F.empty() || !(F.front() < q) || !(F.back() >= q)) {
        char level[32];
        std::snprintf(level, sizeof level, "%.17g", q);
        throw QuantileOutOfRange(std::string("table does not bracket probability ") + level);
    }
    const std::size_t k =
        static_cast<std::size_t>(std::lower_bound(F.begin(), F.end(), q) - F.begin());
    if (table.mode != CdfMode::Refined) return table.z_values[k];
    const double f0 = F[k - 1];
    const double f1 = F[k];
    const double z0 = table.z_values[k - 1];
    const double z1 = table.z_values[k];
    return z0 + (q - f0) / (f1 - f0) * (z1 - z0);
}

double QuantileReport::value(CopulaFamily family, double level) const {
    const auto level_it = std::find(levels.begin(), levels.end(), level);
    if (level_it == levels.end()) throw std::out_of_range("level not in quantile report");
    const auto index = static_cast<std::size_t>(level_it - levels.begin());
    for (const QuantileRow& row : rows) {
        if (row.spec.family() == family) return row.values[index];
    }
    throw std::out_of_range("family not in quantile report");
}

std::vector<FamilyTemplate> all_families(double nu) {
    return {{CopulaFamily::Gauss, nu},
            {CopulaFamily::StudentT, nu},
            {CopulaFamily::Clayton, nu},
            {CopulaFamily::Gumbel, nu},
            {CopulaFamily::Frank, nu}};
}

std::vector<double> published_rhos() { return {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1}; }

std::vector<QuantileReport> quantile_sweep(std::span<const FamilyTemplate> families,
                                           std::span<const double> rhos, std::span<const double> levels,
                                           CdfMode mode, const GridSpec& grid) {
    grid.validate();
    const std::size_t cells = rhos.size() * families.size();
    std::vector<std::optional<QuantileRow>> computed(cells);
    parallel_for(cells, [&](std::size_t cell) {
        const double rho = rhos[cell / families.size()];
        const FamilyTemplate& tmpl = families[cell % families.size()];
        const CopulaSpec spec = CopulaSpec::from_pearson_rho(tmpl.family, rho, tmpl.nu);
        const DistributionTable table = compute_cdf(spec, grid, mode);
        QuantileRow row{spec, {}};
        row.values.reserve(levels.size());
        for (double q : levels) row.values.push_back(quantile(table, q));
        computed[cell] = std::move(row);
    });

    std::vector<QuantileReport> reports;
    reports.reserve(rhos.size());
    for (std::size_t r = 0; r < rhos.size(); ++r) {
        QuantileReport report{rhos[r], {levels.begin(), levels.end()}, {}};
        for (std::size_t f = 0; f < families.size(); ++f) {
            report.rows.push_back(std::move(*computed[r * families.size() + f]));
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

double gauss_sum_cdf(double z, double rho) {
    if (!(std::abs(rho) < 1.0)) throw DomainError("rho must satisfy -1 < rho < 1");
    return specfun::std_normal_cdf(z / std::sqrt(2.0 + 2.0 * rho));
}

double gauss_sum_quantile(double q, double rho) {
    if (!(std::abs(rho) < 1.0)) throw DomainError("rho must satisfy -1 < rho < 1");
    return std::sqrt(2.0 + 2.0 * rho) * specfun::std_normal_inv_cdf(q);
}

}  // namespace sumdist
