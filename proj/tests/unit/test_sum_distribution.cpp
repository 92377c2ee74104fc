#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sumdist/errors.hpp"
#include "sumdist/sum_distribution.hpp"
#include "thread_env.hpp"

using namespace sumdist;
using doctest::Approx;

namespace {

constexpr double kLatticeTolerance = 0.05 + 1e-9;

double value_at(const DistributionTable& t, double z, bool raw = false) {
    for (std::size_t k = 0; k < t.z_values.size(); ++k) {
        if (std::abs(t.z_values[k] - z) < 1e-9) return raw ? t.raw_values[k] : t.F_values[k];
    }
    FAIL("z not on the table lattice");
    return 0.0;
}

GridSpec grid_with_step(double step) {
    GridSpec g;
    g.step = step;
    g.z_step = step;
    return g;
}

double gauss_sum_oracle(double z, double rho) { return oracle::normal_cdf(z / std::sqrt(2.0 + 2.0 * rho)); }

const std::vector<CopulaFamily> kFamilies{CopulaFamily::Gauss, CopulaFamily::StudentT, CopulaFamily::Clayton,
                                          CopulaFamily::Gumbel, CopulaFamily::Frank};

}  // namespace

TEST_CASE("grid specification") {
    const GridSpec g = paper_grid();
    CHECK(g.points_per_axis() == 201);
    CHECK(g.cells_per_axis() == 200);
    CHECK(g.z_count() == 201);
    CHECK(g.axis().front() == -5.0);
    CHECK(g.axis().back() == 5.0);
    CHECK(g.axis()[100] == 0.0);
    CHECK(g.z_values()[192] == 4.6);

    GridSpec bad = paper_grid();
    bad.step = 0.03;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = paper_grid();
    bad.step = -0.05;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = paper_grid();
    bad.z_max = bad.z_min;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = paper_grid();
    bad.z_step = 0.3;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    CHECK_THROWS_AS((void)cdf_paper_exact(CopulaSpec::gauss(0.5), bad), ValidationError);
}

TEST_CASE("mode names") {
    CHECK(parse_mode("paper-exact") == CdfMode::PaperExact);
    CHECK(parse_mode("refined") == CdfMode::Refined);
    CHECK(to_string(CdfMode::Refined) == "refined");
    CHECK_THROWS_AS((void)parse_mode("simpson"), ValidationError);
}

TEST_CASE("closed form for the Gauss sum") {
    CHECK(gauss_sum_cdf(0.0, 0.9) == 0.5);
    CHECK(gauss_sum_quantile(0.95, 0.9) == Approx(1.6448536269514722 * std::sqrt(3.8)).epsilon(1e-12));
    CHECK(gauss_sum_quantile(0.99, 0.9) == Approx(4.535).epsilon(1e-3));
    CHECK_THROWS_AS((void)gauss_sum_cdf(0.0, 1.0), DomainError);
}

TEST_CASE("lattice sum for the Gauss copula") {
    const DistributionTable t = cdf_paper_exact(CopulaSpec::gauss(0.9));
    CHECK(t.mode == CdfMode::PaperExact);
    CHECK(t.z_values.size() == 201);
    CHECK(std::abs(value_at(t, 0.0) - 0.5) <= 0.01);
    CHECK(std::abs(quantile(t, 0.99) - 4.53) <= kLatticeTolerance);
    CHECK(std::abs(quantile(t, 0.95) - 3.21) <= kLatticeTolerance);
}

TEST_CASE("lattice sum for Clayton and Gumbel at rho = 0.9") {
    const DistributionTable clayton = cdf_paper_exact(CopulaSpec::from_pearson_rho(CopulaFamily::Clayton, 0.9));
    const DistributionTable gumbel = cdf_paper_exact(CopulaSpec::from_pearson_rho(CopulaFamily::Gumbel, 0.9));
    CHECK(std::abs(quantile(clayton, 0.99) - 4.00) <= kLatticeTolerance);
    CHECK(std::abs(quantile(gumbel, 0.99) - 4.60) <= kLatticeTolerance);
}

TEST_CASE("lattice sum matches a literal transcription of the nested loops") {
    // Coarse grid so the O(n^3) loop stays cheap. For each z the inner sum runs
    // over y_j up to the lattice point on y = z - x_i, saturating at either end.
    GridSpec g;
    g.half_width = 3.0;
    g.step = 0.25;
    g.z_min = -3.0;
    g.z_max = 3.0;
    g.z_step = 0.25;
    const CopulaSpec spec = CopulaSpec::from_pearson_rho(CopulaFamily::Gumbel, 0.6);
    const JointDensityModel model(spec);
    const DistributionTable t = cdf_paper_exact(spec, g);
    const std::vector<double> axis = g.axis();
    const int n = static_cast<int>(axis.size());
    for (std::size_t k = 0; k < t.z_values.size(); ++k) {
        const double z = t.z_values[k];
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ylimit = z - axis[i];
            int last;
            if (ylimit >= g.half_width) {
                last = n - 1;
            } else if (ylimit <= -g.half_width) {
                last = 0;
            } else {
                last = static_cast<int>(std::lround((ylimit + g.half_width) / g.step));
            }
            for (int j = 0; j <= last; ++j) total += joint_pdf(model, axis[i], axis[j]) * g.step * g.step;
        }
        CHECK(t.raw_values[k] == Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("refined integration against the closed form") {
    const DistributionTable t = cdf_refined(CopulaSpec::gauss(0.9), grid_with_step(0.025));
    double worst = 0.0;
    for (std::size_t k = 0; k < t.z_values.size(); ++k) {
        worst = std::max(worst, std::abs(t.F_values[k] - gauss_sum_oracle(t.z_values[k], 0.9)));
    }
    CHECK(worst <= 5e-3);
    CHECK(quantile(t, 0.95) == Approx(3.206).epsilon(1e-3 / 3.206));
}

TEST_CASE("refined integration reaches the full mass of the square") {
    for (CopulaFamily f : kFamilies) {
        GridSpec g;
        g.z_max = 2.0 * g.half_width;
        const DistributionTable t = cdf_refined(CopulaSpec::from_pearson_rho(f, 0.9), g);
        CHECK(t.F_values.back() >= 0.999);
    }
}

TEST_CASE("Frank sum is symmetric about zero") {
    const DistributionTable t = cdf_refined(CopulaSpec::from_pearson_rho(CopulaFamily::Frank, 0.9));
    CHECK(std::abs(value_at(t, 0.0) - 0.5) <= 2e-3);
}

TEST_CASE("refined interpolation off the cell diagonals") {
    // z lattice offset by a third of a cell from the x + y diagonals.
    GridSpec g;
    g.z_min = -4.0 + 0.05 / 3.0;
    g.z_max = 4.0 + 0.05 / 3.0;
    g.z_step = 0.05;
    const DistributionTable t = cdf_refined(CopulaSpec::gauss(0.4), g);
    for (std::size_t k = 0; k < t.z_values.size(); ++k) {
        CHECK(std::abs(t.F_values[k] - gauss_sum_oracle(t.z_values[k], 0.4)) <= 1e-3);
    }
}

TEST_CASE("quantile conventions") {
    const DistributionTable exact = cdf_paper_exact(CopulaSpec::gauss(0.5));
    const double q = quantile(exact, 0.95);
    const double index = (q + 5.0) / 0.05;
    CHECK(std::abs(index - std::round(index)) < 1e-9);
    CHECK(value_at(exact, q) >= 0.95);
    CHECK(value_at(exact, q - 0.05) < 0.95);

    const DistributionTable refined = cdf_refined(CopulaSpec::gauss(0.9));
    CHECK(quantile(refined, 0.95) == Approx(gauss_sum_quantile(0.95, 0.9)).epsilon(1e-3));

    CHECK_THROWS_AS((void)quantile(refined, 0.999999), QuantileOutOfRange);
    CHECK_THROWS_AS((void)quantile(refined, 1e-6), QuantileOutOfRange);
    CHECK_THROWS_AS((void)quantile(refined, 1.0), DomainError);
    CHECK_THROWS_AS((void)quantile(refined, 0.0), DomainError);
}

TEST_CASE("quantile sweep") {
    const std::vector<double> levels{0.95, 0.99};
    const auto templates = all_families(4.0);
    const std::vector<double> rhos = published_rhos();
    const std::vector<QuantileReport> reports = quantile_sweep(templates, rhos, levels);
    REQUIRE(reports.size() == 9);
    CHECK(reports.front().rho == 0.9);
    CHECK(reports.back().rho == 0.1);

    const QuantileReport& five = reports[4];
    CHECK(std::abs(five.value(CopulaFamily::Clayton, 0.99) - 3.55) <= kLatticeTolerance);
    CHECK(std::abs(five.value(CopulaFamily::Gumbel, 0.99) - 4.30) <= kLatticeTolerance);
    CHECK(std::abs(reports[8].value(CopulaFamily::Gauss, 0.95) - 2.44) <= kLatticeTolerance);
    CHECK_THROWS_AS((void)five.value(CopulaFamily::Gauss, 0.5), std::out_of_range);

    for (const QuantileReport& r : reports) {
        REQUIRE(r.rows.size() == 5);
        for (const QuantileRow& row : r.rows) CHECK(row.values[0] < row.values[1]);
    }
    // q95 grows with rho for every family (reports run from rho = 0.9 down).
    for (CopulaFamily f : kFamilies) {
        for (std::size_t r = 1; r < reports.size(); ++r) {
            CHECK(reports[r].value(f, 0.95) <= reports[r - 1].value(f, 0.95));
        }
        CHECK(reports.back().value(f, 0.95) < reports.front().value(f, 0.95));
    }
}

TEST_CASE("sweep applies the family template's nu") {
    const std::vector<FamilyTemplate> t3{{CopulaFamily::StudentT, 3.0}};
    const std::vector<double> rho{0.5};
    const std::vector<double> level{0.99};
    const auto reports = quantile_sweep(t3, rho, level);
    CHECK(reports[0].rows[0].spec.nu() == 3.0);
}

TEST_CASE("distribution tables are nondecreasing" * doctest::test_suite("properties")) {
    for (CopulaFamily f : kFamilies) {
        for (double rho : {0.1, 0.5, 0.9}) {
            const CopulaSpec spec = CopulaSpec::from_pearson_rho(f, rho);
            for (const DistributionTable& t : {cdf_paper_exact(spec), cdf_refined(spec)}) {
                for (std::size_t k = 1; k < t.z_values.size(); ++k) {
                    CHECK(t.F_values[k] >= t.F_values[k - 1]);
                    CHECK(t.raw_values[k] >= t.raw_values[k - 1] - 1e-9);
                }
                for (double v : t.raw_values) CHECK(v <= 1.0 + 1e-6);
                CHECK(t.F_values.front() <= 0.01);
                CHECK(t.F_values.back() >= 0.98);
            }
        }
    }
}

TEST_CASE("refined mode over the whole square keeps the mass" * doctest::test_suite("properties")) {
    GridSpec g;
    g.z_max = 10.0;
    for (CopulaFamily f : kFamilies) {
        for (double rho : {0.1, 0.5, 0.9}) {
            CHECK(cdf_refined(CopulaSpec::from_pearson_rho(f, rho), g).F_values.back() >= 0.9999);
        }
    }
}

TEST_CASE("Gauss sum analytic anchor" * doctest::test_suite("properties")) {
    for (double rho : published_rhos()) {
        const DistributionTable t = cdf_refined(CopulaSpec::gauss(rho));
        for (std::size_t k = 0; k < t.z_values.size(); ++k) {
            CHECK(std::abs(t.F_values[k] - gauss_sum_oracle(t.z_values[k], rho)) <= 5e-3);
        }
    }
}

TEST_CASE("grid refinement convergence" * doctest::test_suite("properties")) {
    for (CopulaFamily f : kFamilies) {
        const CopulaSpec spec = CopulaSpec::from_pearson_rho(f, 0.9);
        for (CdfMode mode : {CdfMode::PaperExact, CdfMode::Refined}) {
            const DistributionTable coarse = compute_cdf(spec, grid_with_step(0.05), mode);
            const DistributionTable mid = compute_cdf(spec, grid_with_step(0.025), mode);
            const DistributionTable fine = compute_cdf(spec, grid_with_step(0.0125), mode);
            for (double z : {-2.0, 0.0, 2.0}) {
                const double d1 = std::abs(value_at(coarse, z, true) - value_at(mid, z, true));
                const double d2 = std::abs(value_at(mid, z, true) - value_at(fine, z, true));
                CAPTURE(spec.describe());
                CAPTURE(z);
                CHECK(d1 <= 4.0 * d2 + 1e-6);
            }
        }
    }
}

TEST_CASE("refined mode is stable under step halving" * doctest::test_suite("properties")) {
    for (CopulaFamily f : kFamilies) {
        const CopulaSpec spec = CopulaSpec::from_pearson_rho(f, 0.9);
        const DistributionTable coarse = cdf_refined(spec, grid_with_step(0.05));
        const DistributionTable fine = cdf_refined(spec, grid_with_step(0.025));
        for (std::size_t k = 0; k < coarse.z_values.size(); ++k) {
            CHECK(std::abs(coarse.F_values[k] - fine.F_values[2 * k]) <= 1e-4);
        }
    }
}

TEST_CASE("radially symmetric copulas give a symmetric sum" * doctest::test_suite("properties")) {
    for (CopulaFamily f : {CopulaFamily::Gauss, CopulaFamily::StudentT, CopulaFamily::Frank}) {
        for (double rho : {0.1, 0.5, 0.9}) {
            const DistributionTable t = cdf_refined(CopulaSpec::from_pearson_rho(f, rho));
            const std::size_t n = t.z_values.size();
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(std::abs(t.F_values[n - 1 - k] - (1.0 - t.F_values[k])) <= 5e-3);
            }
        }
    }
}

TEST_CASE("sweep results do not depend on the thread count" * doctest::test_suite("properties")) {
    const auto templates = all_families(4.0);
    const std::vector<double> rhos{0.3, 0.8};
    const std::vector<double> levels{0.95, 0.99};
    std::vector<QuantileReport> serial;
    DistributionTable serial_table = cdf_refined(CopulaSpec::gauss(0.2));
    {
        ScopedThreads one(1);
        serial = quantile_sweep(templates, rhos, levels, CdfMode::Refined);
        serial_table = cdf_refined(CopulaSpec::from_pearson_rho(CopulaFamily::Clayton, 0.7));
    }
    ScopedThreads many(4);
    const auto parallel = quantile_sweep(templates, rhos, levels, CdfMode::Refined);
    for (std::size_t r = 0; r < serial.size(); ++r) {
        for (std::size_t f = 0; f < serial[r].rows.size(); ++f) {
            CHECK(serial[r].rows[f].values == parallel[r].rows[f].values);
        }
    }
    CHECK(cdf_refined(CopulaSpec::from_pearson_rho(CopulaFamily::Clayton, 0.7)).raw_values == serial_table.raw_values);
}
