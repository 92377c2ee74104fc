// Acceptance runner. With no arguments every criterion runs; otherwise only
// the named ones (ac1 .. ac8). Prints one PASS/FAIL line per criterion and
// exits non-zero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "sumdist/copula.hpp"
#include "sumdist/joint_density.hpp"
#include "sumdist/sampler.hpp"
#include "sumdist/specfun.hpp"
#include "sumdist/sum_distribution.hpp"

using namespace sumdist;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

const std::array<CopulaFamily, 5> kFamilies{CopulaFamily::Gauss, CopulaFamily::StudentT, CopulaFamily::Clayton,
                                            CopulaFamily::Gumbel, CopulaFamily::Frank};

// Published 0.95 / 0.99 quantiles, rho = 0.9 down to 0.1, family order as kFamilies.
struct PublishedRow {
    double rho;
    std::array<std::array<double, 2>, 5> q;
};
const std::array<PublishedRow, 9> kPublished{{
    {0.9, {{{3.21, 4.53}, {3.20, 4.55}, {3.00, 4.00}, {3.20, 4.60}, {3.15, 4.20}}}},
    {0.8, {{{3.12, 4.41}, {3.10, 4.50}, {2.85, 3.85}, {3.15, 4.55}, {3.05, 4.05}}}},
    {0.7, {{{3.03, 4.29}, {3.00, 4.40}, {2.75, 3.70}, {3.10, 4.50}, {2.95, 3.95}}}},
    {0.6, {{{2.94, 4.16}, {2.90, 4.30}, {2.70, 3.65}, {3.00, 4.40}, {2.85, 3.85}}}},
    {0.5, {{{2.85, 4.03}, {2.80, 4.25}, {2.60, 3.55}, {2.95, 4.30}, {2.75, 3.75}}}},
    {0.4, {{{2.75, 3.89}, {2.75, 4.15}, {2.55, 3.50}, {2.80, 4.20}, {2.70, 3.65}}}},
    {0.3, {{{2.65, 3.75}, {2.65, 4.05}, {2.50, 3.45}, {2.70, 4.05}, {2.60, 3.55}}}},
    {0.2, {{{2.55, 3.60}, {2.50, 3.95}, {2.40, 3.40}, {2.55, 3.85}, {2.50, 3.50}}}},
    {0.1, {{{2.44, 3.45}, {2.40, 3.85}, {2.35, 3.30}, {2.45, 3.60}, {2.40, 3.35}}}},
}};

constexpr double kLatticeTolerance = 0.05 + 1e-9;
const std::vector<double> kLevels{0.95, 0.99};

Verdict ac1_gauss_anchor() {
    GridSpec grid;
    grid.step = 0.025;
    grid.z_step = 0.025;
    double worst = 0.0;
    double slowest = 0.0;
    for (double rho : published_rhos()) {
        const auto start = Clock::now();
        const DistributionTable t = cdf_refined(CopulaSpec::gauss(rho), grid);
        for (double q : kLevels) worst = std::max(worst, std::abs(quantile(t, q) - gauss_sum_quantile(q, rho)));
        slowest = std::max(slowest, seconds_since(start));
    }
    const DistributionTable top = cdf_refined(CopulaSpec::gauss(0.9), grid);
    const std::string detail = "max |q - closed form| = " + fmt("%.2e", worst) + ", rho=0.9 q95=" +
                               fmt("%.4f", quantile(top, 0.95)) + " q99=" + fmt("%.4f", quantile(top, 0.99)) +
                               ", slowest rho " + fmt("%.2f", slowest) + " s";
    return {worst <= 0.01 && slowest <= 60.0, detail};
}

// Largest deviation from the published table for one family column.
double column_deviation(const std::vector<QuantileReport>& reports, CopulaFamily family, std::size_t column) {
    double worst = 0.0;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        for (std::size_t l = 0; l < kLevels.size(); ++l) {
            const double published = kPublished[r].q[column][l];
            worst = std::max(worst, std::abs(reports[r].value(family, kLevels[l]) - published));
        }
    }
    return worst;
}

Verdict ac2_table_regression() {
    const auto start = Clock::now();
    const std::vector<double> rhos = published_rhos();
    const auto reports = quantile_sweep(all_families(), rhos, kLevels, CdfMode::PaperExact);

    bool pass = true;
    std::string detail;
    for (std::size_t c = 0; c < kFamilies.size(); ++c) {
        if (kFamilies[c] == CopulaFamily::StudentT) continue;
        const double dev = column_deviation(reports, kFamilies[c], c);
        pass = pass && dev <= kLatticeTolerance;
        detail += std::string(to_string(kFamilies[c])) + " " + fmt("%.3f", dev) + ", ";
    }

    double best_dev = 1e300;
    double best_nu = 0.0;
    for (double nu : {3.0, 4.0, 5.0, 8.0}) {
        const std::vector<FamilyTemplate> t{{CopulaFamily::StudentT, nu}};
        const auto t_reports = quantile_sweep(t, rhos, kLevels, CdfMode::PaperExact);
        const double dev = column_deviation(t_reports, CopulaFamily::StudentT, 1);
        if (dev < best_dev) {
            best_dev = dev;
            best_nu = nu;
        }
    }
    pass = pass && best_dev <= 0.10 + 1e-9;
    const double elapsed = seconds_since(start);
    pass = pass && elapsed <= 600.0;
    detail += "t " + fmt("%.3f", best_dev) + " at nu=" + fmt("%g", best_nu) + ", sweep " + fmt("%.1f", elapsed) + " s";
    return {pass, "max deviation per column: " + detail};
}

Verdict ac3_headline_gaps() {
    const auto q99 = [](CopulaFamily f, double rho) {
        return quantile(cdf_paper_exact(CopulaSpec::from_pearson_rho(f, rho)), 0.99);
    };
    const double gumbel9 = q99(CopulaFamily::Gumbel, 0.9);
    const double clayton9 = q99(CopulaFamily::Clayton, 0.9);
    const double gauss5 = q99(CopulaFamily::Gauss, 0.5);
    const double clayton5 = q99(CopulaFamily::Clayton, 0.5);
    const double gumbel5 = q99(CopulaFamily::Gumbel, 0.5);
    const bool pass = std::abs(gumbel9 - 4.6) <= kLatticeTolerance && std::abs(clayton9 - 4.0) <= kLatticeTolerance &&
                      std::abs((gumbel5 - clayton5) - 0.75) <= 0.1 && std::abs((gauss5 - clayton5) - 0.48) <= 0.1;
    const std::string detail = "rho=0.9 gumbel " + fmt("%.2f", gumbel9) + " vs clayton " + fmt("%.2f", clayton9) +
                               " (" + fmt("%.1f", 100.0 * (gumbel9 - clayton9) / clayton9) +
                               "%); rho=0.5 gumbel-clayton " + fmt("%.2f", gumbel5 - clayton5) + ", gauss-clayton " +
                               fmt("%.2f", gauss5 - clayton5);
    return {pass, detail};
}

Verdict ac4_parameter_pipeline() {
    const double tau = tau_from_pearson_rho(0.9);
    const double clayton = theta_from_tau(CopulaFamily::Clayton, tau);
    const double gumbel = theta_from_tau(CopulaFamily::Gumbel, tau);
    const double frank = theta_from_tau(CopulaFamily::Frank, tau);
    const bool pass = std::abs(tau - 0.7129) <= 1e-4 && std::abs(clayton - 4.97) <= 0.05 &&
                      std::abs(gumbel - 3.48) <= 0.05 && std::abs(frank - 12.0) <= 0.3;
    return {pass, "tau=" + fmt("%.5f", tau) + " clayton=" + fmt("%.4f", clayton) + " gumbel=" + fmt("%.4f", gumbel) +
                      " frank=" + fmt("%.4f", frank)};
}

Verdict ac5_frame_truncation() {
    const GridSpec grid = paper_grid();
    const std::vector<double> axis = grid.axis();
    bool pass = true;
    std::string detail = "frame maxima:";
    for (CopulaFamily f : kFamilies) {
        const JointDensityModel model(CopulaSpec::from_pearson_rho(f, 0.9));
        double worst = 0.0;
        for (double t : axis) {
            for (double edge : {-grid.half_width, grid.half_width}) {
                worst = std::max({worst, joint_pdf(model, edge, t), joint_pdf(model, t, edge)});
            }
        }
        pass = pass && worst < 1e-6;
        detail += " " + std::string(to_string(f)) + " " + fmt("%.3e", worst);
    }
    return {pass, detail};
}

Verdict ac6_sampling_closure() {
    bool pass = true;
    std::string detail = "sup |refined - empirical|:";
    const GridSpec grid = paper_grid();
    for (CopulaFamily f : kFamilies) {
        const auto start = Clock::now();
        const CopulaSpec spec = CopulaSpec::from_pearson_rho(f, 0.9);
        const DistributionTable refined = cdf_refined(spec, grid);
        const DistributionTable empirical = empirical_cdf(sample_sum(spec, 1000000, 20240601), grid);
        double sup = 0.0;
        for (std::size_t k = 0; k < refined.F_values.size(); ++k) {
            sup = std::max(sup, std::abs(refined.F_values[k] - empirical.F_values[k]));
        }
        const double elapsed = seconds_since(start);
        pass = pass && sup <= 4e-3 && elapsed <= 120.0;
        detail += " " + std::string(to_string(f)) + " " + fmt("%.2e", sup) + " (" + fmt("%.1f", elapsed) + " s)";
    }
    return {pass, detail};
}

Verdict ac7_normalization() {
    bool pass = true;
    double worst_joint = 0.0;
    const GridSpec grid = paper_grid();
    for (CopulaFamily f : kFamilies) {
        const DensityGrid g = joint_pdf_grid(JointDensityModel(CopulaSpec::from_pearson_rho(f, 0.9)), grid);
        double mass = 0.0;
        for (double v : g.values) mass += v;
        mass *= grid.step * grid.step;
        worst_joint = std::max(worst_joint, std::abs(mass - 1.0));
    }
    pass = pass && worst_joint <= 1e-3;

    // Copula densities on [1e-12, 1 - 1e-12]^2, integrated in the probit
    // coordinates u = Phi(a) where the corner spikes become smooth.
    const double lo = specfun::std_normal_inv_cdf(1e-12);
    const int cells = 400;
    const double h = -2.0 * lo / cells;
    std::vector<double> u(cells);
    std::vector<double> w(cells);
    for (int i = 0; i < cells; ++i) {
        const double a = lo + (i + 0.5) * h;
        u[i] = specfun::std_normal_cdf(a);
        w[i] = specfun::std_normal_pdf(a) * h;
    }
    double worst_copula = 0.0;
    for (CopulaFamily f : kFamilies) {
        const CopulaSpec spec = CopulaSpec::from_pearson_rho(f, 0.9);
        double mass = 0.0;
        for (int i = 0; i < cells; ++i) {
            for (int j = 0; j < cells; ++j) mass += copula_density(spec, u[i], u[j]) * w[i] * w[j];
        }
        worst_copula = std::max(worst_copula, std::abs(mass - 1.0));
    }
    pass = pass && worst_copula <= 1e-3;
    return {pass, "max |mass - 1|: joint " + fmt("%.2e", worst_joint) + ", copula " + fmt("%.2e", worst_copula)};
}

Verdict ac8_property_suites() {
    const std::string command = std::string("\"") + SUMDIST_UNIT_TESTS_PATH + "\" -ts=properties -nv > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return {status == 0, "unit_tests -ts=properties exit status " + std::to_string(status)};
}

struct Criterion {
    const char* id;
    const char* title;
    std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"ac1", "Gauss sum quantiles match the closed form", ac1_gauss_anchor},
        {"ac2", "published quantile table regression", ac2_table_regression},
        {"ac3", "headline Gumbel/Clayton/Gauss discrepancies", ac3_headline_gaps},
        {"ac4", "rho -> tau -> theta pipeline", ac4_parameter_pipeline},
        {"ac5", "joint density below 1e-6 on the frame of [-5,5]^2", ac5_frame_truncation},
        {"ac6", "refined cdf agrees with 10^6 samples", ac6_sampling_closure},
        {"ac7", "joint and copula densities integrate to one", ac7_normalization},
        {"ac8", "property suites", ac8_property_suites},
    };
    std::set<std::string> selected(argv + 1, argv + argc);

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Verdict v{false, ""};
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s -- %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
