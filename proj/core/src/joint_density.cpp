#include "sumdist/joint_density.hpp"

#include <algorithm>
#include <cmath>

#include "sumdist/errors.hpp"
#include "sumdist/parallel.hpp"
#include "sumdist/specfun.hpp"

namespace sumdist {
namespace {

// phi(x) phi(y) below 1e-300 is treated as exactly zero.
const double kLogUnderflow = std::log(1e-300);

std::vector<NormalMargin> prepare_axis(const JointDensityModel& model, std::span<const double> xs) {
    std::vector<NormalMargin> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = model.margin(xs[i]);
    return out;
}

}  // namespace

NormalMargin JointDensityModel::margin(double x) const {
    NormalMargin m;
    m.x = x;
    m.log_pdf = specfun::std_normal_log_pdf(x);
    const UnitMargin unit{specfun::std_normal_cdf(x), specfun::std_normal_cdf(-x)};
    if (unit.u <= 0.0 || unit.complement <= 0.0) {
        m.representable = false;
        return m;
    }
    m.terms = prepare_normal_margin(spec_, x, unit);
    return m;
}

double JointDensityModel::density(const NormalMargin& a, const NormalMargin& b) const {
    const double log_marginals = a.log_pdf + b.log_pdf;
    if (log_marginals < kLogUnderflow || !a.representable || !b.representable) return 0.0;
    return std::exp(copula_log_density(spec_, a.terms, b.terms) + log_marginals);
}

double joint_pdf(const JointDensityModel& model, double x, double y) { return model(x, y); }

DensityGrid evaluate_density_grid(const JointDensityModel& model, std::span<const double> xs,
                                  std::span<const double> ys) {
    DensityGrid grid;
    grid.x_axis.assign(xs.begin(), xs.end());
    grid.y_axis.assign(ys.begin(), ys.end());
    grid.values.assign(xs.size() * ys.size(), 0.0);

    const std::vector<NormalMargin> mx = prepare_axis(model, xs);
    const bool same_axis = std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
    const std::vector<NormalMargin> my = same_axis ? mx : prepare_axis(model, ys);

    const std::size_t ny = ys.size();
    parallel_for(xs.size(), [&](std::size_t i) {
        double* row = grid.values.data() + i * ny;
        for (std::size_t j = 0; j < ny; ++j) row[j] = model.density(mx[i], my[j]);
    });
    return grid;
}

DensityGrid joint_pdf_grid(const JointDensityModel& model, const GridSpec& grid) {
    grid.validate();
    const std::vector<double> axis = grid.axis();
    return evaluate_density_grid(model, axis, axis);
}

}  // namespace sumdist
