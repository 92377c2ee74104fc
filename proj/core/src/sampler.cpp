#include "sumdist/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sumdist/errors.hpp"
#include "sumdist/parallel.hpp"
#include "sumdist/specfun.hpp"

namespace sumdist {
namespace {

constexpr double kFrankLower = 1e-12;
constexpr double kFrankUpper = 1.0 - 1e-12;
constexpr int kFrankBisections = 60;
constexpr double kFrankResidualLimit = 1e-10;

UniformPair from_normals(double x1, double x2) {
    return {specfun::std_normal_cdf(x1), specfun::std_normal_cdf(x2), specfun::std_normal_cdf(-x1),
            specfun::std_normal_cdf(-x2)};
}

UniformPair draw_gauss(double rho, RandomSource& rng) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    return from_normals(z1, rho * z1 + std::sqrt(1.0 - rho * rho) * z2);
}

UniformPair draw_student(double rho, double nu, RandomSource& rng) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    const double scale = std::sqrt(nu / rng.chi_squared(nu));
    const double t1 = scale * z1;
    const double t2 = scale * (rho * z1 + std::sqrt(1.0 - rho * rho) * z2);
    return {specfun::student_t_cdf(t1, nu), specfun::student_t_cdf(t2, nu), specfun::student_t_cdf(-t1, nu),
            specfun::student_t_cdf(-t2, nu)};
}

// psi(s) = (1 + s)^(-1/theta) evaluated at s = E / V.
UniformPair draw_clayton(double theta, RandomSource& rng) {
    const double frailty = rng.gamma(1.0 / theta);
    const double a = -std::log1p(rng.exponential() / frailty) / theta;
    const double b = -std::log1p(rng.exponential() / frailty) / theta;
    return {std::exp(a), std::exp(b), -std::expm1(a), -std::expm1(b)};
}

// psi(s) = exp(-s^alpha), S positive stable with E exp(-sS) = exp(-s^alpha).
UniformPair draw_gumbel(double theta, bool independent, RandomSource& rng) {
    if (independent) {
        const double u1 = rng.uniform();
        const double u2 = rng.uniform();
        return {u1, u2, 1.0 - u1, 1.0 - u2};
    }
    const double alpha = 1.0 / theta;
    const double angle = specfun::kPi * rng.uniform();
    const double w = rng.exponential();
    const double stable = std::sin(alpha * angle) / std::pow(std::sin(angle), 1.0 / alpha) *
                          std::pow(std::sin((1.0 - alpha) * angle) / w, (1.0 - alpha) / alpha);
    const double a = -std::pow(rng.exponential() / stable, alpha);
    const double b = -std::pow(rng.exponential() / stable, alpha);
    return {std::exp(a), std::exp(b), -std::expm1(a), -std::expm1(b)};
}

UniformPair draw_frank(double theta, RandomSource& rng, double& max_residual) {
    const double u1 = rng.uniform();
    const double v = rng.uniform();
    double lo = kFrankLower;
    double hi = kFrankUpper;
    for (int it = 0; it < kFrankBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (frank_conditional_cdf(theta, u1, mid) < v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double u2 = 0.5 * (lo + hi);
    const double residual = std::abs(frank_conditional_cdf(theta, u1, u2) - v);
    if (residual > kFrankResidualLimit) {
        throw NumericalError("Frank conditional inversion residual " + std::to_string(residual));
    }
    max_residual = std::max(max_residual, residual);
    return {u1, u2, 1.0 - u1, 1.0 - u2};
}

// Monotone in u with full precision in both tails; used as a ranking key.
double tail_key(double u, double complement) { return u <= 0.5 ? std::log(u) : -std::log(complement); }

std::vector<double> mid_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j + 1);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

// Sorts v ascending and returns the number of inversions removed.
std::uint64_t merge_sort_swaps(std::vector<double>& v, std::vector<double>& buffer, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t swaps = merge_sort_swaps(v, buffer, lo, mid) + merge_sort_swaps(v, buffer, mid, hi);
    std::size_t i = lo;
    std::size_t j = mid;
    std::size_t k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            buffer[k++] = v[j++];
            swaps += mid - i;
        } else {
            buffer[k++] = v[i++];
        }
    }
    while (i < mid) buffer[k++] = v[i++];
    while (j < hi) buffer[k++] = v[j++];
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

// Number of tied pairs among runs of equal values in an already sorted range.
template <typename Eq>
std::uint64_t tied_pairs(std::size_t n, Eq equal) {
    std::uint64_t total = 0;
    std::uint64_t run = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (equal(i - 1, i)) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total + run * (run - 1) / 2;
}

void require_pairs(std::size_t nx, std::size_t ny) {
    if (nx != ny) throw ValidationError("x and y must have the same length");
    if (nx < 2) throw ValidationError("at least two observations are required");
}

}  // namespace

std::vector<UniformPair> sample_copula(const CopulaSpec& spec, std::size_t n, const RandomSource& rng,
                                       SamplerDiagnostics* diagnostics) {
    if (n == 0) throw ValidationError("sample size must be positive");
    const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
    if (chunks > (std::size_t{1} << 32)) throw ValidationError("sample size too large");

    std::vector<UniformPair> out(n);
    std::vector<double> residuals(chunks, 0.0);
    const bool independent = spec.is_independence();
    parallel_for(chunks, [&](std::size_t chunk) {
        RandomSource stream = rng.substream((rng.stream() << 32) + chunk);
        const std::size_t begin = chunk * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) {
            switch (spec.family()) {
                case CopulaFamily::Gauss: out[i] = draw_gauss(spec.rho(), stream); break;
                case CopulaFamily::StudentT: out[i] = draw_student(spec.rho(), spec.nu(), stream); break;
                case CopulaFamily::Clayton: out[i] = draw_clayton(spec.theta(), stream); break;
                case CopulaFamily::Gumbel: out[i] = draw_gumbel(spec.theta(), independent, stream); break;
                case CopulaFamily::Frank: out[i] = draw_frank(spec.theta(), stream, residuals[chunk]); break;
            }
        }
    });
    if (diagnostics != nullptr) {
        diagnostics->max_inversion_residual = *std::max_element(residuals.begin(), residuals.end());
    }
    return out;
}

double normal_score(double u, double complement) {
    return u < 0.5 ? specfun::std_normal_inv_cdf(u) : -specfun::std_normal_inv_cdf(complement);
}

SampleSet sample_sum(const CopulaSpec& spec, std::size_t n, const RandomSource& rng) {
    const std::vector<UniformPair> uniforms = sample_copula(spec, n, rng);
    SampleSet set{std::vector<SamplePoint>(n), spec, rng.seed(), n};
    parallel_for(n, [&](std::size_t i) {
        set.pairs[i] = {normal_score(uniforms[i].u1, uniforms[i].u1c), normal_score(uniforms[i].u2, uniforms[i].u2c)};
    });
    return set;
}

SampleSet sample_sum(const CopulaSpec& spec, std::size_t n, std::uint64_t seed) {
    return sample_sum(spec, n, RandomSource(seed));
}

DistributionTable empirical_cdf(const SampleSet& samples, std::span<const double> z_values) {
    if (samples.pairs.empty()) throw ValidationError("empirical cdf of an empty sample set");
    if (z_values.empty()) throw ValidationError("empirical cdf needs at least one z value");
    if (!std::is_sorted(z_values.begin(), z_values.end())) throw ValidationError("z values must be ascending");

    std::vector<double> sums(samples.pairs.size());
    std::transform(samples.pairs.begin(), samples.pairs.end(), sums.begin(),
                   [](const SamplePoint& p) { return p.x + p.y; });
    std::sort(sums.begin(), sums.end());

    GridSpec grid;
    grid.z_min = z_values.front();
    grid.z_max = z_values.back();
    grid.z_step = z_values.size() > 1 ? (grid.z_max - grid.z_min) / static_cast<double>(z_values.size() - 1) : 0.0;

    DistributionTable table{{z_values.begin(), z_values.end()}, {}, {}, samples.spec, grid, CdfMode::Empirical};
    const double n = static_cast<double>(sums.size());
    for (double z : z_values) {
        const auto count = std::upper_bound(sums.begin(), sums.end(), z) - sums.begin();
        table.raw_values.push_back(static_cast<double>(count) / n);
    }
    table.F_values = table.raw_values;
    return table;
}

DistributionTable empirical_cdf(const SampleSet& samples, const GridSpec& grid) {
    grid.validate();
    DistributionTable table = empirical_cdf(samples, grid.z_values());
    table.grid = grid;
    return table;
}

double empirical_quantile(const SampleSet& samples, double q) {
    if (samples.pairs.empty()) throw ValidationError("empirical quantile of an empty sample set");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie strictly inside (0, 1)");
    std::vector<double> sums(samples.pairs.size());
    std::transform(samples.pairs.begin(), samples.pairs.end(), sums.begin(),
                   [](const SamplePoint& p) { return p.x + p.y; });
    const double n = static_cast<double>(sums.size());
    auto k = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
    k = std::clamp<std::size_t>(k, 1, sums.size()) - 1;
    std::nth_element(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(k), sums.end());
    return sums[k];
}

double estimate_tau(std::span<const double> x, std::span<const double> y) {
    require_pairs(x.size(), y.size());
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    const std::uint64_t x_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return x[order[a]] == x[order[b]]; });
    const std::uint64_t joint_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) {
        return x[order[a]] == x[order[b]] && y[order[a]] == y[order[b]];
    });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    std::vector<double> buffer(n);
    const std::uint64_t swaps = merge_sort_swaps(ys, buffer, 0, n);
    const std::uint64_t y_ties = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });

    const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double numerator = total - static_cast<double>(x_ties) - static_cast<double>(y_ties) +
                             static_cast<double>(joint_ties) - 2.0 * static_cast<double>(swaps);
    const double denominator =
        std::sqrt((total - static_cast<double>(x_ties)) * (total - static_cast<double>(y_ties)));
    if (denominator == 0.0) throw NumericalError("Kendall tau undefined for constant data");
    return numerator / denominator;
}

double estimate_tau(std::span<const UniformPair> pairs) {
    std::vector<double> a(pairs.size());
    std::vector<double> b(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        a[i] = tail_key(pairs[i].u1, pairs[i].u1c);
        b[i] = tail_key(pairs[i].u2, pairs[i].u2c);
    }
    return estimate_tau(a, b);
}

double estimate_tau(const SampleSet& samples) {
    std::vector<double> a(samples.pairs.size());
    std::vector<double> b(samples.pairs.size());
    for (std::size_t i = 0; i < samples.pairs.size(); ++i) {
        a[i] = samples.pairs[i].x;
        b[i] = samples.pairs[i].y;
    }
    return estimate_tau(a, b);
}

double estimate_spearman_rho(std::span<const double> x, std::span<const double> y) {
    require_pairs(x.size(), y.size());
    const std::vector<double> rx = mid_ranks(x);
    const std::vector<double> ry = mid_ranks(y);
    const double mean = 0.5 * static_cast<double>(x.size() + 1);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw NumericalError("Spearman rho undefined for constant data");
    return sxy / std::sqrt(sxx * syy);
}

double estimate_spearman_rho(std::span<const UniformPair> pairs) {
    std::vector<double> a(pairs.size());
    std::vector<double> b(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        a[i] = tail_key(pairs[i].u1, pairs[i].u1c);
        b[i] = tail_key(pairs[i].u2, pairs[i].u2c);
    }
    return estimate_spearman_rho(a, b);
}

double ks_statistic_normal(std::span<const double> values) {
    if (values.empty()) throw ValidationError("KS statistic of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double F = specfun::std_normal_cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double upper_tail_concentration(std::span<const UniformPair> pairs, double level) {
    if (pairs.empty()) throw ValidationError("tail concentration of an empty sample");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("tail level must lie in (0, 1)");
    const double tail = 1.0 - level;
    const auto hits = std::count_if(pairs.begin(), pairs.end(),
                                    [&](const UniformPair& p) { return p.u1c < tail && p.u2c < tail; });
    return static_cast<double>(hits) / static_cast<double>(pairs.size()) / tail;
}

double lower_tail_concentration(std::span<const UniformPair> pairs, double level) {
    if (pairs.empty()) throw ValidationError("tail concentration of an empty sample");
    if (!(level > 0.0 && level < 1.0)) throw DomainError("tail level must lie in (0, 1)");
    const auto hits = std::count_if(pairs.begin(), pairs.end(),
                                    [&](const UniformPair& p) { return p.u1 < level && p.u2 < level; });
    return static_cast<double>(hits) / static_cast<double>(pairs.size()) / level;
}

}  // namespace sumdist
