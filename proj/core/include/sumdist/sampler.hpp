#ifndef SUMDIST_SAMPLER_HPP
#define SUMDIST_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sumdist/copula.hpp"
#include "sumdist/grid.hpp"
#include "sumdist/random.hpp"
#include "sumdist/sum_distribution.hpp"

namespace sumdist {

// A copula draw with both complements, so normal scores of points deep in
// the upper tail keep full precision.
struct UniformPair {
    double u1;
    double u2;
    double u1c;
    double u2c;
};

struct SamplePoint {
    double x;
    double y;
};

struct SampleSet {
    std::vector<SamplePoint> pairs;
    CopulaSpec spec;
    std::uint64_t seed;
    std::size_t n;
};

struct SamplerDiagnostics {
    // Largest |dC/du1(u1, u2) - v| over the Frank conditional inversions.
    double max_inversion_residual = 0.0;
};

// Draws are produced in fixed chunks of kSampleChunk points; chunk k uses the
// stream (rng.stream() << 32) + k of rng's seed. Chunks are generated in
// parallel and concatenated in chunk order, so the output depends on
// (spec, seed, stream, n) only and not on the number of worker threads.
inline constexpr std::size_t kSampleChunk = 16384;

// Gauss: Cholesky-correlated normals through Phi. t: the same pair scaled by
// sqrt(nu / chi2_nu) through T_nu. Clayton: gamma(1/theta) frailty. Gumbel:
// positive stable frailty of index 1/theta (Chambers-Mallows-Stuck). Frank:
// bisection on the conditional cdf dC/du1 = v over u2 in (1e-12, 1 - 1e-12).
[[nodiscard]] std::vector<UniformPair> sample_copula(const CopulaSpec& spec, std::size_t n,
                                                     const RandomSource& rng,
                                                     SamplerDiagnostics* diagnostics = nullptr);

// Copula draws mapped to standard normal margins.
[[nodiscard]] SampleSet sample_sum(const CopulaSpec& spec, std::size_t n, const RandomSource& rng);
[[nodiscard]] SampleSet sample_sum(const CopulaSpec& spec, std::size_t n, std::uint64_t seed);

// Phi^{-1} evaluated on whichever of u, 1 - u is smaller.
[[nodiscard]] double normal_score(double u, double complement);

// F(z) = #{x + y <= z} / n on the given ascending z values.
[[nodiscard]] DistributionTable empirical_cdf(const SampleSet& samples, std::span<const double> z_values);
[[nodiscard]] DistributionTable empirical_cdf(const SampleSet& samples, const GridSpec& grid);
// Smallest observed sum s with #{x + y <= s} / n >= q.
[[nodiscard]] double empirical_quantile(const SampleSet& samples, double q);

// Kendall tau-b via Knight's O(n log n) merge-sort count.
[[nodiscard]] double estimate_tau(std::span<const double> x, std::span<const double> y);
[[nodiscard]] double estimate_tau(std::span<const UniformPair> pairs);
[[nodiscard]] double estimate_tau(const SampleSet& samples);

// Pearson correlation of mid-ranks.
[[nodiscard]] double estimate_spearman_rho(std::span<const double> x, std::span<const double> y);
[[nodiscard]] double estimate_spearman_rho(std::span<const UniformPair> pairs);

// sup_x |F_n(x) - Phi(x)|.
[[nodiscard]] double ks_statistic_normal(std::span<const double> values);

// P(U1 > level, U2 > level) / (1 - level) and P(U1 < level, U2 < level) / level.
[[nodiscard]] double upper_tail_concentration(std::span<const UniformPair> pairs, double level = 0.95);
[[nodiscard]] double lower_tail_concentration(std::span<const UniformPair> pairs, double level = 0.05);

}  // namespace sumdist

#endif  // SUMDIST_SAMPLER_HPP
