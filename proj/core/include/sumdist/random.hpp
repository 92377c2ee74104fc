#ifndef SUMDIST_RANDOM_HPP
#define SUMDIST_RANDOM_HPP

#include <cstdint>
#include <optional>
#include <random>

namespace sumdist {

// Seeded random stream. The engine is std::mt19937_64 initialised through
// std::seed_seq from (seed, stream), both of which the standard pins down
// exactly, so a given (seed, stream) produces the same numbers on every
// platform. Variate transforms are written out here for the same reason:
// the std:: distributions are implementation-defined.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream() const { return stream_; }

    // Independent stream for the same seed; substream(k) == RandomSource(seed, k).
    [[nodiscard]] RandomSource substream(std::uint64_t stream) const { return RandomSource(seed_, stream); }

    std::uint64_t next_u64() { return engine_(); }

    // 53 random mantissa bits, centred in their bucket: never 0 or 1.
    double uniform();
    // Box-Muller; the second value of each pair is cached.
    double normal();
    double exponential();
    // Marsaglia-Tsang for shape >= 1, boosted by U^(1/shape) below 1. Scale 1.
    double gamma(double shape);
    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::optional<double> cached_normal_;
};

}  // namespace sumdist

#endif  // SUMDIST_RANDOM_HPP
