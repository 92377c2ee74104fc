#include "sumdist/random.hpp"

#include <cmath>

#include "sumdist/errors.hpp"
#include "sumdist/specfun.hpp"

namespace sumdist {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double RandomSource::uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomSource::normal() {
    if (cached_normal_) {
        const double z = *cached_normal_;
        cached_normal_.reset();
        return z;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * specfun::kPi * uniform();
    cached_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

double RandomSource::exponential() { return -std::log(uniform()); }

double RandomSource::gamma(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) throw DomainError("gamma shape must be positive and finite");
    if (shape < 1.0) {
        // G(a) = G(a + 1) * U^(1/a), in log form so tiny shapes do not underflow early.
        const double boosted = gamma(shape + 1.0);
        return boosted * std::exp(std::log(uniform()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace sumdist
