#include "sumdist/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sumdist/errors.hpp"
#include "sumdist/numerics.hpp"

namespace sumdist::specfun {
namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void require_finite(double x, const char* fn) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be finite");
    }
}

void require_positive_nu(double nu, const char* fn) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw DomainError(std::string(fn) + ": degrees of freedom must be positive");
    }
}

// erfc(t) for t >= 0, with t2 = t*t passed in so callers can form it without
// the rounding of a square root.
double erfc_nonneg(double t, double t2) {
    if (t < 2.0) {
        // erf(t) = 2/sqrt(pi) e^{-t^2} sum_n 2^n t^{2n+1} / (2n+1)!!, all terms positive.
        double term = t;
        double sum = t;
        for (int n = 1; n < 200; ++n) {
            term *= 2.0 * t2 / (2.0 * n + 1.0);
            sum += term;
            if (term < kEps * 0.25 * sum) break;
        }
        return 1.0 - 2.0 / kSqrtPi * std::exp(-t2) * sum;
    }
    // erfc(t) = e^{-t^2}/sqrt(pi) / (t + (1/2)/(t + 1/(t + (3/2)/(t + ...)))), modified Lentz.
    double f = t;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 5000; ++n) {
        const double a = 0.5 * n;
        d = t + a * d;
        if (std::abs(d) < kTiny) d = kTiny;
        d = 1.0 / d;
        c = t + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-t2) / (kSqrtPi * f);
}

double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NumericalError("reg_incomplete_beta: continued fraction did not converge");
}

// Lower-tail Student-t quantile for p < 0.5.
double student_t_lower_quantile(double p, double nu) {
    if (nu == 1.0) return -1.0 / std::tan(kPi * p);
    if (nu == 2.0) return (2.0 * p - 1.0) / std::sqrt(2.0 * p * (1.0 - p));

    const double log_p = std::log(p);
    auto log_cdf = [nu](double t) { return std::log(student_t_cdf(t, nu)); };

    // The normal quantile is less extreme than the t quantile, so it sits to
    // the right of the root; walk left geometrically to bracket.
    double hi = std::min(std_normal_inv_cdf(p), -1e-3);
    if (log_cdf(hi) < log_p) hi = 0.0;
    double lo = std::min(hi, -1.0);
    while (log_cdf(lo) > log_p) {
        hi = lo;
        lo *= 2.0;
        if (!std::isfinite(lo)) throw NumericalError("student_t_inv_cdf: cannot bracket");
    }

    // Newton on log T(t) - log p, safeguarded by the bracket.
    double t = lo;
    for (int iter = 0; iter < 300; ++iter) {
        const double cdf = student_t_cdf(t, nu);
        const double g = std::log(cdf) - log_p;
        if (g > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        const double slope = student_t_pdf(t, nu) / cdf;
        double next = t - g / slope;
        if (!(next > lo && next < hi)) {
            // geometric midpoint keeps the bisection scale-aware in heavy tails
            next = (hi < 0.0) ? -std::sqrt(lo * hi) : 0.5 * (lo + hi);
        }
        if (std::abs(next - t) <= 4.0 * kEps * std::abs(next) || hi - lo <= 4.0 * kEps * std::abs(lo)) {
            return next;
        }
        t = next;
    }
    return t;
}

}  // namespace

double std_normal_pdf(double x) {
    require_finite(x, "std_normal_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_log_pdf(double x) {
    require_finite(x, "std_normal_log_pdf");
    return -0.5 * x * x - kLogSqrt2Pi;
}

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    const double t = std::abs(x) / kSqrt2;
    const double tail = 0.5 * erfc_nonneg(t, 0.5 * x * x);
    return x < 0.0 ? tail : 1.0 - tail;
}

double std_normal_inv_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_inv_cdf: p must lie strictly inside (0, 1)");
    }
    if (p > 0.5) return -std_normal_inv_cdf(1.0 - p);  // 1 - p is exact for p >= 0.5

    // Acklam's rational approximation (relative error < 1.15e-9) ...
    static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                                -2.759285104469687e+02, 1.383577518672690e+02,
                                                -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                                -1.556989798598866e+02, 6.680131188771972e+01,
                                                -1.328068155288572e+01};
    static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                                -2.400758277161838e+00, -2.549732539343734e+00,
                                                4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    // ... refined by one Halley step on Phi.
    const double e = std_normal_cdf(x) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double ln_gamma(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("ln_gamma: argument must be positive");
    }
    if (a < 0.5) return ln_gamma(a + 1.0) - std::log(a);
    // Lanczos, g = 7, n = 9.
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = a - 1.0;
    double series = coef[0];
    for (std::size_t k = 1; k < coef.size(); ++k) series += coef[k] / (z + static_cast<double>(k));
    const double t = z + 7.5;
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

double reg_incomplete_beta(double x, double a, double b) {
    return reg_incomplete_beta(x, 1.0 - x, a, b);
}

double reg_incomplete_beta(double x, double y, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
        throw DomainError("reg_incomplete_beta: x must lie in [0, 1]");
    }
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("reg_incomplete_beta: shape parameters must be positive");
    }
    if (x == 0.0) return 0.0;
    if (y == 0.0) return 1.0;
    const double log_front =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) + b * std::log(y);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double student_t_log_pdf(double x, double nu) {
    require_finite(x, "student_t_pdf");
    require_positive_nu(nu, "student_t_pdf");
    return ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * std::log(nu * kPi) -
           0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

double student_t_pdf(double x, double nu) { return std::exp(student_t_log_pdf(x, nu)); }

double student_t_cdf(double x, double nu) {
    require_finite(x, "student_t_cdf");
    require_positive_nu(nu, "student_t_cdf");
    const double t2 = x * x;
    if (!std::isfinite(t2)) return x < 0.0 ? 0.0 : 1.0;
    const double denom = nu + t2;
    const double tail = 0.5 * reg_incomplete_beta(nu / denom, t2 / denom, 0.5 * nu, 0.5);
    return x < 0.0 ? tail : 1.0 - tail;
}

double student_t_inv_cdf(double p, double nu) {
    require_positive_nu(nu, "student_t_inv_cdf");
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("student_t_inv_cdf: p must lie strictly inside (0, 1)");
    }
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -student_t_lower_quantile(1.0 - p, nu);
    return student_t_lower_quantile(p, nu);
}

double bivariate_t_log_pdf(double x, double y, double rho, double nu) {
    require_finite(x, "bivariate_t_pdf");
    require_finite(y, "bivariate_t_pdf");
    require_positive_nu(nu, "bivariate_t_pdf");
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("bivariate_t_pdf: |rho| must be < 1");
    }
    const double one_minus_r2 = 1.0 - rho * rho;
    const double quad = (x * x + y * y) - 2.0 * rho * (x * y);  // symmetric in (x, y) bit for bit
    // Gamma((nu+2)/2) / (Gamma(nu/2) pi nu) = 1 / (2 pi)
    return -std::log(2.0 * kPi) - 0.5 * std::log(one_minus_r2) -
           0.5 * (nu + 2.0) * std::log1p(quad / (nu * one_minus_r2));
}

double bivariate_t_pdf(double x, double y, double rho, double nu) {
    return std::exp(bivariate_t_log_pdf(x, y, rho, nu));
}

double debye1(double theta) {
    require_finite(theta, "debye1");
    if (theta == 0.0) {
        throw DomainError("debye1: theta must be nonzero");
    }
    auto integrand = [](double t) { return std::abs(t) < 1e-8 ? 1.0 - 0.5 * t : t / std::expm1(t); };
    const double integral =
        numerics::integrate(integrand, 0.0, theta, 1e-15 * std::max(1.0, std::abs(theta)));
    return integral / theta;
}

}  // namespace sumdist::specfun
