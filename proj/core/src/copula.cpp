#include "sumdist/copula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sumdist/errors.hpp"
#include "sumdist/numerics.hpp"
#include "sumdist/specfun.hpp"

namespace sumdist {
namespace {

constexpr double kIndependenceTolerance = 1e-9;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_correlation(double rho) {
    require_finite(rho, "rho");
    if (!(std::abs(rho) < 1.0)) throw DomainError("rho must satisfy -1 < rho < 1");
}

// log(e^a + e^b - 1) for a, b >= 0 without overflow or cancellation.
double log_sum_exp_minus_one(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::expm1(lo) * std::exp(-hi));
}

// log(s1^theta + s2^theta) from log s1, log s2.
double log_power_sum(double log_s1, double log_s2, double theta) {
    const double hi = std::max(log_s1, log_s2);
    const double lo = std::min(log_s1, log_s2);
    return theta * hi + std::log1p(std::exp(theta * (lo - hi)));
}

double log_of_u(UnitMargin m) { return m.u < 0.5 ? std::log(m.u) : std::log1p(-m.complement); }

double lower_tail_quantile(UnitMargin m, double (*inverse)(double)) {
    return m.u < 0.5 ? inverse(m.u) : -inverse(m.complement);
}

double student_quantile(UnitMargin m, double nu) {
    return m.u < 0.5 ? specfun::student_t_inv_cdf(m.u, nu) : -specfun::student_t_inv_cdf(m.complement, nu);
}

void require_unit_interval(double u, const char* what) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

void require_open_unit_interval(double u, const char* what) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError(std::string(what) + " must lie strictly inside (0, 1)");
}

double frank_tau_positive(double theta) {
    if (theta < 1e-3) return theta / 9.0 - theta * theta * theta / 900.0;
    return 1.0 - 4.0 / theta * (1.0 - specfun::debye1(theta));
}

// Gauss and t copula cdfs as one-dimensional integrals of the conditional
// distribution of the second coordinate over the first uniform coordinate.
double gauss_copula_cdf(double rho, double u1, double u2) {
    const double b = specfun::std_normal_inv_cdf(u2);
    const double scale = std::sqrt(1.0 - rho * rho);
    auto conditional = [&](double s) {
        const double q = specfun::std_normal_inv_cdf(s);
        return specfun::std_normal_cdf((b - rho * q) / scale);
    };
    return std::clamp(numerics::integrate(conditional, 0.0, u1, 1e-14), 0.0, std::min(u1, u2));
}

double student_copula_cdf(double rho, double nu, double u1, double u2) {
    const double b = specfun::student_t_inv_cdf(u2, nu);
    const double one_minus_r2 = 1.0 - rho * rho;
    auto conditional = [&](double s) {
        const double q = specfun::student_t_inv_cdf(s, nu);
        const double scale = std::sqrt((nu + q * q) * one_minus_r2 / (nu + 1.0));
        return specfun::student_t_cdf((b - rho * q) / scale, nu + 1.0);
    };
    return std::clamp(numerics::integrate(conditional, 0.0, u1, 1e-14), 0.0, std::min(u1, u2));
}

}  // namespace

std::string_view to_string(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::Gauss: return "gauss";
        case CopulaFamily::StudentT: return "t";
        case CopulaFamily::Clayton: return "clayton";
        case CopulaFamily::Gumbel: return "gumbel";
        case CopulaFamily::Frank: return "frank";
    }
    throw std::logic_error("unknown copula family");
}

CopulaFamily parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "gauss" || lower == "gaussian" || lower == "normal") return CopulaFamily::Gauss;
    if (lower == "t" || lower == "student" || lower == "student-t") return CopulaFamily::StudentT;
    if (lower == "clayton") return CopulaFamily::Clayton;
    if (lower == "gumbel") return CopulaFamily::Gumbel;
    if (lower == "frank") return CopulaFamily::Frank;
    throw ValidationError("unknown copula family '" + std::string(name) + "'");
}

bool is_archimedean(CopulaFamily family) {
    return family == CopulaFamily::Clayton || family == CopulaFamily::Gumbel ||
           family == CopulaFamily::Frank;
}

CopulaSpec CopulaSpec::gauss(double rho) {
    require_correlation(rho);
    return CopulaSpec(CopulaFamily::Gauss, rho, 0.0, 0.0);
}

CopulaSpec CopulaSpec::student_t(double rho, double nu) {
    require_correlation(rho);
    require_finite(nu, "nu");
    if (!(nu > 0.0)) throw DomainError("t copula requires nu > 0");
    return CopulaSpec(CopulaFamily::StudentT, rho, nu, 0.0);
}

CopulaSpec CopulaSpec::clayton(double theta) {
    require_finite(theta, "theta");
    if (!(theta > 0.0)) throw DomainError("Clayton copula requires theta > 0");
    return CopulaSpec(CopulaFamily::Clayton, 0.0, 0.0, theta);
}

CopulaSpec CopulaSpec::gumbel(double theta) {
    require_finite(theta, "theta");
    if (!(theta >= 1.0)) throw DomainError("Gumbel copula requires theta >= 1");
    return CopulaSpec(CopulaFamily::Gumbel, 0.0, 0.0, theta);
}

CopulaSpec CopulaSpec::frank(double theta) {
    require_finite(theta, "theta");
    if (theta == 0.0) throw DomainError("Frank copula requires theta != 0");
    return CopulaSpec(CopulaFamily::Frank, 0.0, 0.0, theta);
}

CopulaSpec CopulaSpec::from_pearson_rho(CopulaFamily family, double rho, double nu) {
    CopulaSpec spec = [&] {
        switch (family) {
            case CopulaFamily::Gauss: return gauss(rho);
            case CopulaFamily::StudentT: return student_t(rho, nu);
            case CopulaFamily::Clayton: return clayton(theta_from_tau(family, tau_from_pearson_rho(rho)));
            case CopulaFamily::Gumbel: return gumbel(theta_from_tau(family, tau_from_pearson_rho(rho)));
            case CopulaFamily::Frank: return frank(theta_from_tau(family, tau_from_pearson_rho(rho)));
        }
        throw std::logic_error("unknown copula family");
    }();
    spec.pearson_rho_ = rho;
    return spec;
}

double CopulaSpec::rho() const {
    if (family_ != CopulaFamily::Gauss && family_ != CopulaFamily::StudentT) {
        throw std::logic_error("rho is only a parameter of the Gauss and t copulas");
    }
    return rho_;
}

double CopulaSpec::nu() const {
    if (family_ != CopulaFamily::StudentT) throw std::logic_error("nu is only a parameter of the t copula");
    return nu_;
}

double CopulaSpec::theta() const {
    if (!is_archimedean(family_)) throw std::logic_error("theta is only a parameter of Archimedean copulas");
    return theta_;
}

bool CopulaSpec::is_independence() const {
    switch (family_) {
        case CopulaFamily::Gauss: return std::abs(rho_) < kIndependenceTolerance;
        case CopulaFamily::Gumbel: return std::abs(theta_ - 1.0) < kIndependenceTolerance;
        case CopulaFamily::Frank: return std::abs(theta_) < kIndependenceTolerance;
        default: return false;
    }
}

std::string CopulaSpec::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << to_string(family_) << '(';
    switch (family_) {
        case CopulaFamily::Gauss: out << "rho=" << rho_; break;
        case CopulaFamily::StudentT: out << "rho=" << rho_ << ", nu=" << nu_; break;
        default: out << "theta=" << theta_; break;
    }
    out << ')';
    return out.str();
}

UnitMargin UnitMargin::from_u(double u) { return {u, 1.0 - u}; }

MarginTerms prepare_margin(const CopulaSpec& spec, UnitMargin m) {
    MarginTerms terms;
    terms.u = m.u;
    terms.log_u = log_of_u(m);
    switch (spec.family()) {
        case CopulaFamily::Gauss:
            terms.score = lower_tail_quantile(m, &specfun::std_normal_inv_cdf);
            break;
        case CopulaFamily::StudentT:
            terms.score = student_quantile(m, spec.nu());
            terms.log_score_density = specfun::student_t_log_pdf(terms.score, spec.nu());
            break;
        case CopulaFamily::Clayton:
            terms.score = -spec.theta() * terms.log_u;
            break;
        case CopulaFamily::Gumbel:
            terms.score = std::log(-terms.log_u);
            break;
        case CopulaFamily::Frank:
            terms.score = -std::expm1(-spec.theta() * m.u);
            break;
    }
    return terms;
}

MarginTerms prepare_normal_margin(const CopulaSpec& spec, double x, UnitMargin m) {
    if (spec.family() == CopulaFamily::Gauss) {
        MarginTerms terms;
        terms.u = m.u;
        terms.log_u = log_of_u(m);
        terms.score = x;
        return terms;
    }
    return prepare_margin(spec, m);
}

namespace {

double log_density_ordered(const CopulaSpec& spec, const MarginTerms& a, const MarginTerms& b) {
    switch (spec.family()) {
        case CopulaFamily::Gauss: {
            const double r = spec.rho();
            const double r2 = r * r;
            return -(r2 * (a.score * a.score + b.score * b.score) - 2.0 * r * (a.score * b.score)) /
                       (2.0 * (1.0 - r2)) -
                   0.5 * std::log1p(-r2);
        }
        case CopulaFamily::StudentT:
            return specfun::bivariate_t_log_pdf(a.score, b.score, spec.rho(), spec.nu()) -
                   (a.log_score_density + b.log_score_density);
        case CopulaFamily::Clayton: {
            const double theta = spec.theta();
            const double log_a = log_sum_exp_minus_one(a.score, b.score);
            return std::log1p(theta) - (1.0 + 2.0 * theta) / theta * log_a -
                   (theta + 1.0) * (a.log_u + b.log_u);
        }
        case CopulaFamily::Gumbel: {
            const double theta = spec.theta();
            const double log_a = log_power_sum(a.score, b.score, theta);
            const double sigma = std::exp(log_a / theta);
            return -sigma + (theta - 1.0) * (a.score + b.score) + (1.0 / theta - 2.0) * log_a +
                   std::log(theta + sigma - 1.0) - a.log_u - b.log_u;
        }
        case CopulaFamily::Frank: {
            const double theta = spec.theta();
            const double g = -std::expm1(-theta);
            const double denom = g - a.score * b.score;
            return std::log(theta * g) - theta * (a.u + b.u) - 2.0 * std::log(std::abs(denom));
        }
    }
    throw std::logic_error("unknown copula family");
}

bool margin_before(const MarginTerms& a, const MarginTerms& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.score != b.score) return a.score < b.score;
    return a.log_u < b.log_u;
}

}  // namespace

// The closed forms are symmetric, but floating point is not: evaluating in a
// fixed argument order makes c(u1, u2) and c(u2, u1) bit-identical.
double copula_log_density(const CopulaSpec& spec, const MarginTerms& a, const MarginTerms& b) {
    if (spec.is_independence()) return 0.0;
    return margin_before(b, a) ? log_density_ordered(spec, b, a) : log_density_ordered(spec, a, b);
}

double copula_density(const CopulaSpec& spec, double u1, double u2) {
    require_open_unit_interval(u1, "u1");
    require_open_unit_interval(u2, "u2");
    return std::exp(copula_log_density(spec, prepare_margin(spec, UnitMargin::from_u(u1)),
                                       prepare_margin(spec, UnitMargin::from_u(u2))));
}

double copula_cdf(const CopulaSpec& spec, double u1, double u2) {
    require_unit_interval(u1, "u1");
    require_unit_interval(u2, "u2");
    if (u1 == 0.0 || u2 == 0.0) return 0.0;
    if (u1 == 1.0) return u2;
    if (u2 == 1.0) return u1;
    if (spec.is_independence()) return u1 * u2;
    switch (spec.family()) {
        case CopulaFamily::Gauss: return gauss_copula_cdf(spec.rho(), u1, u2);
        case CopulaFamily::StudentT: return student_copula_cdf(spec.rho(), spec.nu(), u1, u2);
        case CopulaFamily::Clayton: {
            const double theta = spec.theta();
            const double log_a = log_sum_exp_minus_one(-theta * std::log(u1), -theta * std::log(u2));
            return std::exp(-log_a / theta);
        }
        case CopulaFamily::Gumbel: {
            const double theta = spec.theta();
            const double log_a = log_power_sum(std::log(-std::log(u1)), std::log(-std::log(u2)), theta);
            return std::exp(-std::exp(log_a / theta));
        }
        case CopulaFamily::Frank: {
            const double theta = spec.theta();
            return -std::log1p(std::expm1(-theta * u1) * std::expm1(-theta * u2) / std::expm1(-theta)) /
                   theta;
        }
    }
    throw std::logic_error("unknown copula family");
}

double frank_conditional_cdf(double theta, double u1, double u2) {
    require_finite(theta, "theta");
    if (theta == 0.0) return u2;
    const double e2 = std::expm1(-theta * u2);
    return std::exp(-theta * u1) * e2 / (std::expm1(-theta) + std::expm1(-theta * u1) * e2);
}

double tau_from_pearson_rho(double rho) {
    require_correlation(rho);
    return 2.0 / specfun::kPi * std::asin(rho);
}

double tau_from_theta(CopulaFamily family, double theta) {
    switch (family) {
        case CopulaFamily::Clayton: return CopulaSpec::clayton(theta).theta() / (theta + 2.0);
        case CopulaFamily::Gumbel: return 1.0 - 1.0 / CopulaSpec::gumbel(theta).theta();
        case CopulaFamily::Frank: {
            CopulaSpec::frank(theta);
            const double tau = frank_tau_positive(std::abs(theta));
            return theta < 0.0 ? -tau : tau;
        }
        default: throw DomainError("tau_from_theta: only Archimedean families have a theta");
    }
}

double theta_from_tau(CopulaFamily family, double tau) {
    require_finite(tau, "tau");
    switch (family) {
        case CopulaFamily::Clayton:
            if (!(tau > 0.0 && tau < 1.0)) throw DomainError("Clayton requires 0 < tau < 1");
            return 2.0 * tau / (1.0 - tau);
        case CopulaFamily::Gumbel:
            if (!(tau >= 0.0 && tau < 1.0)) throw DomainError("Gumbel requires 0 <= tau < 1");
            return 1.0 / (1.0 - tau);
        case CopulaFamily::Frank: {
            if (!(std::abs(tau) < 1.0) || tau == 0.0) {
                throw DomainError("Frank requires -1 < tau < 1 and tau != 0");
            }
            const double target = std::abs(tau);
            auto residual = [target](double theta) { return frank_tau_positive(theta) - target; };
            double lo = std::min(1e-6, 4.5 * target);
            double hi = 50.0;
            while (residual(hi) < 0.0) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e12) throw NumericalError("theta_from_tau: tau too close to 1 for Frank");
            }
            const double theta = numerics::brent_root(residual, lo, hi, 1e-15 * hi);
            return tau < 0.0 ? -theta : theta;
        }
        default: throw DomainError("theta_from_tau: only Archimedean families have a theta");
    }
}

DependenceSummary summarize_dependence(double rho) {
    DependenceSummary summary{};
    summary.pearson_rho = rho;
    summary.kendall_tau = tau_from_pearson_rho(rho);
    if (summary.kendall_tau > 0.0) {
        summary.theta_clayton = theta_from_tau(CopulaFamily::Clayton, summary.kendall_tau);
    }
    if (summary.kendall_tau >= 0.0) {
        summary.theta_gumbel = theta_from_tau(CopulaFamily::Gumbel, summary.kendall_tau);
    }
    summary.theta_frank = theta_from_tau(CopulaFamily::Frank, summary.kendall_tau);
    return summary;
}

}  // namespace sumdist
