#ifndef SUMDIST_COPULA_HPP
#define SUMDIST_COPULA_HPP

#include <optional>
#include <string>
#include <string_view>

namespace sumdist {

enum class CopulaFamily { Gauss, StudentT, Clayton, Gumbel, Frank };

inline constexpr double kDefaultStudentNu = 4.0;

[[nodiscard]] std::string_view to_string(CopulaFamily family);
// Accepts "gauss", "t", "clayton", "gumbel", "frank" (case-insensitive).
[[nodiscard]] CopulaFamily parse_family(std::string_view name);
[[nodiscard]] bool is_archimedean(CopulaFamily family);

// Validated bivariate copula. Construct through the named factories; the
// parameter domain of each family is checked there and nowhere else.
class CopulaSpec {
   public:
    static CopulaSpec gauss(double rho);
    static CopulaSpec student_t(double rho, double nu = kDefaultStudentNu);
    static CopulaSpec clayton(double theta);
    static CopulaSpec gumbel(double theta);
    static CopulaSpec frank(double theta);

    // rho -> Kendall tau (Gauss relation) -> theta for Archimedean families;
    // rho is used directly for Gauss and t.
    static CopulaSpec from_pearson_rho(CopulaFamily family, double rho,
                                       double nu = kDefaultStudentNu);

    [[nodiscard]] CopulaFamily family() const { return family_; }
    [[nodiscard]] double rho() const;    // Gauss, t
    [[nodiscard]] double nu() const;     // t
    [[nodiscard]] double theta() const;  // Archimedean
    // Linear correlation the parameters were derived from, if any.
    [[nodiscard]] std::optional<double> pearson_rho() const { return pearson_rho_; }

    // Parameters within 1e-9 of the independence value (Gumbel theta = 1,
    // Frank theta = 0, Gauss rho = 0).
    [[nodiscard]] bool is_independence() const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const CopulaSpec&, const CopulaSpec&) = default;

   private:
    CopulaSpec(CopulaFamily family, double rho, double nu, double theta)
        : family_(family), rho_(rho), nu_(nu), theta_(theta) {}

    CopulaFamily family_;
    double rho_;
    double nu_;
    double theta_;
    std::optional<double> pearson_rho_;
};

// A uniform coordinate together with its complement 1 - u. Carrying both
// keeps tail values exact when u comes from Phi(x) with large |x|.
struct UnitMargin {
    double u;
    double complement;

    static UnitMargin from_u(double u);
};

// Per-coordinate quantities a copula density needs. Computing them once per
// lattice axis makes density grids O(n) in the expensive transforms.
struct MarginTerms {
    double u = 0.5;
    double log_u = 0.0;
    double score = 0.0;             // family transform (quantile, -log u, ...)
    double log_score_density = 0.0; // t: log t_nu(score); otherwise 0
};

[[nodiscard]] MarginTerms prepare_margin(const CopulaSpec& spec, UnitMargin m);
// Same terms for a standard normal coordinate x with m = (Phi(x), Phi(-x)).
// The Gauss copula uses x itself instead of a Phi^{-1}(Phi(x)) round trip.
[[nodiscard]] MarginTerms prepare_normal_margin(const CopulaSpec& spec, double x, UnitMargin m);
[[nodiscard]] double copula_log_density(const CopulaSpec& spec, const MarginTerms& a,
                                        const MarginTerms& b);

[[nodiscard]] double copula_cdf(const CopulaSpec& spec, double u1, double u2);
[[nodiscard]] double copula_density(const CopulaSpec& spec, double u1, double u2);

// dC/du1 of the Frank copula, the conditional cdf of U2 given U1 = u1.
[[nodiscard]] double frank_conditional_cdf(double theta, double u1, double u2);

[[nodiscard]] double tau_from_pearson_rho(double rho);
[[nodiscard]] double theta_from_tau(CopulaFamily family, double tau);
[[nodiscard]] double tau_from_theta(CopulaFamily family, double theta);

struct DependenceSummary {
    double pearson_rho;
    double kendall_tau;
    std::optional<double> theta_clayton;  // defined for tau > 0
    std::optional<double> theta_gumbel;   // defined for tau >= 0
    double theta_frank;                   // any tau != 0
};

// The rho -> tau -> theta pipeline for all three Archimedean families.
// Requires rho != 0 (Frank has no finite theta at tau = 0).
[[nodiscard]] DependenceSummary summarize_dependence(double rho);

}  // namespace sumdist

#endif  // SUMDIST_COPULA_HPP
