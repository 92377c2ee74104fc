#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sumdist/errors.hpp"
#include "sumdist/joint_density.hpp"
#include "sumdist/random.hpp"
#include "sumdist/sampler.hpp"

#ifndef SUMDIST_VERSION
#define SUMDIST_VERSION "unknown"
#endif

namespace sumdist::cli {
namespace {

struct CommandInfo {
    Command command;
    const char* name;
    const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::Dist, "dist", "Tabulate F(z) = P(X + Y <= z)"},
    {Command::Quantile, "quantile", "Quantiles of X + Y"},
    {Command::Density, "density", "Joint density f(x, y) on the integration lattice"},
    {Command::Sample, "sample", "Draw (x, y) pairs with standard normal margins"},
    {Command::Sweep, "sweep", "Quantiles for several families and correlations"},
    {Command::ReproduceTable2, "reproduce-table2", "Published quantile table: 9 correlations x 5 families"},
};

bool uses_model(Command c) {
    return c == Command::Dist || c == Command::Quantile || c == Command::Density || c == Command::Sample;
}
bool uses_mode(Command c) { return c != Command::Density && c != Command::Sample; }
bool uses_z_range(Command c) { return uses_mode(c); }
bool uses_lattice(Command c) { return c != Command::Sample; }
bool uses_levels(Command c) { return c == Command::Quantile || c == Command::Sweep; }

// Shortest round-trip form, for the human-readable summary and column names.
std::string short_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

bool is_integral(double ratio) { return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, std::abs(ratio)); }

void validate_grid(const GridSpec& g, Command command) {
    if (uses_lattice(command)) {
        if (!(g.half_width > 0.0) || !std::isfinite(g.half_width)) throw ValidationError("--half-width: must be positive");
        if (!(g.step > 0.0) || !std::isfinite(g.step)) throw ValidationError("--step: must be positive");
        if (!is_integral(2.0 * g.half_width / g.step)) throw ValidationError("--step: must divide 2 * half-width");
    }
    if (uses_z_range(command)) {
        if (!std::isfinite(g.z_min)) throw ValidationError("--z-min: must be finite");
        if (!std::isfinite(g.z_max) || !(g.z_max > g.z_min)) throw ValidationError("--z-max: must exceed --z-min");
        if (!(g.z_step > 0.0) || !std::isfinite(g.z_step)) throw ValidationError("--z-step: must be positive");
        if (!is_integral((g.z_max - g.z_min) / g.z_step)) throw ValidationError("--z-step: must divide z-max - z-min");
    }
}

std::string level_column(double level) {
    std::string digits = short_double(std::round(level * 1e10) / 1e8);
    return "q" + digits;
}

nlohmann::json grid_meta(const GridSpec& g, Command command) {
    nlohmann::json meta = nlohmann::json::object();
    if (uses_lattice(command)) {
        meta["half_width"] = g.half_width;
        meta["step"] = g.step;
    }
    if (uses_z_range(command)) {
        meta["z_min"] = g.z_min;
        meta["z_max"] = g.z_max;
        meta["z_step"] = g.z_step;
    }
    return meta;
}

nlohmann::json spec_meta(const CopulaSpec& spec) {
    nlohmann::json meta = nlohmann::json::object();
    meta["family"] = std::string(to_string(spec.family()));
    if (is_archimedean(spec.family())) {
        meta["theta"] = spec.theta();
        if (spec.pearson_rho()) meta["rho"] = *spec.pearson_rho();
        meta["kendall_tau"] = tau_from_theta(spec.family(), spec.theta());
    } else {
        meta["rho"] = spec.rho();
        if (spec.family() == CopulaFamily::StudentT) meta["nu"] = spec.nu();
        meta["kendall_tau"] = tau_from_pearson_rho(spec.rho());
    }
    return meta;
}

std::string spec_summary(const CopulaSpec& spec) {
    std::string s = "family=" + std::string(to_string(spec.family()));
    if (is_archimedean(spec.family())) {
        if (spec.pearson_rho()) s += " rho=" + short_double(*spec.pearson_rho());
        s += " theta=" + short_double(spec.theta());
    } else {
        s += " rho=" + short_double(spec.rho());
        if (spec.family() == CopulaFamily::StudentT) s += " nu=" + short_double(spec.nu());
    }
    return s;
}

Table sweep_table(const RunConfig& config, const std::vector<FamilyTemplate>& families,
                  const std::vector<double>& rhos, const std::vector<double>& levels) {
    for (double rho : rhos) {
        if (!(std::abs(rho) < 1.0)) throw ValidationError("--rhos: every correlation must lie in (-1, 1)");
    }
    const std::vector<QuantileReport> reports = quantile_sweep(families, rhos, levels, config.mode, config.grid);
    Table table;
    table.columns = {"rho", "family"};
    for (double q : levels) table.columns.push_back(level_column(q));
    for (const QuantileReport& report : reports) {
        for (const QuantileRow& row : report.rows) {
            std::vector<Cell> cells{report.rho, std::string(to_string(row.spec.family()))};
            for (double v : row.values) cells.emplace_back(v);
            table.rows.push_back(std::move(cells));
        }
    }
    table.meta["rhos"] = rhos;
    nlohmann::json family_names = nlohmann::json::array();
    for (const FamilyTemplate& f : families) family_names.push_back(std::string(to_string(f.family)));
    table.meta["families"] = family_names;
    table.meta["nu"] = config.nu;
    table.meta["levels"] = levels;
    return table;
}

std::vector<FamilyTemplate> sweep_families(const RunConfig& config) {
    if (config.families.empty()) return all_families(config.nu);
    std::vector<FamilyTemplate> out;
    for (const std::string& name : config.families) {
        try {
            out.push_back({parse_family(name), config.nu});
        } catch (const ValidationError& e) {
            throw ValidationError(std::string("--families: ") + e.what());
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Command command) {
    for (const CommandInfo& info : kCommands) {
        if (info.command == command) return info.name;
    }
    return "unknown";
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    RunConfig config;
    double rho = 0.0;
    double theta = 0.0;
    std::string mode = "paper-exact";
    std::string format = "csv";
    std::vector<double> levels;
    long long n = static_cast<long long>(config.n);

    CLI::App app{"Distribution of X + Y for standard normal margins coupled by a copula", "sumdist"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SUMDIST_VERSION);

    std::vector<std::pair<Command, CLI::App*>> subcommands;
    for (const CommandInfo& info : kCommands) {
        CLI::App* sub = app.add_subcommand(info.name, info.help);
        const Command c = info.command;
        if (uses_model(c)) {
            sub->add_option("--copula", config.copula, "gauss, t, clayton, gumbel or frank")->capture_default_str();
            sub->add_option("--rho", rho, "Linear correlation; Archimedean theta follows via Kendall tau");
            sub->add_option("--theta", theta, "Archimedean parameter (excludes --rho)");
        }
        if (uses_model(c) || c == Command::Sweep || c == Command::ReproduceTable2) {
            sub->add_option("--nu", config.nu, "Degrees of freedom of the t copula")->capture_default_str();
        }
        if (uses_mode(c)) sub->add_option("--mode", mode, "paper-exact or refined")->capture_default_str();
        if (uses_lattice(c)) {
            sub->add_option("--half-width", config.grid.half_width, "Integration square [-h, h]^2")->capture_default_str();
            sub->add_option("--step", config.grid.step, "Lattice spacing")->capture_default_str();
        }
        if (uses_z_range(c)) {
            sub->add_option("--z-min", config.grid.z_min)->capture_default_str();
            sub->add_option("--z-max", config.grid.z_max)->capture_default_str();
            sub->add_option("--z-step", config.grid.z_step)->capture_default_str();
        }
        if (uses_levels(c)) sub->add_option("--q", levels, "Probability levels (default 0.95 0.99)");
        if (c == Command::Sweep) {
            sub->add_option("--rhos", config.rhos, "Correlations (default 0.9 down to 0.1)");
            sub->add_option("--families", config.families, "Families (default all five)");
        }
        if (c == Command::Sample) {
            sub->add_option("--seed", config.seed)->capture_default_str();
            sub->add_option("--n", n, "Number of pairs")->capture_default_str();
        }
        sub->add_option("--format", format, "csv or json")->capture_default_str();
        sub->add_option("--output", config.output, "Output file (default: standard output)");
        subcommands.emplace_back(c, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream ignored;
            app.exit(e, out, ignored);
            return std::nullopt;
        }
        throw ValidationError(e.what());
    }

    CLI::App* chosen = nullptr;
    for (const auto& [command, sub] : subcommands) {
        if (sub->parsed()) {
            config.command = command;
            chosen = sub;
        }
    }
    if (uses_model(config.command)) {
        if (chosen->count("--rho") > 0) config.rho = rho;
        if (chosen->count("--theta") > 0) config.theta = theta;
    }
    if (!levels.empty()) config.levels = levels;
    if (config.command == Command::ReproduceTable2) config.levels = {0.95, 0.99};

    try {
        config.mode = parse_mode(mode);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("--mode: ") + e.what());
    }
    config.format = parse_format(format);
    if (n <= 0) throw ValidationError("--n: must be a positive integer");
    config.n = static_cast<std::size_t>(n);
    if (!(config.nu > 0.0) || !std::isfinite(config.nu)) throw ValidationError("--nu: must be positive");
    for (double q : config.levels) {
        if (!(q > 0.0 && q < 1.0)) throw ValidationError("--q: levels must lie strictly between 0 and 1");
    }
    validate_grid(config.grid, config.command);
    return config;
}

CopulaSpec resolve_spec(const RunConfig& config) {
    CopulaFamily family;
    try {
        family = parse_family(config.copula);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("--copula: ") + e.what());
    }
    const std::string name(to_string(family));
    if (!is_archimedean(family)) {
        if (config.theta) throw ValidationError("--theta: not a parameter of the " + name + " copula, use --rho");
        if (!config.rho) throw ValidationError("--rho: required for the " + name + " copula");
        if (!(std::abs(*config.rho) < 1.0)) throw ValidationError("--rho: must lie strictly between -1 and 1");
        if (!(config.nu > 0.0)) throw ValidationError("--nu: must be positive");
        return CopulaSpec::from_pearson_rho(family, *config.rho, config.nu);
    }
    if (config.rho && config.theta) {
        throw ValidationError("--rho, --theta: give exactly one parameter for the " + name + " copula");
    }
    if (!config.rho && !config.theta) {
        throw ValidationError("--rho, --theta: one of them is required for the " + name + " copula");
    }
    if (config.theta) {
        try {
            switch (family) {
                case CopulaFamily::Clayton: return CopulaSpec::clayton(*config.theta);
                case CopulaFamily::Gumbel: return CopulaSpec::gumbel(*config.theta);
                default: return CopulaSpec::frank(*config.theta);
            }
        } catch (const DomainError& e) {
            throw ValidationError(std::string("--theta: ") + e.what());
        }
    }
    if (!(std::abs(*config.rho) < 1.0)) throw ValidationError("--rho: must lie strictly between -1 and 1");
    try {
        return CopulaSpec::from_pearson_rho(family, *config.rho, config.nu);
    } catch (const DomainError& e) {
        throw ValidationError(std::string("--rho: ") + e.what());
    }
}

Table build_table(const RunConfig& config) {
    Table table;
    switch (config.command) {
        case Command::Dist:
        case Command::Quantile: {
            const CopulaSpec spec = resolve_spec(config);
            const DistributionTable dist = compute_cdf(spec, config.grid, config.mode);
            if (config.command == Command::Dist) {
                table.columns = {"z", "F"};
                for (std::size_t k = 0; k < dist.z_values.size(); ++k) {
                    table.rows.push_back({dist.z_values[k], dist.F_values[k]});
                }
            } else {
                table.columns = {"q", "z"};
                for (double q : config.levels) table.rows.push_back({q, quantile(dist, q)});
                table.meta["levels"] = config.levels;
            }
            table.meta["copula"] = spec_meta(spec);
            break;
        }
        case Command::Density: {
            const CopulaSpec spec = resolve_spec(config);
            const DensityGrid grid = joint_pdf_grid(JointDensityModel(spec), config.grid);
            table.columns = {"x", "y", "f"};
            table.rows.reserve(grid.values.size());
            for (std::size_t i = 0; i < grid.rows(); ++i) {
                for (std::size_t j = 0; j < grid.cols(); ++j) {
                    table.rows.push_back({grid.x_axis[i], grid.y_axis[j], grid.at(i, j)});
                }
            }
            table.meta["copula"] = spec_meta(spec);
            break;
        }
        case Command::Sample: {
            const CopulaSpec spec = resolve_spec(config);
            const SampleSet samples = sample_sum(spec, config.n, RandomSource(config.seed));
            table.columns = {"x", "y"};
            table.rows.reserve(samples.pairs.size());
            for (const SamplePoint& p : samples.pairs) table.rows.push_back({p.x, p.y});
            table.meta["copula"] = spec_meta(spec);
            table.meta["n"] = config.n;
            break;
        }
        case Command::Sweep: {
            const std::vector<double> rhos = config.rhos.empty() ? published_rhos() : config.rhos;
            table = sweep_table(config, sweep_families(config), rhos, config.levels);
            break;
        }
        case Command::ReproduceTable2:
            table = sweep_table(config, all_families(config.nu), published_rhos(), {0.95, 0.99});
            break;
    }
    table.meta["tool"] = "sumdist";
    table.meta["version"] = SUMDIST_VERSION;
    table.meta["command"] = std::string(to_string(config.command));
    table.meta["seed"] = config.seed;
    if (uses_mode(config.command)) table.meta["mode"] = std::string(to_string(config.mode));
    table.meta["grid"] = grid_meta(config.grid, config.command);
    return table;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Table table = build_table(config);
    const std::string bytes = serialize(table, config.format);

    std::string summary = std::string(to_string(config.command)) + " ";
    if (uses_model(config.command)) {
        summary += spec_summary(resolve_spec(config));
    } else {
        summary += "families=" + std::to_string(table.meta["families"].size()) + " nu=" + short_double(config.nu);
    }
    if (uses_mode(config.command)) summary += " mode=" + std::string(to_string(config.mode));
    if (config.command == Command::Sample) summary += " seed=" + std::to_string(config.seed);
    summary += " rows=" + std::to_string(table.rows.size());
    summary += " format=" + std::string(to_string(config.format));
    summary += " checksum=fnv1a64:" + hex64(fnv1a64(bytes));

    if (config.output.empty() || config.output == "-") {
        out << bytes;
        out.flush();
        err << summary << " output=stdout\n";
    } else {
        write_file_atomic(config.output, bytes);
        out << summary << " output=" << config.output << "\n";
    }
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const std::optional<RunConfig> config = parse_command_line(argc, argv, out);
        if (!config) return 0;
        return run(*config, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sumdist::cli
