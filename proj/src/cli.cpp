#include "hamens/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hamens/analytic.hpp"
#include "hamens/ensemble.hpp"
#include "hamens/entanglement.hpp"
#include "hamens/validation.hpp"

namespace hamens::cli {
namespace {

using Cell = Table::Cell;

const std::map<std::string, double ExperimentConfig::*>& numeric_fields()
{
    static const std::map<std::string, double ExperimentConfig::*> fields{
        {"omega-a", &ExperimentConfig::omega_a},
        {"omega-b", &ExperimentConfig::omega_b},
        {"alpha", &ExperimentConfig::alpha},
        {"xb", &ExperimentConfig::xb},
        {"x", &ExperimentConfig::x},
        {"var-eps-a", &ExperimentConfig::var_eps_a},
        {"var-eps-b", &ExperimentConfig::var_eps_b},
        {"mean-eps-a", &ExperimentConfig::mean_eps_a},
        {"mean-eps-b", &ExperimentConfig::mean_eps_b},
        {"t-max", &ExperimentConfig::t_max},
    };
    return fields;
}

std::string column_name(const std::string& flag)
{
    std::string out = flag;
    std::replace(out.begin(), out.end(), '-', '_');
    return out;
}

std::vector<double> sweep_values(const std::optional<Sweep>& sweep)
{
    return sweep ? sweep->values : std::vector<double>{NAN};
}

ExperimentConfig apply(const ExperimentConfig& cfg, const std::optional<Sweep>& sweep, double v)
{
    ExperimentConfig out = cfg;
    if (sweep)
        out.set(sweep->param, v);
    return out;
}

nlohmann::json base_meta(const char* command, const ExperimentConfig& cfg,
                         const std::optional<Sweep>& sweep)
{
    nlohmann::json meta;
    meta["command"] = command;
    meta["config"] = cfg.to_json();
    meta["sweep"] = sweep ? nlohmann::json{{"param", sweep->param}, {"values", sweep->values}}
                          : nlohmann::json(nullptr);
    meta["monte_carlo"] = cfg.samples > 0
                              ? nlohmann::json{{"samples", cfg.samples}, {"seed", cfg.seed}}
                              : nlohmann::json(nullptr);
    meta["warnings"] = nlohmann::json::array();
    return meta;
}

void validate_qubit_state(double pp, cplx pm)
{
    validate_density(DenseComplexMatrix(2, {pp, pm, std::conj(pm), 1.0 - pp}));
}

} // namespace

//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//

nlohmann::json ExperimentConfig::to_json() const
{
    nlohmann::json j;
    for (const auto& [flag, field] : numeric_fields())
        j[flag] = this->*field;
    j["points"] = points;
    j["samples"] = samples;
    j["seed"] = seed;
    return j;
}

void ExperimentConfig::set(const std::string& flag, double value)
{
    const auto it = numeric_fields().find(flag);
    if (it == numeric_fields().end())
        throw std::invalid_argument("unknown numeric parameter '" + flag + "'");
    this->*(it->second) = value;
}

SingleQubitScenario ExperimentConfig::single() const
{
    return SingleQubitScenario::with_real_amplitude(omega_a, alpha, xb,
                                                    GaussianSpec(mean_eps_a, var_eps_a));
}

TwoQubitScenario ExperimentConfig::two() const
{
    return TwoQubitScenario(omega_a, omega_b, CouplingLaw(alpha), x,
                            GaussianSpec(mean_eps_a, var_eps_a), GaussianSpec(mean_eps_b, var_eps_b));
}

TimeGrid ExperimentConfig::grid() const
{
    return TimeGrid::uniform(t_max, points);
}

Sweep Sweep::parse(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("sweep must look like name=v1,v2,...");
    Sweep s;
    s.param = spec.substr(0, eq);
    if (!numeric_fields().contains(s.param) || s.param == "t-max")
        throw std::invalid_argument("cannot sweep '" + s.param + "'");
    std::istringstream values(spec.substr(eq + 1));
    std::string item;
    while (std::getline(values, item, ','))
    {
        std::size_t used = 0;
        s.values.push_back(std::stod(item, &used));
        if (used != item.size())
            throw std::invalid_argument("bad sweep value '" + item + "'");
    }
    if (s.values.empty())
        throw std::invalid_argument("sweep has no values");
    return s;
}

Range Range::parse(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must look like lo:hi");
    Range r{std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1))};
    if (!(r.hi >= r.lo))
        throw std::invalid_argument("range upper bound is below its lower bound");
    return r;
}

//---------------------------------------------------------------------------//
// Commands
//---------------------------------------------------------------------------//

Table cmd_relax(const ExperimentConfig& cfg, const std::optional<Sweep>& sweep)
{
    Table table;
    table.meta = base_meta("relax", cfg, sweep);
    const bool mc = cfg.samples > 0;
    const bool analytic_ok = cfg.mean_eps_a == 0.0;
    if (!analytic_ok)
        table.meta["warnings"].push_back(
            "nonzero noise mean: analytic columns omitted (closed forms assume zero mean)");

    if (sweep)
        table.header.push_back(column_name(sweep->param));
    table.header.push_back("t");
    if (analytic_ok)
        table.header.insert(table.header.end(), {"rho_pp", "re_rho_pm"});
    if (mc)
        table.header.insert(table.header.end(),
                            {"rho_pp_mc", "rho_pp_mc_se", "re_rho_pm_mc", "re_rho_pm_mc_se"});

    for (double v : sweep_values(sweep))
    {
        const auto run_cfg = apply(cfg, sweep, v);
        const auto s = run_cfg.single();
        const auto grid = run_cfg.grid();
        std::optional<Trajectory> sampled;
        if (mc)
            sampled = sample_ensemble(s, SamplingOptions{cfg.samples, cfg.seed, 0}, grid);

        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            std::vector<Cell> row;
            if (sweep)
                row.push_back(v);
            row.push_back(grid[i]);
            if (analytic_ok)
            {
                const double pp = analytic::avg_population_single(grid[i], s);
                const cplx pm = analytic::avg_coherence_single(grid[i], s);
                validate_qubit_state(pp, pm);
                row.insert(row.end(), {pp, pm.real()});
            }
            if (sampled)
            {
                const double pp = sampled->column("rho_pp")[i];
                const cplx pm{sampled->column("re_rho_pm")[i], sampled->column("im_rho_pm")[i]};
                validate_qubit_state(pp, pm);
                row.insert(row.end(), {pp, sampled->column("rho_pp_se")[i], pm.real(),
                                       sampled->column("re_rho_pm_se")[i]});
            }
            table.append(std::move(row));
        }
    }
    return table;
}

Table cmd_concurrence(const ExperimentConfig& cfg, const std::optional<Sweep>& sweep)
{
    Table table;
    table.meta = base_meta("concurrence", cfg, sweep);
    const bool mc = cfg.samples > 0;
    const bool analytic_ok = cfg.mean_eps_a == 0.0 && cfg.mean_eps_b == 0.0;
    if (!analytic_ok)
        table.meta["warnings"].push_back(
            "nonzero noise mean: analytic column omitted (closed forms assume zero mean)");

    if (sweep)
        table.header.push_back(column_name(sweep->param));
    table.header.push_back("t");
    if (analytic_ok)
        table.header.push_back("C");
    if (mc)
        table.header.push_back("C_mc");

    for (double v : sweep_values(sweep))
    {
        const auto run_cfg = apply(cfg, sweep, v);
        const auto s = run_cfg.two();
        const auto grid = run_cfg.grid();
        std::optional<Trajectory> exact, sampled;
        if (analytic_ok)
            exact = entanglement::concurrence_trajectory(s, grid, entanglement::AnalyticSource{});
        if (mc)
            sampled = entanglement::concurrence_trajectory(
                s, grid, entanglement::MonteCarloSource{cfg.samples, cfg.seed, 0});
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            std::vector<Cell> row;
            if (sweep)
                row.push_back(v);
            row.push_back(grid[i]);
            if (exact)
                row.push_back(exact->column("C")[i]);
            if (sampled)
                row.push_back(sampled->column("C")[i]);
            table.append(std::move(row));
        }
    }
    return table;
}

Table cmd_tc_map(const ExperimentConfig& cfg, Range alpha, Range variance,
                 std::size_t alpha_points, std::size_t var_points)
{
    if (cfg.omega_a != 0.0 || cfg.var_eps_b != 0.0)
        throw std::invalid_argument("tc-map needs omega-a = 0 and var-eps-b = 0");
    if (cfg.mean_eps_a != 0.0 || cfg.mean_eps_b != 0.0)
        throw std::invalid_argument("tc-map needs zero-mean noise");
    if (alpha.lo < 0.5)
        throw std::invalid_argument("alpha range must not go below 1/2");
    if (variance.lo < 0.0)
        throw std::invalid_argument("variance range must be nonnegative");
    if (alpha_points == 0 || var_points == 0)
        throw std::invalid_argument("resolution must be positive");

    auto axis = [](Range r, std::size_t n, std::size_t i) {
        return n == 1 ? r.lo
                      : r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    Table table;
    table.meta = base_meta("tc-map", cfg, std::nullopt);
    table.meta["alpha_range"] = {alpha.lo, alpha.hi};
    table.meta["var_range"] = {variance.lo, variance.hi};
    table.meta["resolution"] = {alpha_points, var_points};
    table.header = {"alpha", "var_eps_a", "tc"};

    const std::size_t cells = alpha_points * var_points;
    std::vector<std::vector<Cell>> rows(cells);
    parallel_for(cells, 0, [&](std::size_t k) {
        const double a = axis(alpha, alpha_points, k / var_points);
        const double v = axis(variance, var_points, k % var_points);
        const TwoQubitScenario s(0.0, cfg.omega_b, CouplingLaw(a), cfg.x, GaussianSpec(0.0, v),
                                 GaussianSpec(0.0, 0.0));
        const auto tc = entanglement::find_tc_auto(s);
        rows[k] = {a, v, tc.t_c ? Cell{*tc.t_c} : Cell{}};
    });
    for (auto& r : rows)
        table.append(std::move(r));
    return table;
}

void emit(const Table& table, const ExperimentConfig& cfg, std::ostream& stdout_stream)
{
    std::ofstream file;
    std::ostream* os = &stdout_stream;
    if (!cfg.out.empty())
    {
        file.open(cfg.out, std::ios::binary);
        if (!file)
            throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
        os = &file;
    }
    if (cfg.format == "json")
        write_json(table, *os);
    else
        write_csv(table, *os);
}

//---------------------------------------------------------------------------//
// Entry point
//---------------------------------------------------------------------------//

namespace {

struct CommonOptions
{
    ExperimentConfig cfg;
    std::string config_file;
    std::string sweep;
    std::map<std::string, CLI::Option*> options;
};

void add_common(CLI::App& sub, CommonOptions& o)
{
    auto add = [&](const std::string& name, auto& target, const std::string& help) {
        o.options[name] = sub.add_option("--" + name, target, help);
    };
    add("omega-a", o.cfg.omega_a, "working-qubit frequency omega_A");
    add("omega-b", o.cfg.omega_b, "second working-qubit frequency omega_B");
    add("alpha", o.cfg.alpha, "coupling parameter alpha (>= 1/2)");
    add("xb", o.cfg.xb, "auxiliary amplitude x_B (real, y_B = sqrt(1 - x_B^2))");
    add("x", o.cfg.x, "auxiliary mixture weight x (y = 1 - x)");
    add("var-eps-a", o.cfg.var_eps_a, "variance of the auxiliary level spacing");
    add("var-eps-b", o.cfg.var_eps_b, "variance of the B1 level shift");
    add("mean-eps-a", o.cfg.mean_eps_a, "mean of the auxiliary level spacing");
    add("mean-eps-b", o.cfg.mean_eps_b, "mean of the B1 level shift");
    add("t-max", o.cfg.t_max, "end of the time grid");
    add("points", o.cfg.points, "number of grid points");
    add("samples", o.cfg.samples, "Monte Carlo realizations (0 = analytic only)");
    add("seed", o.cfg.seed, "master seed");
    add("out", o.cfg.out, "output file (default stdout)");
    o.options["format"] = sub.add_option("--format", o.cfg.format, "csv or json")
                              ->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--config", o.config_file, "JSON config file; flags override its values");
}

/// Fill every option the user did not pass on the command line from the
/// config file.
void merge_config_file(CommonOptions& o)
{
    if (o.config_file.empty())
        return;
    std::ifstream in(o.config_file);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + o.config_file + "'");
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [key, value] : doc.items())
    {
        const auto it = o.options.find(key);
        if (it == o.options.end())
            throw std::invalid_argument("unknown config key '" + key + "'");
        if (it->second->count() > 0)
            continue;
        if (key == "points")
            o.cfg.points = value.get<std::size_t>();
        else if (key == "samples")
            o.cfg.samples = value.get<std::size_t>();
        else if (key == "seed")
            o.cfg.seed = value.get<std::uint64_t>();
        else if (key == "out")
            o.cfg.out = value.get<std::string>();
        else if (key == "format")
            o.cfg.format = value.get<std::string>();
        else
            o.cfg.set(key, value.get<double>());
    }
    if (o.cfg.format != "csv" && o.cfg.format != "json")
        throw std::invalid_argument("format must be csv or json");
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& spec)
{
    const auto sep = spec.find('x');
    std::size_t used = 0;
    if (sep == std::string::npos)
    {
        const auto n = std::stoul(spec, &used);
        if (used != spec.size())
            throw std::invalid_argument("bad resolution '" + spec + "'");
        return {n, n};
    }
    return {std::stoul(spec.substr(0, sep)), std::stoul(spec.substr(sep + 1))};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hamiltonian-ensemble relaxation and entanglement simulator", "hamens"};
    app.require_subcommand(1);

    CommonOptions relax_opts, conc_opts, tc_opts;
    auto* relax = app.add_subcommand("relax", "single-qubit longitudinal relaxation");
    add_common(*relax, relax_opts);
    relax->add_option("--sweep", relax_opts.sweep, "sweep one parameter: name=v1,v2,...");

    auto* conc = app.add_subcommand("concurrence", "two-qubit concurrence dynamics");
    add_common(*conc, conc_opts);
    conc->add_option("--sweep", conc_opts.sweep, "sweep one parameter: name=v1,v2,...");

    auto* tc = app.add_subcommand("tc-map", "critical disentanglement time over (alpha, var)");
    add_common(*tc, tc_opts);
    std::string alpha_range = "0.6:3", var_range = "0.1:2", resolution = "30";
    tc->add_option("--alpha-range", alpha_range, "alpha range lo:hi")->capture_default_str();
    tc->add_option("--var-range", var_range, "var(eps_a) range lo:hi")->capture_default_str();
    tc->add_option("--resolution", resolution, "grid points per axis, N or NxM")
        ->capture_default_str();

    auto* val = app.add_subcommand("validate", "run the oracle cross-check suites");
    std::string level = "quick";
    val->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try
    {
        if (*val)
        {
            const auto report = validation::run(level == "full" ? validation::Level::full
                                                                : validation::Level::quick);
            validation::print(report, out);
            return report.passed() ? kExitOk : kExitValidationFailure;
        }

        CommonOptions& o = *relax ? relax_opts : *conc ? conc_opts : tc_opts;
        merge_config_file(o);
        std::optional<Sweep> sweep;
        if (!o.sweep.empty())
            sweep = Sweep::parse(o.sweep);

        Table table;
        if (*relax)
            table = cmd_relax(o.cfg, sweep);
        else if (*conc)
            table = cmd_concurrence(o.cfg, sweep);
        else
        {
            const auto [na, nv] = parse_resolution(resolution);
            table = cmd_tc_map(o.cfg, Range::parse(alpha_range), Range::parse(var_range), na, nv);
        }
        emit(table, o.cfg, out);
        return kExitOk;
    }
    catch (const DensityError& e)
    {
        err << "validation failure: " << e.what() << '\n';
        return kExitValidationFailure;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}

} // namespace hamens::cli
