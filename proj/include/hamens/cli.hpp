#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamens/scenario.hpp"
#include "hamens/table.hpp"

namespace hamens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitBadInput = 2;

/// Effective experiment parameters after merging the config file and flags.
/// Frequencies are in units of omega_0 = 1, times in units of 1/omega_0.
struct ExperimentConfig
{
    double omega_a = 0.0;
    double omega_b = 0.0;
    double alpha = 1.0;
    double xb = 1.0;
    double x = 0.5;
    double var_eps_a = 0.0;
    double var_eps_b = 0.0;
    double mean_eps_a = 0.0;
    double mean_eps_b = 0.0;
    double t_max = 5.0;
    std::size_t points = 400;
    std::size_t samples = 0; ///< 0: analytic only
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";

    nlohmann::json to_json() const;
    /// Set a numeric parameter by its flag name (e.g. "var-eps-b").
    void set(const std::string& flag, double value);

    SingleQubitScenario single() const;
    TwoQubitScenario two() const;
    TimeGrid grid() const;
};

/// One parameter evaluated at several values; output gains a leading
/// column named after the parameter.
struct Sweep
{
    std::string param;
    std::vector<double> values;

    /// "var-eps-b=0,0.5,2"
    static Sweep parse(const std::string& spec);
};

struct Range
{
    double lo;
    double hi;

    /// "0.6:3"
    static Range parse(const std::string& spec);
};

/// Averaged single-qubit relaxation: analytic rho_pp and Re rho_pm, plus
/// Monte Carlo columns with standard errors when samples > 0.
Table cmd_relax(const ExperimentConfig& cfg, const std::optional<Sweep>& sweep = std::nullopt);

/// Concurrence C(t), analytic and (when samples > 0) Monte Carlo.
Table cmd_concurrence(const ExperimentConfig& cfg,
                      const std::optional<Sweep>& sweep = std::nullopt);

/// Critical disentanglement time over an (alpha, var(eps_a)) grid with
/// omega_a = 0 and no transverse noise. Missing t_c is an empty cell.
Table cmd_tc_map(const ExperimentConfig& cfg, Range alpha, Range variance,
                 std::size_t alpha_points, std::size_t var_points);

/// Write the table in the configured format to cfg.out (stdout if empty).
void emit(const Table& table, const ExperimentConfig& cfg, std::ostream& stdout_stream);

/// Command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hamens::cli
