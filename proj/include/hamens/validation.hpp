#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hamens/analytic.hpp"
#include "hamens/scenario.hpp"

// Oracle suites shared by `hamens validate`, the tests and the Python module.
// Each check compares two independent routes and records the measured
// deviation against a fixed threshold.

namespace hamens::validation {

enum class Level
{
    quick,
    full,
};

struct Check
{
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct Report
{
    std::vector<Check> checks;
    bool passed() const;
};

/// Formula implementations under test. Replacing one with a tampered
/// version must make the report fail.
struct Formulas
{
    std::function<double(double, const SingleQubitScenario&)> avg_population =
        analytic::avg_population_single;
    std::function<cplx(double, const SingleQubitScenario&)> avg_coherence =
        analytic::avg_coherence_single;
    std::function<AveragedXState(double, const TwoQubitScenario&)> avg_xstate =
        analytic::avg_xstate_two;
};

Report run(Level level, const Formulas& formulas = {});

void print(const Report& report, std::ostream& os);

/// Largest |MC - analytic| of rho_pp over the grid, one seed.
double max_population_deviation(const SingleQubitScenario& s, std::size_t samples,
                                std::uint64_t seed, const TimeGrid& grid,
                                const Formulas& formulas = {});

/// Least-squares slope of log(mean max deviation) against log(N). The
/// deviation at each N is averaged over `replicates` independent seeds.
double mc_scaling_exponent(const SingleQubitScenario& s, std::span<const std::size_t> sample_counts,
                           std::size_t replicates, std::uint64_t seed, const TimeGrid& grid,
                           const Formulas& formulas = {});

/// max_j |mc_j - ref_j| / (4 se_j + 1e-12) for matching columns; <= 1 means
/// every point lies within four standard errors.
double worst_standard_score(std::span<const double> mc, std::span<const double> se,
                            std::span<const double> reference);

} // namespace hamens::validation
