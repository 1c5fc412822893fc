#include "hamens/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hamens/ensemble.hpp"
#include "hamens/entanglement.hpp"
#include "hamens/realization.hpp"
#include "hamens/rng.hpp"

namespace hamens::validation {
namespace {

constexpr std::uint64_t kCheckSeed = 0x5eed'cafe'f00dULL;

class Draws
{
  public:
    explicit Draws(std::uint64_t stream) : rng_(kCheckSeed, stream) {}
    double in(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }

  private:
    CounterRng rng_;
};

SingleQubitScenario random_single(Draws& d)
{
    const double theta = d.in(0.0, std::numbers::pi / 2);
    const cplx xb = std::polar(std::cos(theta), d.in(0.0, 2 * std::numbers::pi));
    const cplx yb = std::polar(std::sin(theta), d.in(0.0, 2 * std::numbers::pi));
    return SingleQubitScenario(d.in(-5.0, 5.0), CouplingLaw(d.in(0.5, 5.0)), xb, yb,
                               GaussianSpec(0.0, d.in(0.0, 3.0)));
}

TwoQubitScenario random_two(Draws& d, double var_a, double var_b)
{
    return TwoQubitScenario(d.in(-5.0, 5.0), d.in(-5.0, 5.0), CouplingLaw(d.in(0.5, 5.0)),
                            d.in(0.0, 1.0), GaussianSpec(0.0, var_a), GaussianSpec(0.0, var_b));
}

Check make_check(std::string name, double measured, double threshold, std::string detail = {})
{
    return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

double unitarity_defect(const DenseComplexMatrix& u)
{
    return max_abs_diff(u.adjoint() * u, DenseComplexMatrix::identity(u.dim()));
}

std::vector<Check> propagator_checks(std::size_t cases)
{
    double single_err = 0.0, two_err = 0.0, unitary = 0.0;
    Draws d(1);
    for (std::size_t i = 0; i < cases; ++i)
    {
        const auto s = random_single(d);
        const double eps = d.in(-5.0, 5.0);
        const double t = d.in(0.0, 10.0);
        const auto closed = propagator_single_closed(eps, t, s);
        single_err = std::max(single_err,
                              max_abs_diff(closed, matrix_exponential(build_h_single(eps, s), t)));
        unitary = std::max(unitary, unitarity_defect(closed));

        const auto s2 = random_two(d, 0.0, 0.0);
        const double ea = d.in(-5.0, 5.0), eb = d.in(-5.0, 5.0);
        const auto closed2 = propagator_two_closed(ea, eb, t, s2);
        two_err = std::max(two_err,
                           max_abs_diff(closed2, matrix_exponential(build_h_two(ea, eb, s2), t)));
        unitary = std::max(unitary, unitarity_defect(closed2));
    }
    const std::string n = std::to_string(cases) + " random cases";
    return {make_check("propagator-single-vs-expm", single_err, 1e-10, n),
            make_check("propagator-two-vs-expm", two_err, 1e-10, n),
            make_check("propagator-unitarity", unitary, 1e-12, n)};
}

std::vector<Check> realization_checks(std::size_t cases)
{
    double single_err = 0.0, two_err = 0.0;
    Draws d(2);
    const std::array<std::size_t, 2> dims2{2, 2};
    const std::array<std::size_t, 1> keep_a{0};
    const std::array<std::size_t, 3> dims3{2, 2, 2};
    const std::array<std::size_t, 2> keep_a1b1{0, 2};
    for (std::size_t i = 0; i < cases; ++i)
    {
        const auto s = random_single(d);
        const double eps = d.in(-5.0, 5.0);
        const double t = d.in(0.0, 10.0);
        const auto psi =
            initial_state_single(s).evolved(matrix_exponential(build_h_single(eps, s), t));
        const auto rho_a = partial_trace(psi.projector(), dims2, keep_a);
        const auto e = evolve_single_realization(eps, t, s);
        single_err = std::max({single_err, std::abs(rho_a(0, 0) - e.rho_pp),
                               std::abs(rho_a(0, 1) - e.rho_pm)});

        const auto s2 = random_two(d, 0.0, 0.0);
        const double ea = d.in(-5.0, 5.0), eb = d.in(-5.0, 5.0);
        const auto u = matrix_exponential(build_h_two(ea, eb, s2), t);
        const auto [psi1, psi2] = initial_states_two();
        const auto ev1 = psi1.evolved(u);
        const auto ev2 = psi2.evolved(u);
        const auto rho = ev1.projector() * cplx{s2.x, 0.0} + ev2.projector() * cplx{s2.y, 0.0};
        const auto reduced = partial_trace(rho, dims3, keep_a1b1);
        two_err = std::max(two_err,
                           max_abs_diff(reduced, evolve_two_realization(ea, eb, t, s2).to_matrix()));

        const auto [am1, am2] = two_qubit_states(evolve_two_amplitudes(ea, eb, t, s2));
        for (std::size_t k = 0; k < 8; ++k)
            two_err = std::max({two_err, std::abs(am1[k] - ev1[k]), std::abs(am2[k] - ev2[k])});
    }
    const std::string n = std::to_string(cases) + " random cases";
    return {make_check("realization-single-vs-propagator", single_err, 1e-10, n),
            make_check("realization-two-vs-propagator", two_err, 1e-10, n)};
}

Check concurrence_check(std::size_t cases, const Formulas& f)
{
    double err = 0.0;
    Draws d(3);
    for (std::size_t i = 0; i < cases; ++i)
    {
        const auto s = random_two(d, d.in(0.0, 3.0), d.in(0.0, 3.0));
        const auto x = f.avg_xstate(d.in(0.0, 10.0), s);
        const double fast = entanglement::concurrence_x(x);
        const double general = entanglement::concurrence_general(validate_density(x.to_matrix()));
        err = std::max(err, std::abs(fast - general));
    }
    return make_check("concurrence-x-vs-general", err, 1e-10,
                      std::to_string(cases) + " averaged X-states");
}

Check specialization_check(std::size_t cases, const Formulas& f)
{
    double err = 0.0;
    Draws d(4);
    for (std::size_t i = 0; i < cases; ++i)
    {
        const double t = d.in(0.0, 10.0);
        auto s = random_two(d, 0.0, 0.0);
        if (s.coupling.alpha() > 0.5)
        {
            const auto x = f.avg_xstate(t, s);
            const auto sp = analytic::special_no_longitudinal(t, s);
            err = std::max({err, std::abs(std::abs(x.z()) - sp.z_abs),
                            std::abs(std::sqrt(x.a() * x.d()) - sp.ad_root)});
        }
        s.noise_b = GaussianSpec(0.0, d.in(0.01, 3.0));
        const auto x = f.avg_xstate(t, s);
        const auto sp = analytic::special_transverse_only(t, s);
        err = std::max({err, std::abs(std::abs(x.z()) - sp.z_abs),
                        std::abs(std::sqrt(x.a() * x.d()) - sp.ad_root)});
    }
    return make_check("special-cases-vs-general", err, 1e-12,
                      std::to_string(cases) + " parameter draws");
}

Check thermal_check(std::size_t cases)
{
    double err = 0.0;
    Draws d(5);
    for (std::size_t i = 0; i < cases; ++i)
    {
        const double p = d.in(0.0, 0.499);
        const auto inv = analytic::invert_thermal(p);
        err = std::max(err, std::abs(analytic::steady_population(CouplingLaw(inv.alpha), inv.xb) - p));
    }
    err = std::max(err, std::abs(analytic::thermal_population(analytic::ThermalTarget(std::log(3.0)))
                                 - 0.25));
    return make_check("thermal-roundtrip", err, 1e-12, std::to_string(cases) + " targets");
}

Check mc_single_check(std::size_t samples, const Formulas& f)
{
    // Single-qubit setting with omega_a = 4, xb = 0.9, var = 0.6, alpha = 1.
    const auto s = SingleQubitScenario::with_real_amplitude(4.0, 1.0, 0.9, GaussianSpec(0.0, 0.6));
    const auto grid = TimeGrid::uniform(4.0, 200);
    const auto mc = sample_ensemble(s, SamplingOptions{samples, 2023, 0}, grid);
    std::vector<double> pp(grid.size()), re(grid.size()), im(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        pp[j] = f.avg_population(grid[j], s);
        const cplx coh = f.avg_coherence(grid[j], s);
        re[j] = coh.real();
        im[j] = coh.imag();
    }
    const double score = std::max(
        {worst_standard_score(mc.column("rho_pp"), mc.column("rho_pp_se"), pp),
         worst_standard_score(mc.column("re_rho_pm"), mc.column("re_rho_pm_se"), re),
         worst_standard_score(mc.column("im_rho_pm"), mc.column("im_rho_pm_se"), im)});
    return make_check("mc-vs-analytic-single", score, 1.0,
                      "N=" + std::to_string(samples) + ", deviation / (4 se)");
}

Check mc_two_check(std::size_t samples, const Formulas& f)
{
    const TwoQubitScenario s(3.0, 0.0, CouplingLaw(1.0), 0.2, GaussianSpec(0.0, 0.5),
                             GaussianSpec(0.0, 0.5));
    const auto grid = TimeGrid::uniform(4.0, 200);
    const auto mc = sample_ensemble(s, SamplingOptions{samples, 2024, 0}, grid);
    std::array<std::vector<double>, 6> ref;
    for (auto& r : ref)
        r.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        const auto x = f.avg_xstate(grid[j], s);
        ref[0][j] = x.a();
        ref[1][j] = x.b();
        ref[2][j] = x.c();
        ref[3][j] = x.d();
        ref[4][j] = x.z().real();
        ref[5][j] = x.z().imag();
    }
    const char* names[] = {"a", "b", "c", "d", "re_z", "im_z"};
    double score = 0.0;
    for (std::size_t m = 0; m < 6; ++m)
        score = std::max(score, worst_standard_score(mc.column(names[m]),
                                                     mc.column(std::string(names[m]) + "_se"),
                                                     ref[m]));
    return make_check("mc-vs-analytic-two", score, 1.0,
                      "N=" + std::to_string(samples) + ", deviation / (4 se)");
}

Check scaling_check(const Formulas& f)
{
    const auto s = SingleQubitScenario::with_real_amplitude(0.0, 5.0, 0.8, GaussianSpec(0.0, 1.0));
    const std::array<std::size_t, 3> ns{100, 1000, 10000};
    const double slope = mc_scaling_exponent(s, ns, 8, 77, TimeGrid::uniform(5.0, 400), f);
    std::ostringstream detail;
    detail << "fitted exponent " << slope << ", expected -0.5 +/- 0.1";
    return make_check("mc-scaling-exponent", std::abs(slope + 0.5), 0.1, detail.str());
}

std::vector<Check> critical_time_checks(std::size_t cases)
{
    double root_err = 0.0, tail_max = -1.0;
    Draws d(6);
    for (std::size_t i = 0; i < cases; ++i)
    {
        const TwoQubitScenario s(d.in(-6.0, 6.0), d.in(-3.0, 3.0), CouplingLaw(d.in(0.6, 3.0)),
                                 d.in(0.05, 0.95), GaussianSpec(0.0, d.in(0.1, 2.0)),
                                 GaussianSpec(0.0, d.in(0.0, 2.0)));
        const double t_max = entanglement::minimum_t_max(s) * 1.5;
        const auto tc = entanglement::find_tc(s, t_max);
        if (!tc.t_c)
        {
            root_err = INFINITY;
            continue;
        }
        root_err = std::max(root_err, std::abs(entanglement::coherence_margin(*tc.t_c, s)));
        for (std::size_t k = 0; k < 1000; ++k)
        {
            const double t = *tc.t_c + (t_max - *tc.t_c) * static_cast<double>(k) / 999.0;
            tail_max = std::max(tail_max, entanglement::coherence_margin(t, s));
        }
    }
    const std::string n = std::to_string(cases) + " random scenarios";
    return {make_check("critical-time-root", root_err, 1e-7, n),
            make_check("critical-time-tail", std::max(tail_max, 0.0), 1e-10, n)};
}

} // namespace

bool Report::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double worst_standard_score(std::span<const double> mc, std::span<const double> se,
                            std::span<const double> reference)
{
    double worst = 0.0;
    for (std::size_t j = 0; j < mc.size(); ++j)
        worst = std::max(worst, std::abs(mc[j] - reference[j]) / (4.0 * se[j] + 1e-12));
    return worst;
}

double max_population_deviation(const SingleQubitScenario& s, std::size_t samples,
                                std::uint64_t seed, const TimeGrid& grid, const Formulas& f)
{
    const auto mc = sample_ensemble(s, SamplingOptions{samples, seed, 0}, grid,
                                    SingleObservable::population);
    const auto& pp = mc.column("rho_pp");
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        worst = std::max(worst, std::abs(pp[j] - f.avg_population(grid[j], s)));
    return worst;
}

double mc_scaling_exponent(const SingleQubitScenario& s, std::span<const std::size_t> sample_counts,
                           std::size_t replicates, std::uint64_t seed, const TimeGrid& grid,
                           const Formulas& f)
{
    if (sample_counts.size() < 2 || replicates == 0)
        throw std::invalid_argument("scaling fit needs two or more sample counts");
    std::vector<double> lx, ly;
    for (std::size_t n : sample_counts)
    {
        double total = 0.0;
        for (std::size_t r = 0; r < replicates; ++r)
            total += max_population_deviation(s, n, seed + 1000003ULL * r + n, grid, f);
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(total / static_cast<double>(replicates)));
    }
    const double k = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        mx += lx[i] / k;
        my += ly[i] / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

Report run(Level level, const Formulas& f)
{
    const bool full = level == Level::full;
    Report report;
    auto append = [&](std::vector<Check> cs) {
        for (auto& c : cs)
            report.checks.push_back(std::move(c));
    };
    append(propagator_checks(full ? 2000 : 300));
    append(realization_checks(full ? 1000 : 200));
    report.checks.push_back(concurrence_check(full ? 2000 : 300, f));
    report.checks.push_back(specialization_check(full ? 1000 : 200, f));
    report.checks.push_back(thermal_check(100));
    report.checks.push_back(mc_single_check(full ? 10000 : 2000, f));
    report.checks.push_back(mc_two_check(full ? 10000 : 2000, f));
    if (full)
    {
        report.checks.push_back(scaling_check(f));
        append(critical_time_checks(40));
    }
    return report;
}

void print(const Report& report, std::ostream& os)
{
    for (const auto& c : report.checks)
    {
        os << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << c.name
           << " measured=" << std::setprecision(3) << std::scientific << c.measured
           << " threshold=" << c.threshold << std::defaultfloat;
        if (!c.detail.empty())
            os << "  (" << c.detail << ')';
        os << '\n';
    }
    os << (report.passed() ? "all checks passed" : "validation FAILED") << '\n';
}

} // namespace hamens::validation
