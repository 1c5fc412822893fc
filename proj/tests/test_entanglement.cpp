#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hamens/analytic.hpp"
#include "hamens/entanglement.hpp"
#include "support.hpp"

using namespace hamens;
using namespace hamens::entanglement;
using std::numbers::pi;

namespace {

TwoQubitScenario two(double omega_a, double alpha, double x, double var_a, double var_b)
{
    return TwoQubitScenario(omega_a, 0.0, CouplingLaw(alpha), x, GaussianSpec(0.0, var_a),
                            GaussianSpec(0.0, var_b));
}

double c_at(double t, const TwoQubitScenario& s)
{
    return concurrence_x(analytic::avg_xstate_two(t, s));
}

/// Concurrence from the textbook definition: square roots of the
/// eigenvalues of rho (sy sy) rho* (sy sy), computed from the Hermitian
/// form sqrt(rho) (sy sy) rho* (sy sy) sqrt(rho).
double wootters_reference(const DenseComplexMatrix& rho)
{
    const auto eig = hermitian_eigen(rho);
    DenseComplexMatrix sqrt_rho(4);
    for (std::size_t k = 0; k < 4; ++k)
    {
        const double l = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                sqrt_rho(i, j) += l * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    const auto yy = kron(pauli::y(), pauli::y());
    const auto m = test::loop_multiply(
        test::loop_multiply(test::loop_multiply(test::loop_multiply(sqrt_rho, yy), rho.conjugate()), yy),
        sqrt_rho);
    auto l = hermitian_eigen((m + m.adjoint()) * 0.5).values;
    for (auto& v : l)
        v = std::sqrt(std::max(v, 0.0));
    return std::max(0.0, l[3] - l[2] - l[1] - l[0]);
}

} // namespace

TEST_CASE("concurrence of reference states")
{
    const StateVector bell({M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    CHECK(concurrence_general(validate_density(bell.projector())).value() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(concurrence_general(validate_density(DenseComplexMatrix::identity(4) * 0.25)).value() ==
          doctest::Approx(0.0).epsilon(1e-14));

    const AveragedXState x(XStateElements{0.04, 0.46, 0.46, 0.04, 0.3});
    CHECK(concurrence_x(x).value() == doctest::Approx(0.52).epsilon(1e-14));
    CHECK(concurrence_general(validate_density(x.to_matrix())).value() ==
          doctest::Approx(0.52).epsilon(1e-12));

    const AveragedXState dead(XStateElements{0.2, 0.3, 0.3, 0.2, 0.1});
    CHECK(concurrence_x(dead).value() == 0.0);

    CHECK(ConcurrenceValue(1.0 + 1e-13).value() == 1.0);
    CHECK(ConcurrenceValue(-1e-13).value() == 0.0);
    CHECK_THROWS_AS(ConcurrenceValue(1.01), std::invalid_argument);
}

TEST_CASE("general concurrence against the Hermitian-form oracle")
{
    std::mt19937_64 gen(41);
    for (int i = 0; i < 200; ++i)
    {
        const auto rho = test::random_density_4(gen);
        CHECK(concurrence_general(validate_density(rho)).value() ==
              doctest::Approx(wootters_reference(rho)).epsilon(1e-9));
    }
    // Pure entangled states: C = 2 |a d - b c|.
    for (int i = 0; i < 100; ++i)
    {
        std::normal_distribution<double> n;
        std::vector<cplx> v(4);
        double norm = 0;
        for (auto& a : v)
        {
            a = {n(gen), n(gen)};
            norm += std::norm(a);
        }
        for (auto& a : v)
            a /= std::sqrt(norm);
        const double expected = 2 * std::abs(v[0] * v[3] - v[1] * v[2]);
        CHECK(concurrence_general(validate_density(StateVector(v).projector())).value() ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("general concurrence is invariant under local unitaries")
{
    std::mt19937_64 gen(42);
    for (int i = 0; i < 100; ++i)
    {
        const auto rho = test::random_density_4(gen);
        const auto u = kron(test::random_unitary_2(gen), test::random_unitary_2(gen));
        const auto rotated = u * rho * u.adjoint();
        CHECK(std::abs(concurrence_general(validate_density(rho)).value() -
                       concurrence_general(validate_density(rotated)).value()) < 1e-10);
    }
}

TEST_CASE("fast path agrees with the general route on averaged states")
{
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i)
    {
        const auto s = TwoQubitScenario(10 * u(gen) - 5, 4 * u(gen) - 2, CouplingLaw(0.5 + 4 * u(gen)),
                                        u(gen), GaussianSpec(0.0, 2 * u(gen)),
                                        GaussianSpec(0.0, 2 * u(gen)));
        const auto x = analytic::avg_xstate_two(10 * u(gen), s);
        CHECK(std::abs(concurrence_x(x).value() -
                       concurrence_general(validate_density(x.to_matrix())).value()) <= 1e-10);
    }

    const auto s = two(0.0, 1.0, 0.2, 0.5, 0.0);
    const auto x = analytic::avg_xstate_two(1.0, s);
    CHECK(std::abs(concurrence_x(x).value() -
                   concurrence_general(validate_density(x.to_matrix())).value()) <= 1e-10);
    CHECK(c_at(0.0, s) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("concurrence revivals without longitudinal noise")
{
    const auto s = two(3.0, 1.0, 0.2, 0.0, 0.0);
    for (int n = 1; n <= 4; ++n)
        CHECK(c_at(n * pi / 3, s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c_at(pi / 6, s) < 1.0);
}

TEST_CASE("critical time")
{
    SUBCASE("no sudden death")
    {
        CHECK_FALSE(find_tc_auto(two(0.0, 0.5, 0.2, 1.0, 0.0)).t_c);
        CHECK_FALSE(find_tc_auto(two(0.0, 1.0, 0.2, 0.0, 0.5)).t_c);
        CHECK_FALSE(find_tc_auto(two(0.0, 1.0, 0.0, 1.0, 0.5)).t_c);
        CHECK_FALSE(find_tc_auto(two(0.0, 1.0, 1.0, 1.0, 0.5)).t_c);
        // Without longitudinal noise the concurrence only approaches zero.
        const auto transverse = two(0.0, 1.0, 0.2, 0.0, 2.0);
        CHECK(c_at(3.0, transverse) > 0.0);
    }

    SUBCASE("root and tail")
    {
        std::mt19937_64 gen(44);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 20; ++i)
        {
            const auto s = TwoQubitScenario(6 * u(gen) - 3, 0.0, CouplingLaw(0.55 + 3 * u(gen)),
                                            0.05 + 0.9 * u(gen), GaussianSpec(0.0, 0.1 + 2 * u(gen)),
                                            GaussianSpec(0.0, 2 * u(gen)));
            const double t_max = 1.5 * minimum_t_max(s);
            const auto r = find_tc(s, t_max);
            REQUIRE(r.t_c);
            CHECK(std::abs(coherence_margin(*r.t_c, s)) <= 1e-7);
            CHECK(r.t_hi - r.t_lo <= kCriticalTimeTolerance);
            CHECK(coherence_margin(r.t_lo, s) > 0.0);
            for (int k = 0; k <= 2000; ++k)
            {
                const double t = *r.t_c + (t_max - *r.t_c) * k / 2000.0;
                REQUIRE(c_at(t, s) == 0.0);
            }
        }
    }

    SUBCASE("t_max below the guaranteed horizon is rejected")
    {
        const auto s = two(0.0, 1.0, 0.2, 1.0, 0.0);
        CHECK_THROWS_AS(find_tc(s, 0.5 * minimum_t_max(s)), std::invalid_argument);
    }

    SUBCASE("decreasing in alpha and in the longitudinal variance")
    {
        auto tc = [](double alpha, double var) {
            return *find_tc_auto(two(0.0, alpha, 0.2, var, 0.0)).t_c;
        };
        CHECK(tc(1.0, 1.0) > tc(2.0, 1.0));
        CHECK(tc(1.0, 1.0) > tc(1.0, 2.0));
        for (double a = 0.6; a < 3.0; a += 0.4)
            for (double v = 0.1; v < 2.0; v += 0.3)
            {
                CHECK(tc(a, v) > tc(a + 0.4, v));
                CHECK(tc(a, v) > tc(a, v + 0.3));
            }
    }

    SUBCASE("transverse noise brings the zero forward")
    {
        auto s = [](double vb) { return two(0.0, 1.0, 0.2, 0.5, vb); };
        const double t0 = *find_tc_auto(s(0.0)).t_c;
        const double t05 = *find_tc_auto(s(0.5)).t_c;
        const double t2 = *find_tc_auto(s(2.0)).t_c;
        CHECK(t2 < t05);
        CHECK(t05 < t0);
        for (double t = 0.01; t < t2; t += 0.01)
        {
            CHECK(c_at(t, s(0.5)) < c_at(t, s(0.0)));
            CHECK(c_at(t, s(2.0)) < c_at(t, s(0.5)));
        }
    }

    SUBCASE("nearly independent of the working frequency")
    {
        std::vector<double> tcs;
        for (double w : {0.0, 3.0, 6.0})
            tcs.push_back(*find_tc_auto(two(w, 1.0, 0.2, 0.5, 0.5)).t_c);
        const auto [lo, hi] = std::minmax_element(tcs.begin(), tcs.end());
        const double mean = (tcs[0] + tcs[1] + tcs[2]) / 3;
        CHECK((*hi - *lo) / mean < 0.1);
    }
}

TEST_CASE("concurrence trajectories")
{
    const auto grid = TimeGrid::uniform(4.0, 200);

    SUBCASE("decoupled auxiliary keeps C = 1")
    {
        const auto traj = concurrence_trajectory(two(1.0, 0.5, 0.2, 1.0, 0.0), grid, AnalyticSource{});
        for (double c : traj.column("C"))
            CHECK(c == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("sampled curve follows the averaged one")
    {
        const auto s = two(0.0, 1.0, 0.2, 0.5, 0.5);
        const auto exact = concurrence_trajectory(s, grid, AnalyticSource{});
        const auto mc = concurrence_trajectory(s, grid, MonteCarloSource{300, 1, 0});
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(exact.column("C")[i] - mc.column("C")[i]));
        CHECK(worst <= 0.08);
        CHECK(mc.meta().source == Source::monte_carlo);
        CHECK(mc.meta().samples == 300);
    }
}
