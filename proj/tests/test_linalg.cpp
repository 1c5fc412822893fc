#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "hamens/linalg.hpp"
#include "hamens/realization.hpp"
#include "support.hpp"

using namespace hamens;

TEST_CASE("kron of identities and of sigma_z")
{
    CHECK(kron(pauli::identity(), pauli::identity()) == DenseComplexMatrix::identity(4));
    const std::array<cplx, 4> d{1.0, -1.0, -1.0, 1.0};
    CHECK(kron(pauli::z(), pauli::z()) == DenseComplexMatrix::diagonal(d));
    CHECK_THROWS_AS(kron(kron(pauli::x(), pauli::x()), kron(pauli::x(), pauli::x())),
                    std::invalid_argument);
}

TEST_CASE("sigma_y (x) sigma_y spin flip on a Bell state matches a scalar expansion")
{
    // Bell state (|++> + |-->)/sqrt2.
    const double h = 0.5;
    const DenseComplexMatrix rho(4, {h, 0, 0, h, 0, 0, 0, 0, 0, 0, 0, 0, h, 0, 0, h});
    const auto yy = kron(pauli::y(), pauli::y());

    // Hand expansion: (sy sy)_{ij} = (sy)_{i1 j1} (sy)_{i2 j2}.
    const cplx sy[2][2] = {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}};
    DenseComplexMatrix yy_ref(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            yy_ref(i, j) = sy[i / 2][j / 2] * sy[i % 2][j % 2];
    CHECK(max_abs_diff(yy, yy_ref) == 0.0);

    const auto flipped = yy * rho.conjugate() * yy;
    const auto flipped_ref = test::loop_multiply(test::loop_multiply(yy_ref, rho.conjugate()), yy_ref);
    CHECK(max_abs_diff(flipped, flipped_ref) < 1e-15);
    // The Bell state is invariant under the spin flip.
    CHECK(max_abs_diff(flipped, rho) < 1e-15);
}

TEST_CASE("partial trace")
{
    const std::array<std::size_t, 2> dims{2, 2};
    const std::array<std::size_t, 1> keep0{0};

    SUBCASE("Bell state reduces to I/2")
    {
        const StateVector bell({M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
        const auto r = partial_trace(bell.projector(), dims, keep0);
        CHECK(max_abs_diff(r, DenseComplexMatrix::identity(2) * 0.5) < 1e-15);
    }

    SUBCASE("product state factorizes")
    {
        const DenseComplexMatrix ra(2, {0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3});
        const DenseComplexMatrix rb(2, {0.4, cplx(-0.3, 0.05), cplx(-0.3, -0.05), 0.6});
        CHECK(max_abs_diff(partial_trace(kron(ra, rb), dims, keep0), ra) < 1e-15);
        const std::array<std::size_t, 1> keep1{1};
        CHECK(max_abs_diff(partial_trace(kron(ra, rb), dims, keep1), rb) < 1e-15);
    }

    SUBCASE("eight-dimensional pure state, middle qubit traced out")
    {
        // Evolved component that started with A2 = |+> (A1 A2 B1 order).
        const cplx eta1{0.3, 0.4}, eta2{-0.2, 0.5}, eta3{0.6, -0.1};
        const double norm = std::sqrt(std::norm(eta1) + std::norm(eta2) + std::norm(eta3));
        std::vector<cplx> amps(8, 0.0);
        amps[0] = eta1 / norm;
        amps[3] = eta2 / norm;
        amps[5] = eta3 / norm;
        const StateVector psi(amps);

        // Oracle: sum over the A2 index of outer products, scalar loops only.
        DenseComplexMatrix ref(4);
        for (int a1 = 0; a1 < 2; ++a1)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int a1p = 0; a1p < 2; ++a1p)
                    for (int b1p = 0; b1p < 2; ++b1p)
                        for (int a2 = 0; a2 < 2; ++a2)
                            ref(2 * a1 + b1, 2 * a1p + b1p) +=
                                amps[4 * a1 + 2 * a2 + b1] * std::conj(amps[4 * a1p + 2 * a2 + b1p]);

        const std::array<std::size_t, 3> d3{2, 2, 2};
        const std::array<std::size_t, 2> keep{0, 2};
        const auto r = partial_trace(psi.projector(), d3, keep);
        CHECK(max_abs_diff(r, ref) < 1e-15);
        // X pattern: only diagonal and the (0,3) coherence survive.
        CHECK(std::abs(r(0, 1)) == 0.0);
        CHECK(std::abs(r(1, 2)) == 0.0);
        CHECK(std::abs(r(0, 3)) > 0.0);
    }
}

TEST_CASE("matrix exponential")
{
    CHECK(max_abs_diff(matrix_exponential(DenseComplexMatrix(4), 1.7),
                       DenseComplexMatrix::identity(4)) < 1e-15);

    const double t = 0.9;
    const std::array<cplx, 2> d{std::polar(1.0, -t / 2), std::polar(1.0, t / 2)};
    CHECK(max_abs_diff(matrix_exponential(pauli::z() * 0.5, t), DenseComplexMatrix::diagonal(d)) <
          1e-15);

    SUBCASE("unitary and a one-parameter group")
    {
        std::mt19937_64 gen(3);
        std::normal_distribution<double> n;
        for (int rep = 0; rep < 50; ++rep)
        {
            DenseComplexMatrix g(8);
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j)
                    g(i, j) = {n(gen), n(gen)};
            const auto h = (g + g.adjoint()) * 0.5;
            const auto u1 = matrix_exponential(h, 0.4);
            const auto u2 = matrix_exponential(h, 1.1);
            CHECK(max_abs_diff(u1 * u1.adjoint(), DenseComplexMatrix::identity(8)) < 1e-12);
            CHECK(max_abs_diff(u1 * u2, matrix_exponential(h, 1.5)) < 1e-11);
        }
    }

    SUBCASE("closed-form single-qubit propagator")
    {
        const auto s = SingleQubitScenario::with_real_amplitude(0.0, 1.0, 1.0, {});
        for (double tt : {0.0, 0.3, 2.0, 7.5})
            CHECK(max_abs_diff(propagator_single_closed(1.0, tt, s),
                               matrix_exponential(build_h_single(1.0, s), tt)) <= 1e-10);
    }

    CHECK_THROWS_AS(matrix_exponential(pauli::raising(), 1.0), std::invalid_argument);
}

TEST_CASE("density validation")
{
    CHECK_NOTHROW(validate_density(DenseComplexMatrix::identity(2) * 0.5));

    const std::array<cplx, 2> bad{1.5, -0.5};
    try
    {
        validate_density(DenseComplexMatrix::diagonal(bad));
        FAIL("expected a positivity error");
    }
    catch (const DensityError& e)
    {
        CHECK(e.violation() == DensityViolation::positivity);
        CHECK(e.magnitude() == doctest::Approx(0.5));
    }

    try
    {
        validate_density(DenseComplexMatrix::identity(2) * 0.6);
        FAIL("expected a trace error");
    }
    catch (const DensityError& e)
    {
        CHECK(e.violation() == DensityViolation::trace);
    }

    try
    {
        validate_density(DenseComplexMatrix(2, {0.5, 0.1, 0.2, 0.5}));
        FAIL("expected a hermiticity error");
    }
    catch (const DensityError& e)
    {
        CHECK(e.violation() == DensityViolation::hermiticity);
    }

    CHECK_THROWS_AS(DenseComplexMatrix(2, {NAN, 0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DenseComplexMatrix(3), std::invalid_argument);

    const auto rho = validate_density(DenseComplexMatrix::identity(4) * 0.25);
    CHECK(rho.purity() == doctest::Approx(0.25));
}

TEST_CASE("state vectors are normalized")
{
    CHECK_THROWS_AS(StateVector({1.0, 1.0}), std::invalid_argument);
    const StateVector up({1.0, 0.0});
    const auto flipped = up.evolved(pauli::x());
    CHECK(flipped[1] == cplx(1.0, 0.0));
}
