#pragma once

#include <random>

#include "hamens/linalg.hpp"

namespace hamens::test {

/// Naive triple-loop product, independent of the library's operator*.
inline DenseComplexMatrix loop_multiply(const DenseComplexMatrix& a, const DenseComplexMatrix& b)
{
    DenseComplexMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
        {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.dim(); ++k)
                s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

inline DenseComplexMatrix random_unitary_2(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
    const double th = u(gen) / 4, a = u(gen), b = u(gen), c = u(gen);
    const cplx e1 = std::polar(1.0, a), e2 = std::polar(1.0, b), g = std::polar(1.0, c);
    return DenseComplexMatrix(2, {g * e1 * std::cos(th), g * e2 * std::sin(th),
                                  -g * std::conj(e2) * std::sin(th), g * std::conj(e1) * std::cos(th)});
}

inline DenseComplexMatrix random_density_4(std::mt19937_64& gen)
{
    std::normal_distribution<double> n;
    DenseComplexMatrix g(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            g(i, j) = {n(gen), n(gen)};
    DenseComplexMatrix rho = loop_multiply(g, g.adjoint());
    rho *= 1.0 / rho.trace().real();
    return rho;
}

} // namespace hamens::test
