#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamens {

using cplx = std::complex<double>;

/// Square complex matrix of dimension 2, 4 or 8, stored row-major.
///
/// Hamiltonians are in units of the frequency unit and times in its inverse,
/// so every entry is dimensionless. Construction rejects non-finite entries.
class DenseComplexMatrix
{
  public:
    /// Zero matrix.
    explicit DenseComplexMatrix(std::size_t dim);
    DenseComplexMatrix(std::size_t dim, std::vector<cplx> row_major);

    static DenseComplexMatrix identity(std::size_t dim);
    static DenseComplexMatrix diagonal(std::span<const cplx> diag);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    cplx operator()(std::size_t row, std::size_t col) const
    {
        return entries_[row * dim_ + col];
    }
    cplx& operator()(std::size_t row, std::size_t col)
    {
        return entries_[row * dim_ + col];
    }

    DenseComplexMatrix adjoint() const;
    DenseComplexMatrix conjugate() const;
    DenseComplexMatrix transpose() const;
    cplx trace() const;
    bool is_finite() const;

    DenseComplexMatrix& operator+=(const DenseComplexMatrix& other);
    DenseComplexMatrix& operator-=(const DenseComplexMatrix& other);
    DenseComplexMatrix& operator*=(cplx scale);

    friend DenseComplexMatrix operator+(DenseComplexMatrix a, const DenseComplexMatrix& b)
    {
        return a += b;
    }
    friend DenseComplexMatrix operator-(DenseComplexMatrix a, const DenseComplexMatrix& b)
    {
        return a -= b;
    }
    friend DenseComplexMatrix operator*(DenseComplexMatrix a, cplx s) { return a *= s; }
    friend DenseComplexMatrix operator*(cplx s, DenseComplexMatrix a) { return a *= s; }
    friend DenseComplexMatrix operator*(const DenseComplexMatrix& a, const DenseComplexMatrix& b);

    bool operator==(const DenseComplexMatrix&) const = default;

  private:
    std::size_t dim_;
    std::vector<cplx> entries_;
};

/// Largest entry-wise modulus of a - b.
double max_abs_diff(const DenseComplexMatrix& a, const DenseComplexMatrix& b);

/// Kronecker product; the result dimension must not exceed 8.
DenseComplexMatrix kron(const DenseComplexMatrix& a, const DenseComplexMatrix& b);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// Column k of `vectors` is the eigenvector for `values[k]`.
struct HermitianEigen
{
    std::vector<double> values;
    DenseComplexMatrix vectors;
};

HermitianEigen hermitian_eigen(const DenseComplexMatrix& h);

/// exp(-i h t) for Hermitian h, via eigendecomposition.
///
/// Used as the reference propagator against which the closed-form
/// propagators are checked.
DenseComplexMatrix matrix_exponential(const DenseComplexMatrix& h, double t);

/// Pure state |psi> with unit norm (within 1e-12).
class StateVector
{
  public:
    explicit StateVector(std::vector<cplx> amplitudes);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    /// |psi><psi|
    DenseComplexMatrix projector() const;
    /// U|psi>; U must be unitary for the result to remain normalized.
    StateVector evolved(const DenseComplexMatrix& unitary) const;

  private:
    std::vector<cplx> amps_;
};

/// Which density-matrix invariant failed validation.
enum class DensityViolation
{
    shape,
    non_finite,
    hermiticity,
    trace,
    positivity,
};

std::string to_string(DensityViolation v);

class DensityError : public std::runtime_error
{
  public:
    DensityError(DensityViolation violation, double magnitude);

    DensityViolation violation() const noexcept { return violation_; }
    /// Measured size of the violation (e.g. |Tr rho - 1|, or -lambda_min).
    double magnitude() const noexcept { return magnitude_; }

  private:
    DensityViolation violation_;
    double magnitude_;
};

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix. Only obtainable
/// through validate_density().
class DensityMatrix
{
  public:
    const DenseComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    /// Tr rho^2
    double purity() const;

  private:
    friend DensityMatrix validate_density(const DenseComplexMatrix& rho);
    explicit DensityMatrix(DenseComplexMatrix m) : m_(std::move(m)) {}

    DenseComplexMatrix m_;
};

/// Checks hermiticity, trace and positivity; throws DensityError naming the
/// first violated invariant and its magnitude.
DensityMatrix validate_density(const DenseComplexMatrix& rho);

/// Trace out every subsystem not listed in `keep`.
///
/// `dims` gives the subsystem dimensions in tensor order (first factor is
/// the most significant index). Kept subsystems retain their relative order.
DenseComplexMatrix partial_trace(const DenseComplexMatrix& rho,
                                 std::span<const std::size_t> dims,
                                 std::span<const std::size_t> keep);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Single-qubit operators in the {|+>, |->} basis, |+> first.
namespace pauli {
DenseComplexMatrix identity();
DenseComplexMatrix x();
DenseComplexMatrix y();
DenseComplexMatrix z();
/// sigma_+ = |+><-|
DenseComplexMatrix raising();
/// sigma_- = |-><+|
DenseComplexMatrix lowering();
} // namespace pauli

} // namespace hamens
