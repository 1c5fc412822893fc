#include "hamens/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

namespace hamens {
namespace {

using EigenMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool admissible_dim(std::size_t d)
{
    return d == 2 || d == 4 || d == 8;
}

void require_same_dim(const DenseComplexMatrix& a, const DenseComplexMatrix& b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix dimensions differ");
}

EigenMat to_eigen(const DenseComplexMatrix& m)
{
    const auto n = static_cast<Eigen::Index>(m.dim());
    EigenMat out(n, n);
    std::copy(m.entries().begin(), m.entries().end(), out.data());
    return out;
}

double hermiticity_defect(const DenseComplexMatrix& m)
{
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = r; c < m.dim(); ++c)
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

} // namespace

//---------------------------------------------------------------------------//
// DenseComplexMatrix
//---------------------------------------------------------------------------//

DenseComplexMatrix::DenseComplexMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, cplx{0.0, 0.0})
{
    if (!admissible_dim(dim))
        throw std::invalid_argument("matrix dimension must be 2, 4 or 8, got "
                                    + std::to_string(dim));
}

DenseComplexMatrix::DenseComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), entries_(std::move(row_major))
{
    if (!admissible_dim(dim))
        throw std::invalid_argument("matrix dimension must be 2, 4 or 8, got "
                                    + std::to_string(dim));
    if (entries_.size() != dim * dim)
        throw std::invalid_argument("entry count does not match dim^2");
    if (!is_finite())
        throw std::invalid_argument("matrix has non-finite entries");
}

DenseComplexMatrix DenseComplexMatrix::identity(std::size_t dim)
{
    DenseComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

DenseComplexMatrix DenseComplexMatrix::diagonal(std::span<const cplx> diag)
{
    DenseComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

DenseComplexMatrix DenseComplexMatrix::adjoint() const
{
    DenseComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

DenseComplexMatrix DenseComplexMatrix::conjugate() const
{
    DenseComplexMatrix out(*this);
    for (auto& v : out.entries_)
        v = std::conj(v);
    return out;
}

DenseComplexMatrix DenseComplexMatrix::transpose() const
{
    DenseComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
            out(c, r) = (*this)(r, c);
    return out;
}

cplx DenseComplexMatrix::trace() const
{
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i)
        sum += (*this)(i, i);
    return sum;
}

bool DenseComplexMatrix::is_finite() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](cplx v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

DenseComplexMatrix& DenseComplexMatrix::operator+=(const DenseComplexMatrix& other)
{
    require_same_dim(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += other.entries_[i];
    return *this;
}

DenseComplexMatrix& DenseComplexMatrix::operator-=(const DenseComplexMatrix& other)
{
    require_same_dim(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] -= other.entries_[i];
    return *this;
}

DenseComplexMatrix& DenseComplexMatrix::operator*=(cplx scale)
{
    for (auto& v : entries_)
        v *= scale;
    return *this;
}

DenseComplexMatrix operator*(const DenseComplexMatrix& a, const DenseComplexMatrix& b)
{
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    DenseComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
        {
            const cplx ark = a(r, k);
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += ark * b(k, c);
        }
    return out;
}

double max_abs_diff(const DenseComplexMatrix& a, const DenseComplexMatrix& b)
{
    require_same_dim(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

DenseComplexMatrix kron(const DenseComplexMatrix& a, const DenseComplexMatrix& b)
{
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    if (na * nb > 8)
        throw std::invalid_argument("kron result dimension " + std::to_string(na * nb)
                                    + " exceeds 8");
    DenseComplexMatrix out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra)
        for (std::size_t ca = 0; ca < na; ++ca)
        {
            const cplx s = a(ra, ca);
            for (std::size_t rb = 0; rb < nb; ++rb)
                for (std::size_t cb = 0; cb < nb; ++cb)
                    out(ra * nb + rb, ca * nb + cb) = s * b(rb, cb);
        }
    return out;
}

//---------------------------------------------------------------------------//
// Spectral routines
//---------------------------------------------------------------------------//

HermitianEigen hermitian_eigen(const DenseComplexMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<EigenMat> solver(to_eigen(h));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Hermitian eigensolver did not converge");

    const std::size_t n = h.dim();
    HermitianEigen out{std::vector<double>(n), DenseComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k)
    {
        out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        for (std::size_t r = 0; r < n; ++r)
            out.vectors(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r),
                                                      static_cast<Eigen::Index>(k));
    }
    return out;
}

DenseComplexMatrix matrix_exponential(const DenseComplexMatrix& h, double t)
{
    const double defect = hermiticity_defect(h);
    if (defect > kHermiticityTol)
    {
        std::ostringstream msg;
        msg << "matrix_exponential requires a Hermitian generator (defect " << defect << ")";
        throw std::invalid_argument(msg.str());
    }
    const auto eig = hermitian_eigen(h);
    const std::size_t n = h.dim();
    DenseComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const cplx phase = std::polar(1.0, -eig.values[k] * t);
        for (std::size_t r = 0; r < n; ++r)
        {
            const cplx vr = eig.vectors(r, k) * phase;
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += vr * std::conj(eig.vectors(c, k));
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
// StateVector
//---------------------------------------------------------------------------//

StateVector::StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes))
{
    if (!admissible_dim(amps_.size()))
        throw std::invalid_argument("state dimension must be 2, 4 or 8");
    const double norm2 = std::accumulate(amps_.begin(), amps_.end(), 0.0,
                                         [](double acc, cplx v) { return acc + std::norm(v); });
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("state vector is not normalized");
}

DenseComplexMatrix StateVector::projector() const
{
    const std::size_t n = dim();
    DenseComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = amps_[r] * std::conj(amps_[c]);
    return out;
}

StateVector StateVector::evolved(const DenseComplexMatrix& unitary) const
{
    if (unitary.dim() != dim())
        throw std::invalid_argument("operator and state dimensions differ");
    std::vector<cplx> out(dim(), cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c)
            out[r] += unitary(r, c) * amps_[c];
    return StateVector(std::move(out));
}

//---------------------------------------------------------------------------//
// Density matrices
//---------------------------------------------------------------------------//

std::string to_string(DensityViolation v)
{
    switch (v)
    {
    case DensityViolation::shape: return "shape";
    case DensityViolation::non_finite: return "non-finite";
    case DensityViolation::hermiticity: return "hermiticity";
    case DensityViolation::trace: return "trace";
    case DensityViolation::positivity: return "positivity";
    }
    return "unknown";
}

namespace {
std::string describe(DensityViolation v, double magnitude)
{
    std::ostringstream msg;
    msg << "invalid density matrix: " << to_string(v) << " violated by " << magnitude;
    return msg.str();
}
} // namespace

DensityError::DensityError(DensityViolation violation, double magnitude)
    : std::runtime_error(describe(violation, magnitude)),
      violation_(violation),
      magnitude_(magnitude)
{
}

double DensityMatrix::purity() const
{
    return (m_ * m_).trace().real();
}

DensityMatrix validate_density(const DenseComplexMatrix& rho)
{
    if (!rho.is_finite())
        throw DensityError(DensityViolation::non_finite, 0.0);

    const double herm = hermiticity_defect(rho);
    if (herm > kHermiticityTol)
        throw DensityError(DensityViolation::hermiticity, herm);

    const double trace_err = std::abs(rho.trace() - 1.0);
    if (trace_err > kTraceTol)
        throw DensityError(DensityViolation::trace, trace_err);

    // Symmetrize before diagonalizing so round-off in the lower triangle
    // does not bias the eigenvalues.
    DenseComplexMatrix sym = (rho + rho.adjoint()) * cplx{0.5, 0.0};
    const double lambda_min = hermitian_eigen(sym).values.front();
    if (lambda_min < -kPositivityTol)
        throw DensityError(DensityViolation::positivity, -lambda_min);

    return DensityMatrix(rho);
}

DenseComplexMatrix partial_trace(const DenseComplexMatrix& rho,
                                 std::span<const std::size_t> dims,
                                 std::span<const std::size_t> keep)
{
    if (dims.empty() || keep.empty())
        throw std::invalid_argument("partial_trace needs subsystem dims and a nonempty keep set");
    const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                              std::multiplies<>{});
    if (total != rho.dim())
        throw std::invalid_argument("subsystem dims do not multiply to the matrix dimension");

    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep)
    {
        if (k >= dims.size() || kept[k])
            throw std::invalid_argument("keep set has an out-of-range or repeated index");
        kept[k] = true;
    }

    // Strides of each subsystem in the full index (row-major tensor order).
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;)
    {
        stride[i] = s;
        s *= dims[i];
    }

    std::vector<std::size_t> kept_idx, traced_idx;
    for (std::size_t i = 0; i < dims.size(); ++i)
        (kept[i] ? kept_idx : traced_idx).push_back(i);

    // Offset in the full space of every multi-index over a subsystem group.
    auto offsets = [&](const std::vector<std::size_t>& group) {
        std::vector<std::size_t> out{0};
        for (std::size_t sub : group)
        {
            std::vector<std::size_t> next;
            next.reserve(out.size() * dims[sub]);
            for (std::size_t base : out)
                for (std::size_t v = 0; v < dims[sub]; ++v)
                    next.push_back(base + v * stride[sub]);
            out = std::move(next);
        }
        return out;
    };
    const auto kept_off = offsets(kept_idx);
    const auto traced_off = offsets(traced_idx);

    DenseComplexMatrix out(kept_off.size());
    for (std::size_t r = 0; r < kept_off.size(); ++r)
        for (std::size_t c = 0; c < kept_off.size(); ++c)
        {
            cplx sum{0.0, 0.0};
            for (std::size_t t : traced_off)
                sum += rho(kept_off[r] + t, kept_off[c] + t);
            out(r, c) = sum;
        }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep)
{
    return validate_density(partial_trace(rho.matrix(), dims, keep));
}

//---------------------------------------------------------------------------//
// Pauli operators
//---------------------------------------------------------------------------//

namespace pauli {
DenseComplexMatrix identity()
{
    return DenseComplexMatrix::identity(2);
}
DenseComplexMatrix x()
{
    return DenseComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
}
DenseComplexMatrix y()
{
    return DenseComplexMatrix(2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0});
}
DenseComplexMatrix z()
{
    return DenseComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
}
DenseComplexMatrix raising()
{
    return DenseComplexMatrix(2, {0.0, 1.0, 0.0, 0.0});
}
DenseComplexMatrix lowering()
{
    return DenseComplexMatrix(2, {0.0, 0.0, 1.0, 0.0});
}
} // namespace pauli

} // namespace hamens
