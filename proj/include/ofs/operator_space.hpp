// operator_space.hpp - dense Hermitian/unitary operators, spectral decomposition,
// thermal weights and the rho-weighted operator inner product.
//
// All types are templated on the real scalar (double by default) and wrap
// Eigen complex matrices. Values are immutable after construction.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "ofs/errors.hpp"

namespace ofs {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

namespace tol {
inline constexpr double hermitian = 1e-12;  // absolute, per entry
inline constexpr double unitary = 1e-10;    // max-norm of U^dag U - 1
inline constexpr double trace = 1e-12;
inline constexpr double positivity = 1e-12;
inline constexpr double weights = 1e-12;
} // namespace tol

namespace detail {

template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return m.size() == 0 ? Real(0) : Real(m.cwiseAbs().maxCoeff());
}

template <typename Derived>
auto hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
    return max_abs(m - m.adjoint());
}

// Tr(A B) without forming the product.
template <typename DA, typename DB>
auto trace_of_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    return a.transpose().cwiseProduct(b).sum();
}

} // namespace detail

template <typename Real = double>
class HermitianOperator {
public:
    using Matrix = CMatrix<Real>;

    explicit HermitianOperator(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1) {
            throw DimensionMismatch("HermitianOperator: matrix must be square with dim >= 1");
        }
        const Real res = detail::hermiticity_residual(m_);
        if (!(res <= Real(tol::hermitian))) {
            throw NonHermitianInput("HermitianOperator: |H - H^dag|_max = " + std::to_string(double(res)));
        }
        // Remove the sub-tolerance anti-Hermitian part so that downstream
        // solvers see an exactly Hermitian matrix.
        m_ = Real(0.5) * (m_ + m_.adjoint()).eval();
    }

    static HermitianOperator zero(Index dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }
    static HermitianOperator identity(Index dim) { return HermitianOperator(Matrix::Identity(dim, dim)); }

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }

    friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
        return HermitianOperator(a.m_ + b.m_);
    }
    friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
        return HermitianOperator(a.m_ - b.m_);
    }
    friend HermitianOperator operator*(Real s, const HermitianOperator& a) { return HermitianOperator(s * a.m_); }

private:
    Matrix m_;
};

template <typename Real = double>
class UnitaryOperator {
public:
    using Matrix = CMatrix<Real>;

    explicit UnitaryOperator(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1) {
            throw DimensionMismatch("UnitaryOperator: matrix must be square with dim >= 1");
        }
        const Real res = detail::max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols()));
        if (!(res <= Real(tol::unitary))) {
            throw NonUnitaryInput("UnitaryOperator: |U^dag U - 1|_max = " + std::to_string(double(res)));
        }
    }

    // For producers that are unitary by construction (eigenphase exponentials).
    static UnitaryOperator trusted(Matrix m) { return UnitaryOperator(std::move(m), Unchecked{}); }

    static UnitaryOperator identity(Index dim) { return trusted(Matrix::Identity(dim, dim)); }

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }

    UnitaryOperator adjoint() const { return trusted(m_.adjoint()); }

    friend UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
        if (a.dim() != b.dim()) {
            throw DimensionMismatch("UnitaryOperator product: dimension mismatch");
        }
        return trusted(a.m_ * b.m_);
    }

private:
    struct Unchecked {};
    UnitaryOperator(Matrix m, Unchecked) : m_(std::move(m)) {}

    Matrix m_;
};

// Eigenvalues ascending; column n of eigenvectors() is |n>.
template <typename Real = double>
class SpectralDecomposition {
public:
    using Matrix = CMatrix<Real>;
    using Values = RVector<Real>;

    SpectralDecomposition(Values eigenvalues, Matrix eigenvectors)
        : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
        if (vectors_.rows() != vectors_.cols() || vectors_.cols() != values_.size() || values_.size() < 1) {
            throw DimensionMismatch("SpectralDecomposition: shape mismatch");
        }
        for (Index i = 1; i < values_.size(); ++i) {
            if (values_(i) < values_(i - 1)) {
                throw Error("SpectralDecomposition: eigenvalues must be ascending");
            }
        }
        const Real res = detail::max_abs(vectors_.adjoint() * vectors_ - Matrix::Identity(dim(), dim()));
        if (!(res <= Real(tol::unitary))) {
            throw NonUnitaryInput("SpectralDecomposition: eigenvectors not orthonormal");
        }
    }

    Index dim() const noexcept { return values_.size(); }
    const Values& eigenvalues() const noexcept { return values_; }
    const Matrix& eigenvectors() const noexcept { return vectors_; }

    // sum_n E_n |n><n|
    Matrix reconstruct() const { return vectors_ * values_.template cast<Complex<Real>>().asDiagonal() * vectors_.adjoint(); }

    // <n|X|m> for all n, m.
    template <typename Derived>
    Matrix to_eigenbasis(const Eigen::MatrixBase<Derived>& x) const {
        if (x.rows() != dim() || x.cols() != dim()) {
            throw DimensionMismatch("SpectralDecomposition::to_eigenbasis: dimension mismatch");
        }
        return vectors_.adjoint() * x * vectors_;
    }

    // Sum_n f(E_n) |n><n| for a complex-valued f.
    template <typename F>
    Matrix apply(F&& f) const {
        CVector<Real> d(dim());
        for (Index n = 0; n < dim(); ++n) {
            d(n) = f(values_(n));
        }
        return vectors_ * d.asDiagonal() * vectors_.adjoint();
    }

private:
    Values values_;
    Matrix vectors_;
};

template <typename Real>
SpectralDecomposition<Real> spectral_decompose(const HermitianOperator<Real>& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error("spectral_decompose: eigensolver failed");
    }
    return SpectralDecomposition<Real>(solver.eigenvalues(), solver.eigenvectors());
}

// exp(-i t H) by the eigenphase method.
template <typename Real>
UnitaryOperator<Real> matrix_exponential(const SpectralDecomposition<Real>& spec, Real t) {
    return UnitaryOperator<Real>::trusted(
        spec.apply([t](Real e) { return std::polar(Real(1), -t * e); }));
}

template <typename Real>
UnitaryOperator<Real> matrix_exponential(const HermitianOperator<Real>& h, Real t) {
    return matrix_exponential(spectral_decompose(h), t);
}

// Probability weights rho_nn over the eigenbasis of a SpectralDecomposition.
template <typename Real = double>
class StateWeights {
public:
    using Basis = SpectralDecomposition<Real>;

    StateWeights(RVector<Real> weights, std::shared_ptr<const Basis> basis, std::optional<Real> beta = std::nullopt)
        : weights_(std::move(weights)), basis_(std::move(basis)), beta_(beta) {
        if (!basis_ || basis_->dim() != weights_.size()) {
            throw DimensionMismatch("StateWeights: weights/basis dimension mismatch");
        }
        for (Index i = 0; i < weights_.size(); ++i) {
            const Real w = weights_(i);
            if (!(w >= Real(-tol::weights) && w <= Real(1 + tol::weights))) {
                throw InvalidState("StateWeights: weight outside [0,1]");
            }
        }
        if (!(std::abs(weights_.sum() - Real(1)) <= Real(tol::weights))) {
            throw InvalidState("StateWeights: weights do not sum to 1");
        }
    }

    Index dim() const noexcept { return weights_.size(); }
    const RVector<Real>& weights() const noexcept { return weights_; }
    const Basis& basis() const noexcept { return *basis_; }
    const std::shared_ptr<const Basis>& basis_ptr() const noexcept { return basis_; }
    // Set when produced by thermal_weights.
    std::optional<Real> beta() const noexcept { return beta_; }

private:
    RVector<Real> weights_;
    std::shared_ptr<const Basis> basis_;
    std::optional<Real> beta_;
};

template <typename Real>
StateWeights<Real> thermal_weights(std::shared_ptr<const SpectralDecomposition<Real>> spec, Real beta) {
    if (!spec) {
        throw Error("thermal_weights: null spectrum");
    }
    if (!(beta >= 0) || !std::isfinite(double(beta))) {
        throw Error("thermal_weights: beta must be finite and >= 0");
    }
    const auto& e = spec->eigenvalues();
    // Ground energy shifted out so the largest exponent is zero.
    const Real e0 = e.minCoeff();
    RVector<Real> w(e.size());
    for (Index n = 0; n < e.size(); ++n) {
        w(n) = std::exp(-beta * (e(n) - e0));
    }
    w /= w.sum();
    return StateWeights<Real>(std::move(w), std::move(spec), beta);
}

template <typename Real>
StateWeights<Real> thermal_weights(const SpectralDecomposition<Real>& spec, Real beta) {
    return thermal_weights(std::make_shared<const SpectralDecomposition<Real>>(spec), beta);
}

template <typename Real>
StateWeights<Real> uniform_weights(std::shared_ptr<const SpectralDecomposition<Real>> spec) {
    const Index d = spec->dim();
    return StateWeights<Real>(RVector<Real>::Constant(d, Real(1) / Real(d)), std::move(spec), Real(0));
}

// Density matrix: Hermitian, trace one, positive semidefinite.
template <typename Real = double>
class DensityState {
public:
    using Matrix = CMatrix<Real>;

    explicit DensityState(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1) {
            throw DimensionMismatch("DensityState: matrix must be square with dim >= 1");
        }
        if (!(detail::hermiticity_residual(m_) <= Real(tol::hermitian))) {
            throw NonHermitianInput("DensityState: not Hermitian");
        }
        m_ = Real(0.5) * (m_ + m_.adjoint()).eval();
        if (!(std::abs(m_.trace() - Complex<Real>(1)) <= Real(tol::trace))) {
            throw InvalidState("DensityState: trace != 1");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
        if (!(solver.eigenvalues().minCoeff() >= Real(-tol::positivity))) {
            throw InvalidState("DensityState: negative eigenvalue");
        }
    }

    static DensityState from_weights(const StateWeights<Real>& w) {
        const auto& v = w.basis().eigenvectors();
        return DensityState(v * w.weights().template cast<Complex<Real>>().asDiagonal() * v.adjoint());
    }

    template <typename Derived>
    static DensityState pure(const Eigen::MatrixBase<Derived>& psi) {
        return DensityState(psi * psi.adjoint());
    }

    static DensityState maximally_mixed(Index dim) {
        return DensityState(Matrix::Identity(dim, dim) / Real(dim));
    }

    Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

// <X, Y>_rho = Tr(rho X^dag Y)
template <typename Real, typename DX, typename DY>
Complex<Real> inner_product(const DensityState<Real>& rho, const Eigen::MatrixBase<DX>& x,
                            const Eigen::MatrixBase<DY>& y) {
    const Index d = rho.dim();
    if (x.rows() != d || x.cols() != d || y.rows() != d || y.cols() != d) {
        throw DimensionMismatch("inner_product: dimension mismatch");
    }
    const CMatrix<Real> xy = x.adjoint() * y;
    return detail::trace_of_product(rho.matrix(), xy);
}

template <typename Real>
Complex<Real> inner_product(const DensityState<Real>& rho, const UnitaryOperator<Real>& x,
                            const UnitaryOperator<Real>& y) {
    return inner_product(rho, x.matrix(), y.matrix());
}

// F_rho(X, Y) = |<X, Y>_rho|
template <typename Real, typename DX, typename DY>
Real operator_fidelity(const DensityState<Real>& rho, const Eigen::MatrixBase<DX>& x,
                       const Eigen::MatrixBase<DY>& y) {
    return std::abs(inner_product(rho, x, y));
}

template <typename Real>
Real operator_fidelity(const DensityState<Real>& rho, const UnitaryOperator<Real>& x, const UnitaryOperator<Real>& y) {
    return std::abs(inner_product(rho, x, y));
}

// ||X||_rho; only a semi-norm when rho is rank deficient.
template <typename Real, typename DX>
Real rho_norm(const DensityState<Real>& rho, const Eigen::MatrixBase<DX>& x) {
    return std::sqrt(std::max(Real(0), std::real(inner_product(rho, x, x))));
}

// <Psi_rho| (X^dag (x) 1)(Y (x) 1) |Psi_rho> with |Psi_rho> = sum_i sqrt(p_i) |i>|i>.
// Independent route to inner_product, used as a test oracle.
template <typename Real, typename DX, typename DY>
Complex<Real> purify_check(const DensityState<Real>& rho, const Eigen::MatrixBase<DX>& x,
                           const Eigen::MatrixBase<DY>& y) {
    const Index d = rho.dim();
    if (x.rows() != d || x.cols() != d || y.rows() != d || y.cols() != d) {
        throw DimensionMismatch("purify_check: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(rho.matrix());
    const auto& p = solver.eigenvalues();
    const auto& basis = solver.eigenvectors();

    CVector<Real> psi = CVector<Real>::Zero(d * d);
    for (Index i = 0; i < d; ++i) {
        const CVector<Real> ii = Eigen::kroneckerProduct(basis.col(i), basis.col(i)).eval();
        psi += std::sqrt(std::max(Real(0), p(i))) * ii;
    }
    const CMatrix<Real> id = CMatrix<Real>::Identity(d, d);
    const CMatrix<Real> xm = x;
    const CMatrix<Real> ym = y;
    const CVector<Real> psi_x = Eigen::kroneckerProduct(xm, id) * psi;
    const CVector<Real> psi_y = Eigen::kroneckerProduct(ym, id) * psi;
    return psi_x.dot(psi_y);
}

} // namespace ofs
