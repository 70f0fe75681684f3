// ofs_engine.hpp - operator fidelity susceptibility for a parametrized
// Hamiltonian family U(lambda) = exp(-i t H(lambda)) and a state rho that
// commutes with H(lambda).
//
// Two spectral routes are provided: the F_t-kernel sum (chi_spectral) and the
// eigenvalue/eigenvector split built on the adiabatic generator A
// (chi_split). chi_finite_difference estimates the same quantity from raw
// fidelities and is the reference for both.
//
// All sums run over eigenpair indices (n, m); the superoperator [H, .] is
// never materialized.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>

#include "ofs/operator_space.hpp"

namespace ofs {

enum class Backend { spectral, finite_difference, tfim_analytic, tfim_thermo, oracle };

constexpr std::string_view to_string(Backend b) noexcept {
    switch (b) {
    case Backend::spectral: return "spectral";
    case Backend::finite_difference: return "finite_difference";
    case Backend::tfim_analytic: return "tfim_analytic";
    case Backend::tfim_thermo: return "tfim_thermo";
    case Backend::oracle: return "oracle";
    }
    return "unknown";
}

// One evaluation record. beta is NaN when the weights were not thermal.
struct OfsSample {
    double lambda{0};
    double beta{std::numeric_limits<double>::quiet_NaN()};
    double t{0};
    double chi1{0};
    double chi2{0};
    double chi_total{0};
    Backend backend{Backend::spectral};
};

namespace engine_tol {
// Gaps below this are treated as degenerate and use the analytic limit.
inline constexpr double degenerate_gap = 1e-8;
inline constexpr double kernel_zero = 1e-8;
// Relative residual allowed when checking that weights diagonalize H(lambda).
inline constexpr double eigenbasis = 1e-9;
inline constexpr double default_h_step = 1e-5;
inline constexpr double default_delta = 1e-3;
} // namespace engine_tol

// F_t(x) = sin(x t / 2) / (x / 2), with F_t(0) = t.
template <typename Real>
Real ft_kernel(Real x, Real t) {
    if (std::abs(x) < Real(engine_tol::kernel_zero)) {
        return t;
    }
    return std::sin(x * t / 2) / (x / 2);
}

// lambda -> H(lambda) together with its derivative H'(lambda). The derivative
// is either supplied analytically or taken as a central difference with
// step h.
template <typename Real = double>
class HamiltonianFamily {
public:
    using Operator = HermitianOperator<Real>;
    using Evaluator = std::function<Operator(Real)>;

    HamiltonianFamily(Index dim, Evaluator h, Real step = Real(engine_tol::default_h_step))
        : dim_(dim), h_(std::move(h)), step_(step) {
        if (!(step_ > 0)) {
            throw Error("HamiltonianFamily: finite-difference step must be > 0");
        }
    }

    HamiltonianFamily(Index dim, Evaluator h, Evaluator dh)
        : dim_(dim), h_(std::move(h)), dh_(std::move(dh)), step_(Real(engine_tol::default_h_step)) {}

    Index dim() const noexcept { return dim_; }
    Real step() const noexcept { return step_; }
    bool analytic_derivative() const noexcept { return static_cast<bool>(dh_); }

    Operator at(Real lambda) const { return checked(h_(lambda)); }

    Operator derivative(Real lambda) const {
        if (dh_) {
            return checked(dh_(lambda));
        }
        return central_difference(lambda);
    }

    Operator central_difference(Real lambda) const {
        const auto plus = at(lambda + step_);
        const auto minus = at(lambda - step_);
        return Operator((plus.matrix() - minus.matrix()) / (2 * step_));
    }

private:
    Operator checked(Operator op) const {
        if (op.dim() != dim_) {
            throw DimensionMismatch("HamiltonianFamily: evaluator returned wrong dimension");
        }
        return op;
    }

    Index dim_;
    Evaluator h_;
    Evaluator dh_;
    Real step_;
};

// A_nm = <n|H'|m> / (E_n - E_m) off the degenerate clusters, zero elsewhere.
template <typename Real = double>
class AdiabaticGenerator {
public:
    explicit AdiabaticGenerator(CMatrix<Real> a) : a_(std::move(a)) {
        if (!(detail::max_abs(a_ + a_.adjoint()) <= Real(tol::unitary))) {
            throw Error("AdiabaticGenerator: not anti-Hermitian");
        }
    }
    const CMatrix<Real>& matrix() const noexcept { return a_; }

private:
    CMatrix<Real> a_;
};

template <typename Real = double>
struct ChiSplit {
    Real chi1;
    Real chi2;
    AdiabaticGenerator<Real> generator;
};

namespace detail {

template <typename Real>
struct EigenFrame {
    const RVector<Real>& energies;
    const RVector<Real>& weights;
    CMatrix<Real> dh; // H' in the eigenbasis of H(lambda)
};

// Verifies that the weights' basis diagonalizes H(lambda) and returns H'
// expressed in that basis.
template <typename Real>
EigenFrame<Real> eigen_frame(const HamiltonianFamily<Real>& fam, Real lambda, const StateWeights<Real>& weights) {
    if (weights.dim() != fam.dim()) {
        throw DimensionMismatch("weights/family dimension mismatch");
    }
    const auto& basis = weights.basis();
    const CMatrix<Real> h = basis.to_eigenbasis(fam.at(lambda).matrix());
    const CMatrix<Real> diag = basis.eigenvalues().template cast<Complex<Real>>().asDiagonal();
    const Real scale = std::max(Real(1), max_abs(h));
    if (!(max_abs(h - diag) <= Real(engine_tol::eigenbasis) * scale)) {
        throw WeightsNotInEigenbasis("state weights are not expressed in the eigenbasis of H(lambda)");
    }
    return {basis.eigenvalues(), weights.weights(), basis.to_eigenbasis(fam.derivative(lambda).matrix())};
}

template <typename Real>
bool degenerate(Real e_n, Real e_m) {
    return std::abs(e_n - e_m) < Real(engine_tol::degenerate_gap);
}

template <typename Real>
void require_finite(Real v, const char* what) {
    if (!std::isfinite(double(v))) {
        throw DegenerateGap(std::string(what) + " is not finite");
    }
}

template <typename Real>
OfsSample make_sample(Real lambda, const StateWeights<Real>& w, Real t, Real chi1, Real chi2, Backend backend) {
    OfsSample s;
    s.lambda = double(lambda);
    s.beta = w.beta() ? double(*w.beta()) : std::numeric_limits<double>::quiet_NaN();
    s.t = double(t);
    s.chi1 = double(chi1);
    s.chi2 = double(chi2);
    s.chi_total = double(chi1 + chi2);
    s.backend = backend;
    return s;
}

} // namespace detail

// chi2 = sum_{n,m non-degenerate} rho_nn |M_nm|^2 F_t(E_n - E_m)^2
// chi1 = t^2 ( sum_n rho_nn sum_{m ~ n} |M_mn|^2 - |sum_n rho_nn M_nn|^2 )
// with M = H' in the eigenbasis and m ~ n meaning |E_n - E_m| < 1e-8.
// With rho_nn = 1/d this is the infinite-temperature susceptibility.
template <typename Real>
OfsSample chi_spectral(const HamiltonianFamily<Real>& fam, Real lambda, Real t, const StateWeights<Real>& weights) {
    const auto frame = detail::eigen_frame(fam, lambda, weights);
    const auto& e = frame.energies;
    const auto& w = frame.weights;
    const Index d = e.size();

    Real second_moment = 0;
    Real mean = 0;
    Real chi2 = 0;
    for (Index n = 0; n < d; ++n) {
        mean += w(n) * std::real(frame.dh(n, n));
        for (Index m = 0; m < d; ++m) {
            const Real m2 = std::norm(frame.dh(m, n));
            if (detail::degenerate(e(n), e(m))) {
                second_moment += w(n) * m2;
            } else {
                const Real f = ft_kernel(e(n) - e(m), t);
                chi2 += w(n) * m2 * f * f;
            }
        }
    }
    const Real chi1 = t * t * std::max(Real(0), second_moment - mean * mean);
    detail::require_finite(chi1, "chi1");
    detail::require_finite(chi2, "chi2");
    return detail::make_sample(lambda, weights, t, chi1, chi2, Backend::spectral);
}

template <typename Real>
OfsSample chi_spectral(const HamiltonianFamily<Real>& fam, Real lambda, Real t, Real beta) {
    auto spec = std::make_shared<const SpectralDecomposition<Real>>(spectral_decompose(fam.at(lambda)));
    return chi_spectral(fam, lambda, t, thermal_weights(std::move(spec), beta));
}

// chi1 = t^2 Var_rho(d_lambda H_d), chi2 = 2 sum_{m,n} rho_nn |A_mn|^2 (1 - cos[(E_n - E_m) t]).
template <typename Real>
ChiSplit<Real> chi_split(const HamiltonianFamily<Real>& fam, Real lambda, Real t, const StateWeights<Real>& weights) {
    const auto frame = detail::eigen_frame(fam, lambda, weights);
    const auto& e = frame.energies;
    const auto& w = frame.weights;
    const Index d = e.size();

    // d_lambda H_d: H' restricted to the degenerate clusters (just its
    // diagonal for a non-degenerate spectrum); A carries the rest.
    CMatrix<Real> dhd = CMatrix<Real>::Zero(d, d);
    CMatrix<Real> a = CMatrix<Real>::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            if (detail::degenerate(e(n), e(m))) {
                dhd(n, m) = frame.dh(n, m);
            } else {
                a(n, m) = frame.dh(n, m) / Complex<Real>(e(n) - e(m));
            }
        }
    }

    const CMatrix<Real> dhd2 = dhd.adjoint() * dhd;
    Real second_moment = 0;
    Real mean = 0;
    for (Index n = 0; n < d; ++n) {
        second_moment += w(n) * std::real(dhd2(n, n));
        mean += w(n) * std::real(dhd(n, n));
    }
    const Real chi1 = t * t * std::max(Real(0), second_moment - mean * mean);

    Real chi2 = 0;
    for (Index n = 0; n < d; ++n) {
        for (Index m = 0; m < d; ++m) {
            const Real half = (e(n) - e(m)) * t / 2;
            // 1 - cos(x) written as 2 sin^2(x/2) to avoid cancellation.
            const Real one_minus_cos = 2 * std::sin(half) * std::sin(half);
            chi2 += 2 * w(n) * std::norm(a(m, n)) * one_minus_cos;
        }
    }
    detail::require_finite(chi1, "chi1");
    detail::require_finite(chi2, "chi2");
    return {chi1, chi2, AdiabaticGenerator<Real>(std::move(a))};
}

// 2 [1 - F_rho(U(lambda - delta), U(lambda + delta))] / (2 delta)^2
template <typename Real>
Real chi_finite_difference(const HamiltonianFamily<Real>& fam, Real lambda, Real t, const StateWeights<Real>& weights,
                           Real delta = Real(engine_tol::default_delta)) {
    if (!(delta > 0)) {
        throw Error("chi_finite_difference: delta must be > 0");
    }
    if (weights.dim() != fam.dim()) {
        throw DimensionMismatch("chi_finite_difference: weights/family dimension mismatch");
    }
    const auto rho = DensityState<Real>::from_weights(weights);
    const auto u_minus = matrix_exponential(fam.at(lambda - delta), t);
    const auto u_plus = matrix_exponential(fam.at(lambda + delta), t);
    const Real f = operator_fidelity(rho, u_minus, u_plus);
    return 2 * (1 - f) / (4 * delta * delta);
}

// OFS of the one-parameter group t -> exp(-i t H) in the pure state phi:
// the energy variance <H^2> - <H>^2.
template <typename Real, typename Derived>
Real chi_time_group(const HermitianOperator<Real>& h, const Eigen::MatrixBase<Derived>& phi) {
    if (phi.size() != h.dim()) {
        throw DimensionMismatch("chi_time_group: state dimension mismatch");
    }
    const CVector<Real> hphi = h.matrix() * phi;
    const Real mean = std::real(phi.dot(hphi));
    const Real second = hphi.squaredNorm();
    return std::max(Real(0), second - mean * mean);
}

} // namespace ofs
