// tfim.hpp - closed-form operator fidelity susceptibility of the periodic
// transverse-field Ising chain H = -sum_l (s^x_l s^x_{l+1} + lambda s^z_l),
// N = 2M + 1 sites, J = 1.
//
// After the Jordan-Wigner and Fourier maps the chain splits into the k = 0
// mode (a single two-level system with H_0 = (lambda - 1) s^z) and M pairs
// (k, -k), each living in a four-dimensional Fock space where the Hamiltonian
// is Omega_k times a unit pseudo-spin along an axis tilted by theta_k in the
// y-z plane, and zero on the two singly occupied states.
//
// Finite-N results are per chain. Thermodynamic-limit results are per site.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "ofs/ofs_engine.hpp"
#include "ofs/quadrature.hpp"

namespace ofs::tfim {

struct TfimConfig {
    int M{1};
    double lambda{0};
    double beta{0};

    int sites() const noexcept { return 2 * M + 1; }
    void validate() const;
};

// k = -1 marks a mode evaluated at a continuous momentum.
struct ModeParams {
    int k{-1};
    double ktilde{0};
    double A{0};     // lambda - cos(ktilde)
    double B{0};     // sin(ktilde)
    double omega{0}; // -2 sqrt(A^2 + B^2)
    double theta{0}; // sin(theta) = 2B/omega, cos(theta) = 2A/omega
    double Zk{0};    // 2 [1 + cosh(beta omega)]
};

ModeParams mode_params(const TfimConfig& cfg, int k);
ModeParams mode_params_at(double lambda, double beta, double ktilde);

// d theta_k / d lambda = -2 sin(theta_k) / Omega_k
double theta_derivative(const ModeParams& p);

// 1 / (1 + cosh x) and cosh x / (1 + cosh x), finite for every real x.
double inv_one_plus_cosh(double x);
double cosh_ratio(double x);

double chi1_mode(const ModeParams& p, double beta, double t);
double chi2_mode(const ModeParams& p, double beta, double t);

struct ChiParts {
    double chi1{0};
    double chi2{0};
};

ChiParts chi_zero_mode(double lambda, double beta, double t);

// Per-mode contributions: entry 0 is the k = 0 mode, entry k the (k, -k) pair.
std::vector<OfsSample> mode_contributions(const TfimConfig& cfg, double t);

OfsSample chi_finite_n(const TfimConfig& cfg, double t);

// Long-time average of chi2 (the average of chi1 diverges as t^2 and is
// never formed).
double chi2_time_average(const TfimConfig& cfg);

struct ThermoQuadrature {
    int points{20001};
    QuadratureRule rule{QuadratureRule::trapezoid};
};

struct ThermoResult {
    OfsSample sample;
    double residual{0}; // relative change when the grid is refined
    bool converged{true};
    std::string flags;
};

struct TimeAverageResult {
    double value{0};
    double residual{0};
    bool converged{true};
    std::string flags;
};

// Relative change allowed when the quadrature grid is refined.
inline constexpr double thermo_tolerance = 1e-8;

// Per-site chi1, chi2 in the thermodynamic limit. Throws
// QuadratureNonConverged when refining changes the result by more than
// thermo_tolerance, except at lambda = 1 where the residual is reported.
ThermoResult chi_thermo_limit(double lambda, double beta, double t, const ThermoQuadrature& q = {});

// Per-site time-averaged chi2 in the thermodynamic limit. Divergent at
// lambda = 1, where the singular k = 0 node is dropped and the result is
// flagged instead of thrown.
TimeAverageResult chi2_time_average_thermo(double lambda, double beta, const ThermoQuadrature& q = {});

// Pseudo-spin matrices in the ordered pair basis (|11>, |00>).
Eigen::Matrix2cd pseudo_spin_axis(double theta);

// exp(-i t Omega_k s_n(theta_k)) on the pair subspace.
Eigen::Matrix2cd mode_rotation(const ModeParams& p, double t);

// Tr_k[rho_k U_k(lambda)^dag U_k(lambda2)], rho_k thermal at (lambda, beta).
std::complex<double> zero_mode_overlap(const TfimConfig& cfg, double lambda2, double t);
std::complex<double> mode_overlap(const TfimConfig& cfg, int k, double lambda2, double t);

// F_rho(V(lambda), V(lambda2)) with rho thermal at (lambda, beta), as a
// product of per-mode overlaps.
double factorized_fidelity(const TfimConfig& cfg, double lambda2, double t);

} // namespace ofs::tfim
