// decoherence.hpp - pure-dephasing dynamics of a central system coupled to a
// bath through H_I = sum_n |n><n| (x) B_n.
//
// The reduced state is assembled from operator fidelities of the effective
// bath evolutions V_n(t) = exp[-i t (H_B + B_n)]:
//
//   rho_S(t)_nm = c_n c_m^* exp[-i (E_n - E_m) t] <V_m, V_n>_{rho_B}
//
// Evolution runs block by block over pointer states (K exponentials of
// bath-sized matrices instead of one system+bath exponential).

#pragma once

#include <utility>
#include <vector>

#include "ofs/operator_space.hpp"

namespace ofs {

class DephasingModel {
public:
    using Operator = HermitianOperator<double>;

    DephasingModel(RVector<double> system_energies, CVector<double> amplitudes, Operator bath_hamiltonian,
                   std::vector<Operator> couplings, DensityState<double> bath_state);

    Index system_dim() const noexcept { return energies_.size(); }
    Index bath_dim() const noexcept { return bath_h_.dim(); }

    const RVector<double>& system_energies() const noexcept { return energies_; }
    const CVector<double>& amplitudes() const noexcept { return amps_; }
    const Operator& bath_hamiltonian() const noexcept { return bath_h_; }
    const std::vector<Operator>& couplings() const noexcept { return couplings_; }
    const DensityState<double>& bath_state() const noexcept { return bath_state_; }

    // H_B + B_n
    Operator effective_hamiltonian(Index n) const;

private:
    RVector<double> energies_;
    CVector<double> amps_;
    Operator bath_h_;
    std::vector<Operator> couplings_;
    DensityState<double> bath_state_;
};

std::vector<UnitaryOperator<double>> effective_evolutions(const DephasingModel& model, double t);

DensityState<double> reduced_state(const DephasingModel& model, double t);

struct ReducedTrajectory {
    std::vector<double> times;
    std::vector<DensityState<double>> matrices;
    std::vector<std::pair<Index, Index>> pairs; // (n, m) with n < m
    // offdiag_magnitudes(i, p) = |rho_S(times[i])_{pairs[p]}|
    Eigen::MatrixXd offdiag_magnitudes;
};

// Precondition: time_grid non-decreasing.
ReducedTrajectory coherence_decay_curve(const DephasingModel& model, const std::vector<double>& time_grid);

// Qubit probe coupled to a periodic transverse-field Ising bath. The coupling
// shifts the bath field, B_n = -delta_n * sum_l s^z_l, so that
// H_B + B_n = H_tfim(lambda + delta_n); delta_0 = 0 and delta_1 = delta_lambda.
// The bath starts thermal at (lambda, beta).
struct IsingBathSpec {
    int N{8};
    double lambda{1.0};
    double beta{1.0};
    double delta_lambda{0.1};
    double c0{0.7071067811865476};
    double c1{0.7071067811865476};
    double e0{0.0};
    double e1{0.0};
};

DephasingModel ising_bath_qubit(const IsingBathSpec& spec);

} // namespace ofs
