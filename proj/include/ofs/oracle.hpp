// oracle.hpp - brute-force references: the TFIM in the full 2^N spin basis,
// the four-dimensional fermionic (k, -k) blocks, and fidelities computed
// directly from dense matrices.

#pragma once

#include <functional>
#include <vector>

#include "ofs/ofs_engine.hpp"

namespace ofs {
class DephasingModel;
}

namespace ofs::oracle {

using Operator = HermitianOperator<double>;
using Matrix = CMatrix<double>;

inline constexpr int max_spins = 12;

// Periodic chain, J = 1. Spin l is bit l of the basis index; bit value 0 is
// s^z = +1. For N = 2 the periodic sum visits the single bond twice.
struct SpinChainSpec {
    int N{2};
    double lambda{0};

    Index dim() const noexcept { return Index(1) << N; }
    void validate() const;
};

Operator build_spin_tfim(const SpinChainSpec& spec);

// sum_l s^z_l, so that H(lambda) = -(bonds) - lambda * transverse_magnetization.
Operator transverse_magnetization(int N);

// prod_l s^z_l
Matrix parity_operator(int N);

// Two fermionic modes (d_k, d_-k) in the ordered Fock basis
// {|00>, |11>, |01>, |10>} (occupations n_k n_-k). d_k is the first
// Jordan-Wigner mode.
struct FermionModeBlock {
    int k{1};
    double ktilde{0};
    Operator H4 = Operator::zero(4);
    Matrix sx;
    Matrix sy;
    Matrix sz;
    Matrix n_k;
    Matrix n_mk;
    Matrix d_k;
    Matrix d_mk;
};

// Sum of the k and -k terms of the momentum-space Hamiltonian, N = 2M + 1.
FermionModeBlock build_fermion_block(int k, int N, double lambda);

// lambda -> H4(lambda) for one (k, -k) block; dH4/dlambda = 2 sz.
HamiltonianFamily<double> fermion_block_family(int k, int N);

// exp(-beta H4) / Tr, dense.
DensityState<double> fermion_block_thermal(int k, int N, double lambda, double beta);

// Tr[rho4 U4(lambda)^dag U4(lambda2)] with rho4 thermal at (lambda, beta).
std::complex<double> fermion_block_overlap(int k, int N, double lambda, double beta, double lambda2, double t);

// 2 [1 - F_rho(exp(-i t H(lambda - delta)), exp(-i t H(lambda + delta)))] / (2 delta)^2
// with rho thermal at (lambda, beta).
double oracle_chi(const std::function<Operator(double)>& builder, double lambda, double beta, double t,
                  double delta = 1e-3);

// |<psi0(lambda)| exp(i t H(lambda)) exp(-i t H(lambda2)) |psi0(lambda)>|^2
double loschmidt_echo(const SpinChainSpec& spec, double lambda2, double t);
std::vector<double> loschmidt_echo(const SpinChainSpec& spec, double lambda2, const std::vector<double>& times);

// |<psi0(lambda)|psi0(lambda2)>|
double ground_state_fidelity(const SpinChainSpec& spec, double lambda2);

// Reduced system state obtained by exponentiating the full system + bath
// Hamiltonian H_S (x) 1 + 1 (x) H_B + sum_n |n><n| (x) B_n and tracing out
// the bath. Ordering is system (x) bath.
DensityState<double> dephasing_full_evolution(const DephasingModel& model, double t);

} // namespace ofs::oracle
