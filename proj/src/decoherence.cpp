#include "ofs/decoherence.hpp"

#include <cmath>
#include <string>

#include "ofs/oracle.hpp"

namespace ofs {

DephasingModel::DephasingModel(RVector<double> system_energies, CVector<double> amplitudes, Operator bath_hamiltonian,
                               std::vector<Operator> couplings, DensityState<double> bath_state)
    : energies_(std::move(system_energies)),
      amps_(std::move(amplitudes)),
      bath_h_(std::move(bath_hamiltonian)),
      couplings_(std::move(couplings)),
      bath_state_(std::move(bath_state)) {
    if (energies_.size() < 2) {
        throw DimensionMismatch("DephasingModel: system_dim must be >= 2");
    }
    if (amps_.size() != energies_.size() || static_cast<Index>(couplings_.size()) != energies_.size()) {
        throw DimensionMismatch("DephasingModel: energies, amplitudes and couplings must have equal length");
    }
    if (!(std::abs(amps_.squaredNorm() - 1.0) <= 1e-12)) {
        throw InvalidState("DephasingModel: amplitudes are not normalized");
    }
    for (const auto& b : couplings_) {
        if (b.dim() != bath_h_.dim()) {
            throw DimensionMismatch("DephasingModel: coupling/bath dimension mismatch");
        }
    }
    if (bath_state_.dim() != bath_h_.dim()) {
        throw DimensionMismatch("DephasingModel: bath state dimension mismatch");
    }
}

DephasingModel::Operator DephasingModel::effective_hamiltonian(Index n) const {
    return bath_h_ + couplings_.at(static_cast<std::size_t>(n));
}

namespace {

std::vector<SpectralDecomposition<double>> effective_spectra(const DephasingModel& model) {
    std::vector<SpectralDecomposition<double>> out;
    out.reserve(static_cast<std::size_t>(model.system_dim()));
    for (Index n = 0; n < model.system_dim(); ++n) {
        out.push_back(spectral_decompose(model.effective_hamiltonian(n)));
    }
    return out;
}

DensityState<double> assemble(const DephasingModel& model, const std::vector<UnitaryOperator<double>>& v, double t) {
    const Index k = model.system_dim();
    const auto& c = model.amplitudes();
    const auto& e = model.system_energies();
    CMatrix<double> rho = CMatrix<double>::Zero(k, k);
    for (Index n = 0; n < k; ++n) {
        for (Index m = n; m < k; ++m) {
            const auto overlap = inner_product(model.bath_state(), v[m], v[n]);
            rho(n, m) = c(n) * std::conj(c(m)) * std::polar(1.0, -(e(n) - e(m)) * t) * overlap;
            rho(m, n) = std::conj(rho(n, m));
        }
    }
    return DensityState<double>(std::move(rho));
}

std::vector<UnitaryOperator<double>> evolve(const std::vector<SpectralDecomposition<double>>& spectra, double t) {
    std::vector<UnitaryOperator<double>> v;
    v.reserve(spectra.size());
    for (const auto& s : spectra) {
        v.push_back(matrix_exponential(s, t));
    }
    return v;
}

} // namespace

std::vector<UnitaryOperator<double>> effective_evolutions(const DephasingModel& model, double t) {
    if (!std::isfinite(t)) {
        throw Error("effective_evolutions: t must be finite");
    }
    return evolve(effective_spectra(model), t);
}

DensityState<double> reduced_state(const DephasingModel& model, double t) {
    return assemble(model, effective_evolutions(model, t), t);
}

ReducedTrajectory coherence_decay_curve(const DephasingModel& model, const std::vector<double>& time_grid) {
    for (std::size_t i = 1; i < time_grid.size(); ++i) {
        if (time_grid[i] < time_grid[i - 1]) {
            throw Error("coherence_decay_curve: time grid must be non-decreasing");
        }
    }
    const auto spectra = effective_spectra(model);
    ReducedTrajectory traj;
    traj.times = time_grid;
    for (Index n = 0; n < model.system_dim(); ++n) {
        for (Index m = n + 1; m < model.system_dim(); ++m) {
            traj.pairs.emplace_back(n, m);
        }
    }
    const Index k = model.system_dim();
    const auto& c = model.amplitudes();
    const auto& e = model.system_energies();
    const CMatrix<double>& rho_b = model.bath_state().matrix();

    // Tr(rho V_m^dag V_n) = sum_ab conj(x_a) G_ab y_b with x, y the eigenphases of V_m, V_n
    std::vector<CMatrix<double>> kernels(traj.pairs.size());
    for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
        const auto [n, m] = traj.pairs[p];
        const auto& pn = spectra[static_cast<std::size_t>(n)].eigenvectors();
        const auto& pm = spectra[static_cast<std::size_t>(m)].eigenvectors();
        const CMatrix<double> w = pm.adjoint() * pn;
        const CMatrix<double> r = pn.adjoint() * rho_b * pm;
        kernels[p] = w.cwiseProduct(r.transpose());
    }

    traj.offdiag_magnitudes.resize(static_cast<Index>(time_grid.size()), static_cast<Index>(traj.pairs.size()));
    traj.matrices.reserve(time_grid.size());
    std::vector<CVector<double>> phases(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < time_grid.size(); ++i) {
        const double t = time_grid[i];
        for (Index n = 0; n < k; ++n) {
            const auto& ev = spectra[static_cast<std::size_t>(n)].eigenvalues();
            auto& ph = phases[static_cast<std::size_t>(n)];
            ph.resize(ev.size());
            for (Index a = 0; a < ev.size(); ++a) {
                ph(a) = std::polar(1.0, -ev(a) * t);
            }
        }
        CMatrix<double> rho = CMatrix<double>::Zero(k, k);
        for (Index n = 0; n < k; ++n) {
            rho(n, n) = std::norm(c(n)) * rho_b.trace();
        }
        for (std::size_t p = 0; p < traj.pairs.size(); ++p) {
            const auto [n, m] = traj.pairs[p];
            const std::complex<double> overlap =
                phases[static_cast<std::size_t>(m)].dot(kernels[p] * phases[static_cast<std::size_t>(n)]);
            rho(n, m) = c(n) * std::conj(c(m)) * std::polar(1.0, -(e(n) - e(m)) * t) * overlap;
            rho(m, n) = std::conj(rho(n, m));
            traj.offdiag_magnitudes(static_cast<Index>(i), static_cast<Index>(p)) = std::abs(rho(n, m));
        }
        traj.matrices.emplace_back(std::move(rho));
    }
    return traj;
}

DephasingModel ising_bath_qubit(const IsingBathSpec& spec) {
    const auto h_b = oracle::build_spin_tfim({spec.N, spec.lambda});
    const auto field = oracle::transverse_magnetization(spec.N);
    const auto bath_spec = spectral_decompose(h_b);
    auto rho_b = DensityState<double>::from_weights(thermal_weights(bath_spec, spec.beta));

    std::vector<HermitianOperator<double>> couplings{HermitianOperator<double>::zero(h_b.dim()),
                                                     (-spec.delta_lambda) * field};
    RVector<double> energies(2);
    energies << spec.e0, spec.e1;
    CVector<double> amps(2);
    amps << spec.c0, spec.c1;
    return DephasingModel(std::move(energies), std::move(amps), h_b, std::move(couplings), std::move(rho_b));
}

} // namespace ofs
