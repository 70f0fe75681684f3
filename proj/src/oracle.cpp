#include "ofs/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ofs/decoherence.hpp"

namespace ofs::oracle {

namespace {

const std::complex<double> I{0.0, 1.0};

Matrix fock_permutation() {
    // natural index 2 n_k + n_-k  ->  ordered basis {|00>, |11>, |01>, |10>}
    Matrix p = Matrix::Zero(4, 4);
    p(0, 0) = 1.0; // |00>
    p(1, 3) = 1.0; // |11>
    p(2, 1) = 1.0; // |01>
    p(3, 2) = 1.0; // |10>
    return p;
}

} // namespace

void SpinChainSpec::validate() const {
    if (N < 2) {
        throw Error("SpinChainSpec: N must be >= 2");
    }
    if (N > max_spins) {
        throw DimensionTooLarge("SpinChainSpec: N = " + std::to_string(N) + " exceeds " +
                                std::to_string(max_spins) + " spins");
    }
}

Operator build_spin_tfim(const SpinChainSpec& spec) {
    spec.validate();
    const Index dim = spec.dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (Index s = 0; s < dim; ++s) {
        double field = 0;
        for (int l = 0; l < spec.N; ++l) {
            field += ((s >> l) & 1) ? -1.0 : 1.0;
            const int r = (l + 1) % spec.N;
            const Index flipped = s ^ (Index(1) << l) ^ (Index(1) << r);
            h(flipped, s) -= 1.0;
        }
        h(s, s) -= spec.lambda * field;
    }
    return Operator(std::move(h));
}

Operator transverse_magnetization(int N) {
    SpinChainSpec{N, 0.0}.validate();
    const Index dim = Index(1) << N;
    Matrix m = Matrix::Zero(dim, dim);
    for (Index s = 0; s < dim; ++s) {
        double field = 0;
        for (int l = 0; l < N; ++l) {
            field += ((s >> l) & 1) ? -1.0 : 1.0;
        }
        m(s, s) = field;
    }
    return Operator(std::move(m));
}

Matrix parity_operator(int N) {
    SpinChainSpec{N, 0.0}.validate();
    const Index dim = Index(1) << N;
    Matrix p = Matrix::Zero(dim, dim);
    for (Index s = 0; s < dim; ++s) {
        int ones = 0;
        for (int l = 0; l < N; ++l) {
            ones += (s >> l) & 1;
        }
        p(s, s) = (ones % 2) ? -1.0 : 1.0;
    }
    return p;
}

FermionModeBlock build_fermion_block(int k, int N, double lambda) {
    if (N < 3 || N % 2 == 0) {
        throw Error("build_fermion_block: N must be odd and >= 3");
    }
    const int M = (N - 1) / 2;
    if (k < 1 || k > M) {
        throw Error("build_fermion_block: k must lie in 1..M");
    }

    // Jordan-Wigner on two modes, natural index 2 n_a + n_b.
    Eigen::Matrix2cd lower;
    lower << 0.0, 1.0, 0.0, 0.0; // |0><1|
    Eigen::Matrix2cd string;
    string << 1.0, 0.0, 0.0, -1.0; // (-1)^n
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Matrix a_nat = Eigen::kroneckerProduct(lower, id).eval();
    const Matrix b_nat = Eigen::kroneckerProduct(string, lower).eval();

    const Matrix p = fock_permutation();
    const Matrix da = p * a_nat * p.adjoint();
    const Matrix db = p * b_nat * p.adjoint();
    const Matrix one = Matrix::Identity(4, 4);

    // -[cos q - lambda](d_q^+ d_q + d_-q^+ d_-q - 1) + i sin q (d_q^+ d_-q^+ - d_-q d_q)
    auto term = [&](double q, const Matrix& dq, const Matrix& dmq) -> Matrix {
        const Matrix number = dq.adjoint() * dq + dmq.adjoint() * dmq - one;
        const Matrix pairing = dq.adjoint() * dmq.adjoint() - dmq * dq;
        return -(std::cos(q) - lambda) * number + I * std::sin(q) * pairing;
    };
    const double kt = 2.0 * std::numbers::pi * k / N;

    FermionModeBlock block;
    block.k = k;
    block.ktilde = kt;
    block.H4 = Operator(term(kt, da, db) + term(-kt, db, da));
    block.d_k = da;
    block.d_mk = db;
    block.n_k = da.adjoint() * da;
    block.n_mk = db.adjoint() * db;
    block.sx = da.adjoint() * db.adjoint() + db * da;
    block.sy = -I * (da.adjoint() * db.adjoint() - db * da);
    block.sz = block.n_k + block.n_mk - one;
    return block;
}

HamiltonianFamily<double> fermion_block_family(int k, int N) {
    const Operator dh(2.0 * build_fermion_block(k, N, 0.0).sz);
    return HamiltonianFamily<double>(
        4, [k, N](double l) { return build_fermion_block(k, N, l).H4; }, [dh](double) { return dh; });
}

DensityState<double> fermion_block_thermal(int k, int N, double lambda, double beta) {
    const auto spec = spectral_decompose(build_fermion_block(k, N, lambda).H4);
    return DensityState<double>::from_weights(thermal_weights(spec, beta));
}

std::complex<double> fermion_block_overlap(int k, int N, double lambda, double beta, double lambda2, double t) {
    const auto rho = fermion_block_thermal(k, N, lambda, beta);
    const auto u1 = matrix_exponential(build_fermion_block(k, N, lambda).H4, t);
    const auto u2 = matrix_exponential(build_fermion_block(k, N, lambda2).H4, t);
    return inner_product(rho, u1, u2);
}

double oracle_chi(const std::function<Operator(double)>& builder, double lambda, double beta, double t,
                  double delta) {
    const auto spec = spectral_decompose(builder(lambda));
    const auto rho = DensityState<double>::from_weights(thermal_weights(spec, beta));
    const auto u_minus = matrix_exponential(builder(lambda - delta), t);
    const auto u_plus = matrix_exponential(builder(lambda + delta), t);
    const double f = operator_fidelity(rho, u_minus, u_plus);
    return 2.0 * (1.0 - f) / (4.0 * delta * delta);
}

namespace {

CVector<double> ground_state(const SpectralDecomposition<double>& spec) {
    const auto& e = spec.eigenvalues();
    if (e.size() > 1 && e(1) - e(0) < 1e-10) {
        throw DegenerateGroundState("ground state gap " + std::to_string(e(1) - e(0)) + " below 1e-10");
    }
    return spec.eigenvectors().col(0);
}

} // namespace

std::vector<double> loschmidt_echo(const SpinChainSpec& spec, double lambda2, const std::vector<double>& times) {
    const CVector<double> psi0 = ground_state(spectral_decompose(build_spin_tfim(spec)));
    const auto spec2 = spectral_decompose(build_spin_tfim({spec.N, lambda2}));
    // psi0 is an eigenvector of H(lambda), so exp(i t H(lambda)) only adds a phase.
    const CVector<double> c = spec2.eigenvectors().adjoint() * psi0;
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        std::complex<double> amp = 0;
        for (Index n = 0; n < c.size(); ++n) {
            amp += std::norm(c(n)) * std::polar(1.0, -t * spec2.eigenvalues()(n));
        }
        out.push_back(std::norm(amp));
    }
    return out;
}

double loschmidt_echo(const SpinChainSpec& spec, double lambda2, double t) {
    return loschmidt_echo(spec, lambda2, std::vector<double>{t}).front();
}

double ground_state_fidelity(const SpinChainSpec& spec, double lambda2) {
    const CVector<double> a = ground_state(spectral_decompose(build_spin_tfim(spec)));
    const CVector<double> b = ground_state(spectral_decompose(build_spin_tfim({spec.N, lambda2})));
    return std::abs(a.dot(b));
}

DensityState<double> dephasing_full_evolution(const DephasingModel& model, double t) {
    const Index ks = model.system_dim();
    const Index kb = model.bath_dim();
    const Index dim = ks * kb;

    Matrix h = Matrix::Zero(dim, dim);
    const Matrix bath_id = Matrix::Identity(kb, kb);
    for (Index n = 0; n < ks; ++n) {
        Matrix proj = Matrix::Zero(ks, ks);
        proj(n, n) = 1.0;
        h += Eigen::kroneckerProduct(proj, (model.system_energies()(n) * bath_id +
                                            model.bath_hamiltonian().matrix() + model.couplings()[n].matrix())
                                               .eval())
                 .eval();
    }
    const auto u = matrix_exponential(Operator(std::move(h)), t);

    const CVector<double>& c = model.amplitudes();
    const Matrix psi = c * c.adjoint();
    const Matrix rho0 = Eigen::kroneckerProduct(psi, model.bath_state().matrix()).eval();
    const Matrix rho_t = u.matrix() * rho0 * u.matrix().adjoint();

    Matrix reduced = Matrix::Zero(ks, ks);
    for (Index n = 0; n < ks; ++n) {
        for (Index m = 0; m < ks; ++m) {
            reduced(n, m) = rho_t.block(n * kb, m * kb, kb, kb).trace();
        }
    }
    return DensityState<double>(std::move(reduced));
}

} // namespace ofs::oracle
