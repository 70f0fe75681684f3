#include <gtest/gtest.h>

#include <cmath>

#include "ofs/ofs_engine.hpp"
#include "ofs/random.hpp"

using namespace ofs;
using Mat = CMatrix<double>;

namespace {

Mat pauli_x() {
    Mat m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Mat pauli_z() {
    Mat m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// sigma_x + lambda sigma_z
HamiltonianFamily<double> qubit_family() {
    return HamiltonianFamily<double>(
        2, [](double l) { return HermitianOperator<double>(pauli_x() + l * pauli_z()); },
        [](double) { return HermitianOperator<double>(pauli_z()); });
}

StateWeights<double> weights_at(const HamiltonianFamily<double>& fam, double lambda, double beta) {
    return thermal_weights(std::make_shared<const SpectralDecomposition<double>>(spectral_decompose(fam.at(lambda))),
                           beta);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(FtKernel, Values) {
    EXPECT_EQ(ft_kernel(0.0, 2.5), 2.5);
    EXPECT_EQ(ft_kernel(1e-9, 2.5), 2.5);
    EXPECT_NEAR(ft_kernel(2.0, 0.9), 0.7833269096274834, 1e-15);
}

TEST(FtKernel, ConcentratesAtZero) {
    // t^-1 F_t^2 grows like t at zero and decays like 1/t elsewhere
    for (double t : {10.0, 100.0, 1000.0}) {
        EXPECT_NEAR(ft_kernel(0.0, t) * ft_kernel(0.0, t) / t, t, 1e-12 * t);
        for (double x : {0.1, 0.7, 3.0}) {
            EXPECT_LE(ft_kernel(x, t) * ft_kernel(x, t) / t, 4.0 / (x * x * t) + 1e-15);
        }
    }
}

TEST(HamiltonianFamily, AnalyticDerivativeMatchesDifference) {
    // quadratic family: the central difference is exact up to round-off
    random::Engine rng(1);
    const auto fam = random::family(5, rng);
    for (double h : {1e-2, 5e-3, 1e-4}) {
        const HamiltonianFamily<double> fd(
            5, [&fam](double l) { return fam.at(l); }, h);
        EXPECT_LT(detail::max_abs(fd.derivative(0.4).matrix() - fam.derivative(0.4).matrix()), 1e-10);
    }
    const HamiltonianFamily<double> curved(
        2, [](double l) { return HermitianOperator<double>(std::sin(l) * pauli_x()); }, 1e-3);
    EXPECT_NEAR(std::real(curved.derivative(0.4).matrix()(0, 1)), std::cos(0.4), 1e-6);
    EXPECT_THROW(HamiltonianFamily<double>(2, [](double) { return HermitianOperator<double>::zero(2); }, 0.0),
                 Error);
}

TEST(ChiSpectral, ZeroDerivative) {
    const HamiltonianFamily<double> fam(
        2, [](double) { return HermitianOperator<double>(pauli_x()); },
        [](double) { return HermitianOperator<double>::zero(2); });
    const auto s = chi_spectral(fam, 0.0, 1.3, weights_at(fam, 0.0, 1.0));
    EXPECT_EQ(s.chi1, 0.0);
    EXPECT_EQ(s.chi2, 0.0);
    // 2(1 - F)/delta^2 with F = 1 up to rounding
    EXPECT_NEAR(chi_finite_difference(fam, 0.0, 1.3, weights_at(fam, 0.0, 1.0)), 0.0, 1e-9);
}

TEST(ChiSpectral, QubitExample) {
    const auto fam = qubit_family();
    const auto w = weights_at(fam, 0.0, 0.0);
    const auto s = chi_spectral(fam, 0.0, 0.9, w);
    EXPECT_NEAR(s.chi1, 0.0, 1e-15);
    // value frozen from the finite-difference oracle below
    EXPECT_NEAR(s.chi2, 0.6136010473465435, 1e-12);
    EXPECT_NEAR(s.chi_total, s.chi1 + s.chi2, 1e-15);
    EXPECT_EQ(s.backend, Backend::spectral);

    const double fd = chi_finite_difference(fam, 0.0, 0.9, w, 1e-3);
    EXPECT_LT(rel(fd, s.chi_total), 1e-5);
    const double fd2 = chi_finite_difference(fam, 0.0, 0.9, w, 5e-4);
    const double ratio = (fd - s.chi_total) / (fd2 - s.chi_total);
    EXPECT_GE(ratio, 3.5);
    EXPECT_LE(ratio, 4.5);

    const auto split = chi_split(fam, 0.0, 0.9, w);
    EXPECT_NEAR(split.chi1, 0.0, 1e-15);
    EXPECT_NEAR(split.chi2, 0.6136010473465435, 1e-12);
}

TEST(ChiSpectral, IdentityDerivativeCancels) {
    random::Engine rng(2);
    const auto h0 = random::hermitian(4, rng);
    const HamiltonianFamily<double> fam(
        4, [h0](double l) { return HermitianOperator<double>(h0.matrix() + l * 2.5 * Mat::Identity(4, 4)); },
        [](double) { return HermitianOperator<double>(2.5 * Mat::Identity(4, 4)); });
    const auto s = chi_spectral(fam, 0.2, 1.7, weights_at(fam, 0.2, 0.0));
    EXPECT_NEAR(s.chi_total, 0.0, 1e-12);
}

TEST(ChiSpectral, RejectsWeightsInForeignBasis) {
    const auto fam = qubit_family();
    const auto w = weights_at(fam, 0.0, 1.0);
    EXPECT_THROW(chi_spectral(fam, 0.7, 1.0, w), WeightsNotInEigenbasis);
}

TEST(ChiSpectral, HandBuilt3x3UniformWeights) {
    // H = diag(0, 1, 3), H' real symmetric; uniform weights reduce to the
    // 1/d-weighted kernel sum, written out term by term here.
    Mat h = Mat::Zero(3, 3);
    h.diagonal() << 0.0, 1.0, 3.0;
    Mat v(3, 3);
    v << 0.5, 0.2, -0.4, 0.2, -1.0, 0.3, -0.4, 0.3, 0.7;
    const HamiltonianFamily<double> fam(
        3, [h, v](double l) { return HermitianOperator<double>(h + l * v); },
        [v](double) { return HermitianOperator<double>(v); });
    const double t = 1.4;
    const double e[3] = {0.0, 1.0, 3.0};
    double chi2 = 0;
    for (int n = 0; n < 3; ++n) {
        for (int m = 0; m < 3; ++m) {
            if (n != m) {
                const double f = ft_kernel(e[n] - e[m], t);
                chi2 += std::norm(v(n, m)) * f * f / 3.0;
            }
        }
    }
    const double mean = (0.5 - 1.0 + 0.7) / 3.0;
    const double chi1 = t * t * ((0.25 + 1.0 + 0.49) / 3.0 - mean * mean);
    const auto s = chi_spectral(fam, 0.0, t, weights_at(fam, 0.0, 0.0));
    EXPECT_NEAR(s.chi1, chi1, 1e-12);
    EXPECT_NEAR(s.chi2, chi2, 1e-12);
}

TEST(ChiSplit, PureStateHasNoFluctuationTerm) {
    random::Engine rng(9);
    const auto fam = random::family(6, rng);
    const auto w = weights_at(fam, 0.1, 1e6);
    const auto split = chi_split(fam, 0.1, 2.0, w);
    EXPECT_NEAR(split.chi1, 0.0, 1e-12);
    EXPECT_LT(detail::max_abs(split.generator.matrix() + split.generator.matrix().adjoint()), 1e-10);
}

TEST(ChiSplit, CommutingGeneratorGivesNoSecondTerm) {
    random::Engine rng(10);
    const auto q = matrix_exponential(random::hermitian(4, rng), 1.0);
    Mat d0 = Mat::Zero(4, 4);
    d0.diagonal() << -1.0, 0.2, 0.9, 2.0;
    Mat d1 = Mat::Zero(4, 4);
    d1.diagonal() << 0.3, -0.5, 1.1, 0.4;
    const Mat qm = q.matrix();
    const HamiltonianFamily<double> fam(
        4, [=](double l) { return HermitianOperator<double>(qm * (d0 + l * d1) * qm.adjoint()); },
        [=](double) { return HermitianOperator<double>(qm * d1 * qm.adjoint()); });
    const auto w = weights_at(fam, 0.0, 1.0);
    const auto split = chi_split(fam, 0.0, 3.0, w);
    EXPECT_NEAR(split.chi2, 0.0, 1e-12);
    EXPECT_GT(split.chi1, 0.0);
}

TEST(ChiSplit, IdentityOnRandomFamilies) {
    random::Engine rng(100);
    for (int f = 0; f < 50; ++f) {
        const Index dim = 2 + static_cast<Index>(rng() % 15);
        const auto fam = random::family(dim, rng);
        for (double beta : {0.0, 1.0, 10.0}) {
            const auto w = weights_at(fam, 0.0, beta);
            for (double t : {0.3, 1.0, 5.0}) {
                const auto total = chi_spectral(fam, 0.0, t, w);
                const auto split = chi_split(fam, 0.0, t, w);
                EXPECT_LE(rel(split.chi1 + split.chi2, total.chi_total), 1e-9);
                EXPECT_LE(rel(split.chi1, total.chi1 + 1e-300), 1e-9);
                EXPECT_LE(rel(split.chi2, total.chi2), 1e-9);
            }
        }
    }
}

TEST(ChiSpectral, ChiOneScalesAsTSquaredAndChiTwoIsBounded) {
    random::Engine rng(13);
    const auto fam = random::family(7, rng);
    const auto w = weights_at(fam, 0.0, 1.0);
    const auto split = chi_split(fam, 0.0, 1.0, w);
    const auto a = chi_spectral(fam, 0.0, 1.3, w);
    const auto b = chi_spectral(fam, 0.0, 2.6, w);
    EXPECT_LE(rel(b.chi1, 4.0 * a.chi1), 1e-12);

    const auto& g = split.generator.matrix();
    const auto& rho = w.weights();
    double bound = 0;
    for (Index n = 0; n < 7; ++n) {
        for (Index m = 0; m < 7; ++m) {
            bound += 4.0 * rho(n) * std::norm(g(m, n));
        }
    }
    for (double t : {0.5, 3.0, 17.0, 250.0}) {
        EXPECT_LE(chi_spectral(fam, 0.0, t, w).chi2, bound + 1e-12);
    }
}

TEST(ChiSpectral, GaugeInvariantUnderDegenerateRotation) {
    // H has a doubly degenerate level; rotating its eigenvectors must not
    // change either part.
    random::Engine rng(14);
    const auto v = random::hermitian(4, rng);
    Mat d = Mat::Zero(4, 4);
    d.diagonal() << -1.0, 0.5, 0.5, 2.0;
    const HamiltonianFamily<double> fam(
        4, [=](double l) { return HermitianOperator<double>(d + l * v.matrix()); },
        [=](double) { return v; });
    const auto spec = spectral_decompose(fam.at(0.0));
    Mat vecs = spec.eigenvectors();
    const auto rot = matrix_exponential(HermitianOperator<double>(random::hermitian(2, rng)), 0.9);
    vecs.middleCols(1, 2) = (vecs.middleCols(1, 2) * rot.matrix()).eval();
    const auto spec2 = std::make_shared<const SpectralDecomposition<double>>(spec.eigenvalues(), vecs);
    const auto spec1 = std::make_shared<const SpectralDecomposition<double>>(spec);
    for (double beta : {0.0, 1.0}) {
        const auto a = chi_spectral(fam, 0.0, 1.7, thermal_weights(spec1, beta));
        const auto b = chi_spectral(fam, 0.0, 1.7, thermal_weights(spec2, beta));
        EXPECT_NEAR(a.chi1, b.chi1, 1e-9);
        EXPECT_NEAR(a.chi2, b.chi2, 1e-9);
    }
}

TEST(ChiSpectral, RandomEightByEightAgainstFiniteDifference) {
    random::Engine rng(15);
    const auto fam = random::family(8, rng);
    const auto w = weights_at(fam, 0.0, 1.0);
    const double fd = chi_finite_difference(fam, 0.0, 1.0, w, 1e-3);
    EXPECT_LT(rel(fd, chi_spectral(fam, 0.0, 1.0, w).chi_total), 1e-5);
}

TEST(ChiSpectral, PureStateLoschmidtReduction) {
    random::Engine rng(16);
    const auto fam = random::family(6, rng);
    const auto spec = spectral_decompose(fam.at(0.0));
    const CVector<double> psi0 = spec.eigenvectors().col(0);
    const auto rho = DensityState<double>::pure(psi0);
    const auto u = matrix_exponential(fam.at(0.0), 1.5);
    const auto w = matrix_exponential(fam.at(0.01), 1.5);
    const double f = operator_fidelity(rho, u, w);
    const double le = std::norm(psi0.dot(u.matrix().adjoint() * w.matrix() * psi0));
    EXPECT_NEAR(1.0 - f * f, 1.0 - le, 1e-12);
}

TEST(ChiTimeGroup, Examples) {
    Mat z = Mat::Zero(2, 2);
    z.diagonal() << 1.0, -1.0;
    const HermitianOperator<double> sz(z);
    CVector<double> plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(chi_time_group(sz, plus), 1.0, 1e-15);
    CVector<double> up(2);
    up << 1.0, 0.0;
    EXPECT_NEAR(chi_time_group(sz, up), 0.0, 1e-15);

    // the OFS in t, estimated from the group t -> exp(-i t H) itself
    random::Engine rng(17);
    const auto h = random::hermitian(5, rng);
    const CVector<double> phi = random::state(5, rng);
    const HamiltonianFamily<double> group(
        5, [h](double s) { return HermitianOperator<double>(s * h.matrix()); },
        [h](double) { return h; });
    const auto rho = DensityState<double>::pure(phi);
    const double delta = 1e-3;
    const auto um = matrix_exponential(group.at(1.0 - delta), 1.0);
    const auto up2 = matrix_exponential(group.at(1.0 + delta), 1.0);
    const double fd = 2.0 * (1.0 - operator_fidelity(rho, um, up2)) / (4.0 * delta * delta);
    EXPECT_NEAR(fd, chi_time_group(h, phi), 1e-5);
}

TEST(LongDouble, EngineInstantiates) {
    using LD = long double;
    CMatrix<LD> x(2, 2), z(2, 2);
    x << LD(0), LD(1), LD(1), LD(0);
    z << LD(1), LD(0), LD(0), LD(-1);
    const HamiltonianFamily<LD> fam(
        2, [=](LD l) { return HermitianOperator<LD>(x + l * z); }, [=](LD) { return HermitianOperator<LD>(z); });
    const auto spec = std::make_shared<const SpectralDecomposition<LD>>(spectral_decompose(fam.at(LD(0))));
    const auto s = chi_spectral(fam, LD(0), LD(0.9), thermal_weights(spec, LD(0)));
    EXPECT_NEAR(s.chi2, 0.6136010473465435, 1e-15);
}
