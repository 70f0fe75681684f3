// random.hpp - seeded random operators and families for the self-checks.

#pragma once

#include <cstdint>
#include <random>

#include "ofs/ofs_engine.hpp"

namespace ofs::random {

using Engine = std::mt19937_64;

inline CMatrix<double> matrix(Index rows, Index cols, Engine& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix<double> a(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            a(i, j) = {g(rng), g(rng)};
        }
    }
    return a;
}

inline CMatrix<double> matrix(Index dim, Engine& rng) { return matrix(dim, dim, rng); }

// GUE-like sample scaled so the spectrum stays O(1) for every dim.
inline HermitianOperator<double> hermitian(Index dim, Engine& rng, double scale = 1.0) {
    const CMatrix<double> a = matrix(dim, rng);
    const CMatrix<double> h = (a + a.adjoint()) * (scale / (2.0 * std::sqrt(double(dim))));
    return HermitianOperator<double>(h);
}

inline CVector<double> state(Index dim, Engine& rng) {
    CVector<double> v = matrix(dim, 1, rng);
    return v / v.norm();
}

// rho = G G^dag / Tr with G complex Gaussian (full rank almost surely).
inline DensityState<double> density(Index dim, Engine& rng) {
    const CMatrix<double> g = matrix(dim, rng);
    CMatrix<double> rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return DensityState<double>(std::move(rho));
}

// H(lambda) = H0 + lambda V1 + lambda^2 V2 with the analytic derivative.
inline HamiltonianFamily<double> family(Index dim, Engine& rng) {
    const auto h0 = hermitian(dim, rng);
    const auto v1 = hermitian(dim, rng);
    const auto v2 = hermitian(dim, rng, 0.3);
    return HamiltonianFamily<double>(
        dim,
        [h0, v1, v2](double l) { return HermitianOperator<double>(h0.matrix() + l * v1.matrix() + l * l * v2.matrix()); },
        [v1, v2](double l) { return HermitianOperator<double>(v1.matrix() + 2.0 * l * v2.matrix()); });
}

} // namespace ofs::random
