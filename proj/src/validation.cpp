#include "ofs/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "ofs/decoherence.hpp"
#include "ofs/oracle.hpp"
#include "ofs/random.hpp"
#include "ofs/tfim.hpp"

namespace ofs {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

class Suite {
public:
    Suite(ValidationReport& r, std::string name) : report_(r), name_(std::move(name)) {}

    void check(std::string name, double error, double tolerance) {
        const bool ok = std::isfinite(error) && error <= tolerance;
        report_.checks.push_back({name_, std::move(name), error, tolerance, ok});
    }

    // Runs body, recording an exception as a failed check.
    template <typename F>
    void guarded(const std::string& name, double tolerance, F&& body) {
        try {
            check(name, body(), tolerance);
        } catch (const std::exception&) {
            check(name, std::numeric_limits<double>::infinity(), tolerance);
        }
    }

private:
    ValidationReport& report_;
    std::string name_;
};

void operator_space_suite(ValidationReport& report, random::Engine& rng) {
    Suite s(report, "operator-space");
    s.guarded("spectral reconstruction 8x8", 1e-10, [&] {
        const auto h = random::hermitian(8, rng);
        return detail::max_abs(spectral_decompose(h).reconstruct() - h.matrix());
    });
    s.guarded("exponential vs Taylor 6x6", 1e-10, [&] {
        const auto h = random::hermitian(6, rng);
        const std::complex<double> mi(0.0, -0.7);
        CMatrix<double> term = CMatrix<double>::Identity(6, 6);
        CMatrix<double> sum = term;
        for (int j = 1; j <= 30; ++j) {
            term = (term * h.matrix() * mi / double(j)).eval();
            sum += term;
        }
        return detail::max_abs(matrix_exponential(h, 0.7).matrix() - sum);
    });
    s.guarded("inner product vs purification 4x4", 1e-12, [&] {
        const auto rho = random::density(4, rng);
        const auto x = random::matrix(4, rng);
        const auto y = random::matrix(4, rng);
        return std::abs(inner_product(rho, x, y) - purify_check(rho, x, y));
    });
    s.guarded("Cauchy-Schwarz", 1e-12, [&] {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const auto rho = random::density(4, rng);
            const auto x = random::matrix(4, rng);
            const auto y = random::matrix(4, rng);
            const double xx = rho_norm(rho, x);
            const double yy = rho_norm(rho, y);
            worst = std::max(worst, std::abs(inner_product(rho, x, y)) - xx * yy);
        }
        return std::max(0.0, worst);
    });
}

void engine_suite(ValidationReport& report, random::Engine& rng) {
    Suite s(report, "ofs-engine");
    s.guarded("split identity, 12 random families", 1e-9, [&] {
        double worst = 0;
        for (int f = 0; f < 12; ++f) {
            const Index dim = 2 + static_cast<Index>(rng() % 15);
            const auto fam = random::family(dim, rng);
            for (double beta : {0.0, 1.0, 10.0}) {
                const auto spec = std::make_shared<const SpectralDecomposition<double>>(spectral_decompose(fam.at(0.3)));
                const auto w = thermal_weights(spec, beta);
                for (double t : {0.3, 1.0, 5.0}) {
                    const auto total = chi_spectral(fam, 0.3, t, w);
                    const auto split = chi_split(fam, 0.3, t, w);
                    worst = std::max(worst, rel(split.chi1 + split.chi2, total.chi_total));
                    worst = std::max(worst, rel(total.chi1 + total.chi2, total.chi_total));
                }
            }
        }
        return worst;
    });
    s.guarded("finite difference vs spectral, 8x8", 1e-5, [&] {
        double worst = 0;
        for (int f = 0; f < 3; ++f) {
            const auto fam = random::family(8, rng);
            const auto spec = std::make_shared<const SpectralDecomposition<double>>(spectral_decompose(fam.at(0.0)));
            const auto w = thermal_weights(spec, 1.0);
            const double fd = chi_finite_difference(fam, 0.0, 1.0, w, 1e-3);
            worst = std::max(worst, rel(fd, chi_spectral(fam, 0.0, 1.0, w).chi_total));
        }
        return worst;
    });
}

void fermion_suite(ValidationReport& report, random::Engine& rng) {
    Suite s(report, "tfim-fermion-block");
    s.guarded("analytic modes vs dense 4x4 blocks", 1e-10, [&] {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0;
        for (int i = 0; i < 6; ++i) {
            const int M = 1 + static_cast<int>(rng() % 6);
            const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(M));
            const double lambda = 2.0 * u(rng);
            const double beta = 3.0 * u(rng);
            const double t = 0.2 + 3.0 * u(rng);
            const double lambda2 = lambda + 0.2 * (u(rng) - 0.5);
            const tfim::TfimConfig cfg{M, lambda, beta};
            const auto p = tfim::mode_params(cfg, k);
            const auto dense = chi_spectral(oracle::fermion_block_family(k, cfg.sites()), lambda, t, beta);
            worst = std::max(worst, std::abs(dense.chi1 - tfim::chi1_mode(p, beta, t)));
            worst = std::max(worst, std::abs(dense.chi2 - tfim::chi2_mode(p, beta, t)));
            const auto a = tfim::mode_overlap(cfg, k, lambda2, t);
            const auto b = oracle::fermion_block_overlap(k, cfg.sites(), lambda, beta, lambda2, t);
            worst = std::max(worst, std::abs(a - b));
        }
        return worst;
    });
}

void thermo_suite(ValidationReport& report) {
    Suite s(report, "tfim-thermo");
    s.guarded("chi1/t^2 at lambda=0, beta=1e-6", 1e-6, [] {
        return std::abs(tfim::chi_thermo_limit(0.0, 1e-6, 1.0).sample.chi1 - 0.5);
    });
    s.guarded("time-averaged chi2 at lambda=0, beta=1e3", 1e-6, [] {
        return std::abs(tfim::chi2_time_average_thermo(0.0, 1e3).value - 0.125);
    });
    s.guarded("chi1/t^2 at lambda=10, beta=1e-6", 2e-2, [] {
        return std::abs(tfim::chi_thermo_limit(10.0, 1e-6, 1.0).sample.chi1 - 1.0);
    });
}

void decoherence_suite(ValidationReport& report) {
    Suite s(report, "decoherence");
    s.guarded("reduced state vs full evolution, N=4", 1e-10, [] {
        double worst = 0;
        for (double t : {0.5, 1.0, 5.0}) {
            const auto model = ising_bath_qubit({4, 1.0, 1.0, 0.1});
            const auto a = reduced_state(model, t);
            const auto b = oracle::dephasing_full_evolution(model, t);
            worst = std::max(worst, detail::max_abs(a.matrix() - b.matrix()));
        }
        return worst;
    });
    s.guarded("low temperature reduces to Loschmidt echo, N=6", 1e-6, [] {
        double worst = 0;
        for (double t : {0.5, 2.0}) {
            const auto model = ising_bath_qubit({6, 1.5, 1e3, 0.1});
            const auto v = effective_evolutions(model, t);
            const double f = operator_fidelity(model.bath_state(), v[0], v[1]);
            worst = std::max(worst, std::abs(f * f - oracle::loschmidt_echo({6, 1.5}, 1.6, t)));
        }
        return worst;
    });
}

} // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(std::uint64_t seed) {
    ValidationReport report;
    random::Engine rng(seed);
    operator_space_suite(report, rng);
    engine_suite(report, rng);
    fermion_suite(report, rng);
    thermo_suite(report);
    decoherence_suite(report);
    return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
    std::size_t failed = 0;
    for (const auto& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-20s %-48s error=%.3e tol=%.1e\n", c.passed ? "PASS" : "FAIL",
                      c.suite.c_str(), c.name.c_str(), c.error, c.tolerance);
        out << line;
        failed += c.passed ? 0 : 1;
    }
    out << (failed == 0 ? "all " : "") << report.checks.size() - failed << "/" << report.checks.size()
        << " checks passed\n";
}

} // namespace ofs
