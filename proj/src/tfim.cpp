#include "ofs/tfim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ofs/errors.hpp"

namespace ofs::tfim {

namespace {

constexpr double pi = std::numbers::pi;
const std::complex<double> I{0.0, 1.0};

// sin^2(t w) / w^2, continuous at w = 0.
double sin2_over_w2(double t, double w) {
    const double x = t * w;
    if (std::abs(x) < 1e-8) {
        return t * t;
    }
    const double s = std::sin(x) / w;
    return s * s;
}

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

double relative_change(double coarse, double fine) {
    const double diff = std::abs(fine - coarse);
    if (diff == 0.0) {
        return 0.0;
    }
    return diff / std::max(std::abs(fine), std::numeric_limits<double>::min());
}

bool is_critical(double lambda) { return lambda == 1.0; }

// Integrand values at a continuous momentum, already multiplied by the
// prefactors 2/pi or 1/pi.
struct ThermoIntegrands {
    double chi1_over_t2{0};
    double chi2{0};
    double chi2_average{0};
};

ThermoIntegrands thermo_integrands(double lambda, double beta, double t, double k) {
    const ModeParams p = mode_params_at(lambda, beta, k);
    ThermoIntegrands out;
    if (p.omega == 0.0) {
        // lambda = 1, k = 0: cos^2 theta -> 0, sin^2 theta -> 1.
        out.chi1_over_t2 = 0.0;
        out.chi2 = (2 / pi) * cosh_ratio(0.0) * t * t;
        out.chi2_average = std::numeric_limits<double>::infinity();
        return out;
    }
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double x = beta * p.omega;
    out.chi1_over_t2 = (2 / pi) * c2 * inv_one_plus_cosh(x);
    out.chi2 = (2 / pi) * cosh_ratio(x) * s2 * sin2_over_w2(t, p.omega);
    out.chi2_average = (1 / pi) * cosh_ratio(x) * s2 / (p.omega * p.omega);
    return out;
}

struct ThermoIntegrals {
    ThermoIntegrands value;
    bool dropped_singular{false};
};

ThermoIntegrals integrate(double lambda, double beta, double t, QuadratureRule rule, int points) {
    const QuadratureNodes nodes = make_nodes(rule, 0.0, pi, points);
    CompensatedSum c1;
    CompensatedSum c2;
    CompensatedSum avg;
    ThermoIntegrals out;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const ThermoIntegrands f = thermo_integrands(lambda, beta, t, nodes.x[i]);
        const double w = nodes.w[i];
        c1.add(w * f.chi1_over_t2);
        c2.add(w * f.chi2);
        if (std::isfinite(f.chi2_average)) {
            avg.add(w * f.chi2_average);
        } else {
            out.dropped_singular = true;
        }
    }
    out.value = {c1.value(), c2.value(), avg.value()};
    return out;
}

int refined_points(const ThermoQuadrature& q) { return 2 * q.points - 1; }

void check_quadrature(const ThermoQuadrature& q) {
    if (q.points < 3) {
        throw Error("ThermoQuadrature: points must be >= 3");
    }
}

std::complex<double> trace2(const Eigen::Matrix2cd& m) { return m(0, 0) + m(1, 1); }

} // namespace

void TfimConfig::validate() const {
    if (M < 1) {
        throw Error("TfimConfig: M must be >= 1");
    }
    if (!(beta >= 0) || !std::isfinite(beta)) {
        throw Error("TfimConfig: beta must be finite and >= 0");
    }
    if (!std::isfinite(lambda)) {
        throw Error("TfimConfig: lambda must be finite");
    }
}

ModeParams mode_params_at(double lambda, double beta, double ktilde) {
    ModeParams p;
    p.ktilde = ktilde;
    p.A = lambda - std::cos(ktilde);
    p.B = std::sin(ktilde);
    p.omega = -2.0 * std::hypot(p.A, p.B);
    // Two-argument arctangent fixes the branch so that both the sine and the
    // cosine relations hold.
    p.theta = p.omega != 0.0 ? std::atan2(2.0 * p.B / p.omega, 2.0 * p.A / p.omega)
                             : std::numeric_limits<double>::quiet_NaN();
    p.Zk = 2.0 * (1.0 + std::cosh(beta * p.omega));
    return p;
}

ModeParams mode_params(const TfimConfig& cfg, int k) {
    cfg.validate();
    if (k < 1 || k > cfg.M) {
        throw Error("mode_params: k must lie in 1..M");
    }
    ModeParams p = mode_params_at(cfg.lambda, cfg.beta, 2.0 * pi * k / cfg.sites());
    p.k = k;
    return p;
}

double theta_derivative(const ModeParams& p) { return -2.0 * std::sin(p.theta) / p.omega; }

double inv_one_plus_cosh(double x) {
    // 1 + cosh x = 2 cosh^2(x/2)
    const double c = std::cosh(0.5 * x);
    return 0.5 / (c * c);
}

double cosh_ratio(double x) { return 1.0 - inv_one_plus_cosh(x); }

double chi1_mode(const ModeParams& p, double beta, double t) {
    const double c = std::cos(p.theta);
    return 4.0 * t * t * c * c * inv_one_plus_cosh(beta * p.omega);
}

double chi2_mode(const ModeParams& p, double beta, double t) {
    const double s = std::sin(p.theta);
    return 4.0 * cosh_ratio(beta * p.omega) * s * s * sin2_over_w2(t, p.omega);
}

ChiParts chi_zero_mode(double lambda, double beta, double t) {
    // 1 - tanh^2 = sech^2
    return {t * t * sech2(beta * (lambda - 1.0)), 0.0};
}

std::vector<OfsSample> mode_contributions(const TfimConfig& cfg, double t) {
    cfg.validate();
    std::vector<OfsSample> out;
    out.reserve(cfg.M + 1);
    auto sample = [&](double c1, double c2) {
        OfsSample s;
        s.lambda = cfg.lambda;
        s.beta = cfg.beta;
        s.t = t;
        s.chi1 = c1;
        s.chi2 = c2;
        s.chi_total = c1 + c2;
        s.backend = Backend::tfim_analytic;
        return s;
    };
    const ChiParts zero = chi_zero_mode(cfg.lambda, cfg.beta, t);
    out.push_back(sample(zero.chi1, zero.chi2));
    for (int k = 1; k <= cfg.M; ++k) {
        const ModeParams p = mode_params(cfg, k);
        out.push_back(sample(chi1_mode(p, cfg.beta, t), chi2_mode(p, cfg.beta, t)));
    }
    return out;
}

OfsSample chi_finite_n(const TfimConfig& cfg, double t) {
    cfg.validate();
    CompensatedSum c1;
    CompensatedSum c2;
    c1.add(chi_zero_mode(cfg.lambda, cfg.beta, t).chi1);
    for (int k = 1; k <= cfg.M; ++k) {
        const ModeParams p = mode_params(cfg, k);
        c1.add(chi1_mode(p, cfg.beta, t));
        c2.add(chi2_mode(p, cfg.beta, t));
    }
    OfsSample s;
    s.lambda = cfg.lambda;
    s.beta = cfg.beta;
    s.t = t;
    s.chi1 = c1.value();
    s.chi2 = c2.value();
    s.chi_total = s.chi1 + s.chi2;
    s.backend = Backend::tfim_analytic;
    return s;
}

double chi2_time_average(const TfimConfig& cfg) {
    cfg.validate();
    CompensatedSum sum;
    for (int k = 1; k <= cfg.M; ++k) {
        const ModeParams p = mode_params(cfg, k);
        const double s = std::sin(p.theta);
        sum.add(2.0 * cosh_ratio(cfg.beta * p.omega) * s * s / (p.omega * p.omega));
    }
    return sum.value();
}

ThermoResult chi_thermo_limit(double lambda, double beta, double t, const ThermoQuadrature& q) {
    check_quadrature(q);
    const ThermoIntegrals coarse = integrate(lambda, beta, t, q.rule, q.points);
    const ThermoIntegrals fine = integrate(lambda, beta, t, q.rule, refined_points(q));

    ThermoResult r;
    r.sample.lambda = lambda;
    r.sample.beta = beta;
    r.sample.t = t;
    r.sample.chi1 = t * t * coarse.value.chi1_over_t2;
    r.sample.chi2 = coarse.value.chi2;
    r.sample.chi_total = r.sample.chi1 + r.sample.chi2;
    r.sample.backend = Backend::tfim_thermo;
    r.residual = std::max(relative_change(coarse.value.chi1_over_t2, fine.value.chi1_over_t2),
                          relative_change(coarse.value.chi2, fine.value.chi2));
    r.converged = r.residual <= thermo_tolerance;
    if (!r.converged) {
        if (!is_critical(lambda)) {
            throw QuadratureNonConverged("chi_thermo_limit: relative residual " + std::to_string(r.residual) +
                                         " at lambda=" + std::to_string(lambda));
        }
        r.flags = "quad_unconverged";
    }
    return r;
}

TimeAverageResult chi2_time_average_thermo(double lambda, double beta, const ThermoQuadrature& q) {
    check_quadrature(q);
    const ThermoIntegrals coarse = integrate(lambda, beta, 0.0, q.rule, q.points);
    const ThermoIntegrals fine = integrate(lambda, beta, 0.0, q.rule, refined_points(q));

    TimeAverageResult r;
    r.value = coarse.value.chi2_average;
    r.residual = relative_change(coarse.value.chi2_average, fine.value.chi2_average);
    r.converged = r.residual <= thermo_tolerance && !coarse.dropped_singular;
    if (!r.converged) {
        if (!is_critical(lambda)) {
            throw QuadratureNonConverged("chi2_time_average_thermo: relative residual " +
                                         std::to_string(r.residual) + " at lambda=" + std::to_string(lambda));
        }
        r.flags = coarse.dropped_singular ? "quad_unconverged;singular_endpoint" : "quad_unconverged";
    }
    return r;
}

Eigen::Matrix2cd pseudo_spin_axis(double theta) {
    Eigen::Matrix2cd sy;
    sy << 0.0, -I, I, 0.0;
    Eigen::Matrix2cd sz;
    sz << 1.0, 0.0, 0.0, -1.0;
    return std::sin(theta) * sy + std::cos(theta) * sz;
}

Eigen::Matrix2cd mode_rotation(const ModeParams& p, double t) {
    // exp(-i a n.s) = cos a - i sin a n.s for a unit axis
    const double a = t * p.omega;
    return std::cos(a) * Eigen::Matrix2cd::Identity() - I * std::sin(a) * pseudo_spin_axis(p.theta);
}

std::complex<double> zero_mode_overlap(const TfimConfig& cfg, double lambda2, double t) {
    cfg.validate();
    // rho_0 = exp(-beta (lambda - 1) s^z) / Z_0, U_0 = exp(-i t (lambda - 1) s^z)
    const double x = cfg.beta * (cfg.lambda - 1.0);
    const double p_up = 1.0 / (1.0 + std::exp(2.0 * x));
    const double p_down = 1.0 / (1.0 + std::exp(-2.0 * x));
    const double d = lambda2 - cfg.lambda;
    return p_up * std::exp(-I * (t * d)) + p_down * std::exp(I * (t * d));
}

std::complex<double> mode_overlap(const TfimConfig& cfg, int k, double lambda2, double t) {
    const ModeParams p = mode_params(cfg, k);
    TfimConfig cfg2 = cfg;
    cfg2.lambda = lambda2;
    const ModeParams p2 = mode_params(cfg2, k);

    // Thermal weight on the pair subspace, exp(-beta Omega s_n) / Z_k, written
    // through bounded ratios; the two singly occupied states carry 2 / Z_k.
    const double x = -cfg.beta * p.omega;
    const double c = 0.5 * cosh_ratio(x);
    const double s = 0.5 * cosh_ratio(x) * std::tanh(x);
    const Eigen::Matrix2cd rho = c * Eigen::Matrix2cd::Identity() + s * pseudo_spin_axis(p.theta);
    const Eigen::Matrix2cd r = mode_rotation(p, t).adjoint() * mode_rotation(p2, t);
    return inv_one_plus_cosh(x) + trace2(rho * r);
}

double factorized_fidelity(const TfimConfig& cfg, double lambda2, double t) {
    cfg.validate();
    if (lambda2 == cfg.lambda) {
        return 1.0;
    }
    CompensatedSum log_f;
    log_f.add(std::log(std::abs(zero_mode_overlap(cfg, lambda2, t))));
    for (int k = 1; k <= cfg.M; ++k) {
        log_f.add(std::log(std::abs(mode_overlap(cfg, k, lambda2, t))));
    }
    return std::exp(log_f.value());
}

} // namespace ofs::tfim
