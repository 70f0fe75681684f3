#include "ofs/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ofs/errors.hpp"

namespace ofs {

std::string_view to_string(QuadratureRule rule) noexcept {
    return rule == QuadratureRule::trapezoid ? "trapezoid" : "gauss_legendre";
}

QuadratureRule parse_quadrature_rule(std::string_view name) {
    if (name == "trapezoid") {
        return QuadratureRule::trapezoid;
    }
    if (name == "gauss_legendre" || name == "gauss-legendre") {
        return QuadratureRule::gauss_legendre;
    }
    throw Error("unknown quadrature rule: " + std::string(name));
}

QuadratureNodes trapezoid_nodes(double a, double b, int points) {
    if (points < 3) {
        throw Error("trapezoid_nodes: need at least 3 points");
    }
    QuadratureNodes q;
    q.x.resize(points);
    q.w.resize(points);
    const double h = (b - a) / (points - 1);
    for (int i = 0; i < points; ++i) {
        q.x[i] = (i == points - 1) ? b : a + i * h;
        q.w[i] = (i == 0 || i == points - 1) ? h / 2 : h;
    }
    return q;
}

QuadratureNodes gauss_legendre_nodes(double a, double b, int points) {
    if (points < 3) {
        throw Error("gauss_legendre_nodes: need at least 3 points");
    }
    const int n = points;
    QuadratureNodes q;
    q.x.resize(n);
    q.w.resize(n);
    const double mid = (a + b) / 2;
    const double half = (b - a) / 2;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th root.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                break;
            }
        }
        const double w = 2 / ((1 - z * z) * dp * dp);
        q.x[i] = mid - half * z;
        q.x[n - 1 - i] = mid + half * z;
        q.w[i] = half * w;
        q.w[n - 1 - i] = half * w;
    }
    return q;
}

QuadratureNodes make_nodes(QuadratureRule rule, double a, double b, int points) {
    return rule == QuadratureRule::trapezoid ? trapezoid_nodes(a, b, points) : gauss_legendre_nodes(a, b, points);
}

void CompensatedSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        comp_ += (sum_ - t) + v;
    } else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

} // namespace ofs
