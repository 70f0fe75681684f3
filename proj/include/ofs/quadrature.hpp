// quadrature.hpp - fixed-grid rules on a closed interval

#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace ofs {

enum class QuadratureRule { trapezoid, gauss_legendre };

std::string_view to_string(QuadratureRule rule) noexcept;
QuadratureRule parse_quadrature_rule(std::string_view name);

struct QuadratureNodes {
    std::vector<double> x;
    std::vector<double> w;
};

// Composite trapezoid on `points` equally spaced nodes (endpoints included).
QuadratureNodes trapezoid_nodes(double a, double b, int points);

// Gauss-Legendre nodes and weights via Newton iteration on P_n.
QuadratureNodes gauss_legendre_nodes(double a, double b, int points);

QuadratureNodes make_nodes(QuadratureRule rule, double a, double b, int points);

// Neumaier-compensated running sum; fixed summation order gives
// reproducible results.
class CompensatedSum {
public:
    void add(double v) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_{0};
    double comp_{0};
};

} // namespace ofs
