// sweep.hpp - grid sweeps behind the command-line driver and their CSV
// output.
//
// Row order is lambda (outer), beta, t (inner). Sweep points are evaluated
// by parallel_map and written in grid order.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofs/errors.hpp"
#include "ofs/quadrature.hpp"

namespace ofs {

enum class Command { tfim_finite, tfim_thermo, tfim_timeavg, dense_ofs, decohere, validate };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view name);

struct ConfigError : Error {
    using Error::Error;
};

// Inclusive grid "min:max:steps" with steps points; a bare number is a
// one-point grid.
struct Grid {
    double min{0};
    double max{0};
    int steps{1};

    std::vector<double> points() const;
    void validate(std::string_view what) const;
};

Grid parse_grid(std::string_view text);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_config = 1;
inline constexpr int validation_failure = 2;
inline constexpr int non_convergence = 3;
} // namespace exit_code

struct RunConfig {
    Command command{Command::tfim_thermo};
    Grid lambda{0.0, 2.0, 200};
    Grid beta{1.0, 1.0, 1};
    Grid t{1.0, 1.0, 1};
    std::optional<int> M;     // tfim-finite, tfim-timeavg
    int N{8};                 // dense-ofs, decohere
    double delta{1e-3};       // finite-difference step (dense-ofs --fd)
    bool finite_difference{false};
    double delta_lambda{0.1}; // decohere coupling shift
    int quad_points{20001};
    QuadratureRule quad_rule{QuadratureRule::trapezoid};
    std::uint64_t seed{42};
    std::string output_path; // empty: stdout

    void validate() const;
};

// %.12g; non-finite values print as nan, inf, -inf.
std::string format_value(double v);

inline constexpr std::string_view csv_header = "lambda,beta,t,chi1,chi2,chi_total,backend,flags";
inline constexpr std::string_view decohere_header = "time,pair,offdiag_magnitude";

// Writes the command's output to config.output_path (or out when empty);
// diagnostics go to log. Returns an exit_code value.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

} // namespace ofs
