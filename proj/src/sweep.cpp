#include "ofs/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ofs/decoherence.hpp"
#include "ofs/ofs_engine.hpp"
#include "ofs/oracle.hpp"
#include "ofs/parallel.hpp"
#include "ofs/tfim.hpp"
#include "ofs/validation.hpp"

namespace ofs {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double inf = std::numeric_limits<double>::infinity();

struct Row {
    double lambda{0};
    double beta{0};
    double t{0};
    double chi1{0};
    double chi2{0};
    double chi_total{0};
    Backend backend{Backend::spectral};
    std::string flags;
};

struct Point {
    double lambda;
    double beta;
    double t;
};

double parse_number(std::string_view s, std::string_view what) {
    double v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        throw ConfigError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

std::vector<Point> grid_points(const RunConfig& c, bool with_t) {
    std::vector<Point> pts;
    const auto ts = with_t ? c.t.points() : std::vector<double>{inf};
    for (double l : c.lambda.points()) {
        for (double b : c.beta.points()) {
            for (double t : ts) {
                pts.push_back({l, b, t});
            }
        }
    }
    return pts;
}

void write_rows(std::ostream& out, const std::vector<Row>& rows) {
    out << csv_header << '\n';
    for (const auto& r : rows) {
        out << format_value(r.lambda) << ',' << format_value(r.beta) << ',' << format_value(r.t) << ','
            << format_value(r.chi1) << ',' << format_value(r.chi2) << ',' << format_value(r.chi_total) << ','
            << to_string(r.backend) << ',' << r.flags << '\n';
    }
}

Row from_sample(const OfsSample& s, double beta, std::string flags = {}) {
    return {s.lambda, beta, s.t, s.chi1, s.chi2, s.chi_total, s.backend, std::move(flags)};
}

std::vector<Row> run_tfim_finite(const RunConfig& c) {
    const auto pts = grid_points(c, true);
    return parallel_map<Row>(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        return from_sample(tfim::chi_finite_n({*c.M, p.lambda, p.beta}, p.t), p.beta);
    });
}

std::vector<Row> run_tfim_thermo(const RunConfig& c, std::ostream& log) {
    const auto pts = grid_points(c, true);
    const tfim::ThermoQuadrature q{c.quad_points, c.quad_rule};
    auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        const auto r = tfim::chi_thermo_limit(p.lambda, p.beta, p.t, q);
        return from_sample(r.sample, p.beta, r.flags);
    });
    for (const auto& r : rows) {
        if (!r.flags.empty()) {
            log << "warning: lambda=" << format_value(r.lambda) << " beta=" << format_value(r.beta)
                << " t=" << format_value(r.t) << ": " << r.flags << '\n';
        }
    }
    return rows;
}

std::vector<Row> run_tfim_timeavg(const RunConfig& c, std::ostream& log) {
    const auto pts = grid_points(c, false);
    const tfim::ThermoQuadrature q{c.quad_points, c.quad_rule};
    auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        Row row{p.lambda, p.beta, inf, nan, 0.0, nan, Backend::tfim_analytic, "time_average"};
        if (c.M) {
            row.chi2 = tfim::chi2_time_average({*c.M, p.lambda, p.beta});
        } else {
            const auto r = tfim::chi2_time_average_thermo(p.lambda, p.beta, q);
            row.chi2 = r.value;
            row.backend = Backend::tfim_thermo;
            if (!r.flags.empty()) {
                row.flags += ";" + r.flags;
            }
        }
        return row;
    });
    for (const auto& r : rows) {
        if (r.flags != "time_average") {
            log << "warning: lambda=" << format_value(r.lambda) << " beta=" << format_value(r.beta) << ": "
                << r.flags << '\n';
        }
    }
    return rows;
}

HamiltonianFamily<double> spin_chain_family(int N) {
    const auto field = oracle::transverse_magnetization(N);
    const HermitianOperator<double> dh = (-1.0) * field;
    return HamiltonianFamily<double>(
        Index(1) << N, [N](double l) { return oracle::build_spin_tfim({N, l}); }, [dh](double) { return dh; });
}

std::vector<Row> run_dense_ofs(const RunConfig& c) {
    const auto fam = spin_chain_family(c.N);
    const auto pts = grid_points(c, true);
    const auto per_point = parallel_map<std::vector<Row>>(pts.size(), [&](std::size_t i) {
        const auto& p = pts[i];
        const auto spec = std::make_shared<const SpectralDecomposition<double>>(spectral_decompose(fam.at(p.lambda)));
        const auto w = thermal_weights(spec, p.beta);
        std::vector<Row> rows{from_sample(chi_spectral(fam, p.lambda, p.t, w), p.beta)};
        if (c.finite_difference) {
            const double fd = chi_finite_difference(fam, p.lambda, p.t, w, c.delta);
            rows.push_back({p.lambda, p.beta, p.t, nan, nan, fd, Backend::finite_difference,
                            "delta=" + format_value(c.delta)});
        }
        return rows;
    });
    std::vector<Row> rows;
    for (const auto& v : per_point) {
        rows.insert(rows.end(), v.begin(), v.end());
    }
    return rows;
}

void run_decohere(const RunConfig& c, std::ostream& out) {
    if (c.lambda.steps != 1 || c.beta.steps != 1) {
        throw ConfigError("decohere takes a single lambda and beta; sweep t instead");
    }
    IsingBathSpec spec;
    spec.N = c.N;
    spec.lambda = c.lambda.min;
    spec.beta = c.beta.min;
    spec.delta_lambda = c.delta_lambda;
    const auto model = ising_bath_qubit(spec);
    const auto times = c.t.points();
    const auto coherence = parallel_map<double>(times.size(), [&](std::size_t i) {
        return std::abs(reduced_state(model, times[i]).matrix()(0, 1));
    });
    out << decohere_header << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_value(times[i]) << ",0-1," << format_value(coherence[i]) << '\n';
    }
}

} // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
    case Command::tfim_finite: return "tfim-finite";
    case Command::tfim_thermo: return "tfim-thermo";
    case Command::tfim_timeavg: return "tfim-timeavg";
    case Command::dense_ofs: return "dense-ofs";
    case Command::decohere: return "decohere";
    case Command::validate: return "validate";
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::tfim_finite, Command::tfim_thermo, Command::tfim_timeavg, Command::dense_ofs,
                   Command::decohere, Command::validate}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::vector<double> Grid::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out[0] = min;
        return out;
    }
    const double h = (max - min) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        out[static_cast<std::size_t>(i)] = min + i * h;
    }
    out.back() = max;
    return out;
}

void Grid::validate(std::string_view what) const {
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw ConfigError(std::string(what) + ": grid bounds must be finite");
    }
    if (min > max) {
        throw ConfigError(std::string(what) + ": min > max");
    }
    if (steps < 1) {
        throw ConfigError(std::string(what) + ": steps must be >= 1");
    }
    if (steps == 1 && min != max) {
        throw ConfigError(std::string(what) + ": a one-point grid needs min == max");
    }
}

Grid parse_grid(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    Grid g;
    if (parts.size() == 1) {
        g.min = g.max = parse_number(parts[0], "grid value");
        g.steps = 1;
    } else if (parts.size() == 3) {
        g.min = parse_number(parts[0], "grid min");
        g.max = parse_number(parts[1], "grid max");
        const double steps = parse_number(parts[2], "grid steps");
        if (steps != std::floor(steps) || steps < 1 || steps > 1e7) {
            throw ConfigError("grid steps must be a positive integer");
        }
        g.steps = static_cast<int>(steps);
    } else {
        throw ConfigError("grid must be 'value' or 'min:max:steps', got '" + std::string(text) + "'");
    }
    return g;
}

void RunConfig::validate() const {
    lambda.validate("lambda");
    beta.validate("beta");
    t.validate("t");
    if (beta.min < 0) {
        throw ConfigError("beta must be >= 0");
    }
    if (quad_points < 2) {
        throw ConfigError("quad_points must be >= 2");
    }
    if (!(delta > 0)) {
        throw ConfigError("delta must be > 0");
    }
    switch (command) {
    case Command::tfim_finite:
        if (!M) {
            throw ConfigError("tfim-finite requires --M");
        }
        [[fallthrough]];
    case Command::tfim_timeavg:
        if (M && *M < 0) {
            throw ConfigError("M must be >= 0");
        }
        break;
    case Command::dense_ofs:
    case Command::decohere:
        if (N < 2 || N > oracle::max_spins) {
            throw ConfigError("N must lie in 2.." + std::to_string(oracle::max_spins));
        }
        break;
    default: break;
    }
}

std::string format_value(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
    try {
        config.validate();
        if (config.command == Command::validate) {
            const auto report = run_validation(config.seed);
            print_report(report, out);
            return report.passed() ? exit_code::ok : exit_code::validation_failure;
        }

        std::ostringstream buf;
        switch (config.command) {
        case Command::tfim_finite: write_rows(buf, run_tfim_finite(config)); break;
        case Command::tfim_thermo: write_rows(buf, run_tfim_thermo(config, log)); break;
        case Command::tfim_timeavg: write_rows(buf, run_tfim_timeavg(config, log)); break;
        case Command::dense_ofs: write_rows(buf, run_dense_ofs(config)); break;
        case Command::decohere: run_decohere(config, buf); break;
        case Command::validate: break;
        }

        if (config.output_path.empty()) {
            out << buf.str();
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file) {
                throw ConfigError("cannot open output file '" + config.output_path + "'");
            }
            file << buf.str();
        }
        return exit_code::ok;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::invalid_config;
    } catch (const QuadratureNonConverged& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::non_convergence;
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::invalid_config;
    }
}

} // namespace ofs
