// ofs_cli.cpp - command-line driver.
//
//   ofs tfim-thermo --lambda 0:2:200 --beta 1 --t 1
//   ofs tfim-timeavg --M 1000 --beta 1 --lambda 0:2:200
//   ofs validate --seed 42
//
// Any option may also come from a key = value file given with --config;
// flags on the command line win. OFS_WORKERS sets the worker count.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ofs/sweep.hpp"

namespace {

struct Options {
    std::string lambda{"0:2:200"};
    std::string beta{"1"};
    std::string t{"1"};
    int M{-1};
    int N{8};
    double delta{1e-3};
    bool fd{false};
    double delta_lambda{0.1};
    int quad_points{20001};
    std::string quad_rule{"trapezoid"};
    std::uint64_t seed{42};
    std::string output;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--lambda", o.lambda, "lambda grid, min:max:steps or a single value")->capture_default_str();
    sub->add_option("--beta", o.beta, "inverse temperature, grid or value")->capture_default_str();
    sub->add_option("-o,--output", o.output, "output CSV path (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator fidelity susceptibility sweeps"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);
    Options o;

    auto* finite = app.add_subcommand("tfim-finite", "closed-form TFIM chain, N = 2M+1, per chain");
    add_common(finite, o);
    finite->add_option("--t", o.t, "time, grid or value")->capture_default_str();
    finite->add_option("--M", o.M, "number of (k, -k) pairs")->required();

    auto* thermo = app.add_subcommand("tfim-thermo", "TFIM thermodynamic limit, per site");
    add_common(thermo, o);
    thermo->add_option("--t", o.t, "time, grid or value")->capture_default_str();
    thermo->add_option("--quad-points", o.quad_points, "quadrature nodes")->capture_default_str();
    thermo->add_option("--quad-rule", o.quad_rule, "trapezoid | gauss_legendre")->capture_default_str();

    auto* timeavg = app.add_subcommand("tfim-timeavg", "long-time average of chi2 (finite M, else per site)");
    add_common(timeavg, o);
    timeavg->add_option("--M", o.M, "number of (k, -k) pairs; omit for the thermodynamic limit");
    timeavg->add_option("--quad-points", o.quad_points, "quadrature nodes")->capture_default_str();
    timeavg->add_option("--quad-rule", o.quad_rule, "trapezoid | gauss_legendre")->capture_default_str();

    auto* dense = app.add_subcommand("dense-ofs", "dense spectral OFS of the 2^N spin chain, per chain");
    add_common(dense, o);
    dense->add_option("--t", o.t, "time, grid or value")->capture_default_str();
    dense->add_option("--N", o.N, "spins (2..12)")->capture_default_str();
    dense->add_flag("--fd", o.fd, "also emit a finite-difference row");
    dense->add_option("--delta", o.delta, "finite-difference step")->capture_default_str();

    auto* decohere = app.add_subcommand("decohere", "qubit coherence under an Ising bath");
    add_common(decohere, o);
    decohere->add_option("--t", o.t, "time grid")->capture_default_str();
    decohere->add_option("--N", o.N, "bath spins (2..12)")->capture_default_str();
    decohere->add_option("--delta-lambda", o.delta_lambda, "field shift seen in the excited pointer state")
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "seeded cross-backend self-checks");
    validate->add_option("--seed", o.seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ofs::exit_code::invalid_config;
    }

    ofs::RunConfig cfg;
    try {
        cfg.command = ofs::parse_command(app.get_subcommands().front()->get_name());
        if (cfg.command != ofs::Command::validate) {
            cfg.lambda = ofs::parse_grid(o.lambda);
            cfg.beta = ofs::parse_grid(o.beta);
            cfg.t = ofs::parse_grid(o.t);
            cfg.quad_rule = ofs::parse_quadrature_rule(o.quad_rule);
        }
        if (o.M >= 0) {
            cfg.M = o.M;
        }
        cfg.N = o.N;
        cfg.delta = o.delta;
        cfg.finite_difference = o.fd;
        cfg.delta_lambda = o.delta_lambda;
        cfg.quad_points = o.quad_points;
        cfg.seed = o.seed;
        cfg.output_path = o.output;
    } catch (const ofs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ofs::exit_code::invalid_config;
    }
    return ofs::run(cfg, std::cout, std::cerr);
}
