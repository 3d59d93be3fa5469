// SPDX-License-Identifier: Apache-2.0
//
// keyhole: secrecy outage probability of a keyhole multi-user link with
// multiple eavesdroppers, by closed form, asymptote, quadrature and Monte Carlo.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "keyhole/analytic.hpp"
#include "keyhole/montecarlo.hpp"
#include "keyhole/params_io.hpp"
#include "keyhole/sweep.hpp"

namespace {

using namespace keyhole;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string params_file;
    std::uint64_t samples = sweep::kDefaultSamples;
    std::uint64_t seed = 1;
    unsigned streams = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--params", opts.params_file, "parameter file (key = value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--samples", opts.samples, "Monte Carlo sample count")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 62));
    cmd->add_option("--seed", opts.seed, "Monte Carlo seed (KEYHOLE_SEED overrides)");
    cmd->add_option("--streams", opts.streams, "worker streams; results do not depend on it")
        ->check(CLI::Range(1u, 4096u));
}

// KEYHOLE_SEED, when set, wins over --seed.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("KEYHOLE_SEED");
    if (env == nullptr || *env == '\0') return flag_seed;
    std::size_t used = 0;
    const std::string text(env);
    const auto value = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("KEYHOLE_SEED is not an integer: " + text);
    return value;
}

ParamConfig load_config(const CommonOptions& opts) {
    return opts.params_file.empty() ? ParamConfig{} : load_params_file(opts.params_file);
}

void print_params(const SystemParams& p, std::ostream& out) {
    out << "M=" << p.num_users << " N=" << p.num_eves << " zeta_g=" << sweep::format_number(p.zeta_g)
        << " zeta_hd=" << sweep::format_number(p.zeta_hd)
        << " zeta_he=" << sweep::format_number(p.zeta_he)
        << " delta=" << sweep::format_number(p.delta)
        << " gamma_bar_d=" << sweep::format_number(p.gamma_bar_d)
        << " gamma_bar_e=" << sweep::format_number(p.gamma_bar_e)
        << " r_th=" << sweep::format_number(p.r_th) << " (linear units)\n";
}

void print_estimate(const mc::MonteCarloEstimate& est, std::ostream& out) {
    out << std::left << std::setw(13) << "monte_carlo" << sweep::format_number(est.sop_hat)
        << "  std_error " << sweep::format_number(est.std_error) << "  ci95 ["
        << sweep::format_number(est.ci95_low) << ", " << sweep::format_number(est.ci95_high)
        << "]  outages " << est.num_outages << "/" << est.num_samples << "  seed " << est.seed
        << '\n';
}

int run_sop(const CommonOptions& opts) {
    const auto config = load_config(opts);
    const auto& p = config.params;
    print_params(p, std::cout);
    auto line = [](std::string_view name, auto&& eval) {
        std::cout << std::left << std::setw(13) << name;
        try {
            std::cout << sweep::format_number(eval()) << '\n';
        } catch (const std::exception& e) {
            std::cout << "unavailable: " << e.what() << '\n';
        }
    };
    line("closed_form", [&] { return analytic::sop_closed_form(p).value; });
    line("asymptotic", [&] { return analytic::sop_asymptotic(p).value; });
    line("quadrature", [&] { return analytic::sop_quadrature(p).value; });
    print_estimate(mc::estimate_sop(p, opts.samples, effective_seed(opts.seed), opts.streams),
                   std::cout);
    return 0;
}

int run_simulate(const CommonOptions& opts) {
    const auto config = load_config(opts);
    print_params(config.params, std::cout);
    print_estimate(
        mc::estimate_sop(config.params, opts.samples, effective_seed(opts.seed), opts.streams),
        std::cout);
    return 0;
}

struct SweepOptions {
    std::string recipe;
    std::string axis;
    std::string values;
    std::string methods;
    std::string out;
    std::string plot_script;
};

sweep::Recipe load_recipe(const std::string& name_or_path) {
    std::ifstream in(name_or_path);
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return sweep::parse_recipe(buf.str(), name_or_path);
    }
    return sweep::builtin_recipe(name_or_path);
}

int run_sweep_cmd(const CommonOptions& opts, const SweepOptions& sw, const CLI::App& cmd) {
    sweep::Recipe recipe;
    if (!sw.recipe.empty()) {
        recipe = load_recipe(sw.recipe);
        if (cmd.count("--samples") > 0) recipe.sweep.mc_samples = opts.samples;
    } else {
        if (sw.axis.empty() || sw.values.empty() || sw.methods.empty()) {
            throw CLI::ValidationError("sweep needs --recipe, or --axis, --values and --methods");
        }
        recipe.name = "custom";
        recipe.sweep.base = load_config(opts);
        recipe.sweep.axis = sweep::parse_axis(sw.axis);
        recipe.sweep.values = sweep::parse_values(sw.values);
        recipe.sweep.methods = sweep::parse_methods(sw.methods);
        recipe.sweep.mc_samples = opts.samples;
    }
    recipe.sweep.seed = effective_seed(opts.seed);
    recipe.sweep.num_streams = opts.streams;

    std::ofstream file;
    if (!sw.out.empty()) {
        file.open(sw.out);
        if (!file) throw std::runtime_error("cannot open output file '" + sw.out + "'");
    }
    std::ostream& out = sw.out.empty() ? std::cout : file;

    if (sw.recipe.empty()) {
        sweep::emit_csv(sweep::run_sweep(recipe.sweep), out);
        return 0;
    }
    const auto tables = sweep::run_recipe(recipe);
    sweep::emit_recipe_csv(tables, out);
    if (!sw.plot_script.empty()) {
        std::ofstream plot(sw.plot_script);
        if (!plot) throw std::runtime_error("cannot open plot script '" + sw.plot_script + "'");
        sweep::emit_gnuplot(recipe, tables, sw.out.empty() ? "sweep.csv" : sw.out, plot);
    }
    return 0;
}

struct ValidateOptions {
    std::string grid_m = "1,2,5,8";
    std::string grid_n = "1,3";
    std::string grid_gamma = "0,10,20,30";
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : sweep::parse_values(text)) {
        if (v != static_cast<int>(v)) {
            throw std::invalid_argument(std::string(what) + ": integers expected");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

int run_validate(const CommonOptions& opts, const ValidateOptions& vo) {
    const auto config = load_config(opts);
    sweep::ValidationGrid grid;
    grid.users = parse_int_list(vo.grid_m, "--grid-m");
    grid.eves = parse_int_list(vo.grid_n, "--grid-n");
    grid.gamma_db = sweep::parse_values(vo.grid_gamma);
    sweep::ValidationOptions options;
    options.mc_samples = opts.samples;
    options.seed = effective_seed(opts.seed);
    options.num_streams = opts.streams;
    const auto outcome = sweep::run_validation(config, grid, options);
    sweep::print_validation_report(outcome, std::cout);
    return outcome.pass ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage probability of a keyhole multi-user system with multiple eavesdroppers"};
    app.require_subcommand(1);

    CommonOptions sop_opts;
    auto* sop = app.add_subcommand("sop", "single point, every method");
    add_common(sop, sop_opts);

    CommonOptions sweep_opts;
    SweepOptions sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep_cmd, sweep_opts);
    auto* recipe_opt = sweep_cmd->add_option("--recipe", sweep_args.recipe,
                                             "built-in recipe (fig2, fig3, fig4, fig5) or recipe file");
    sweep_cmd->add_option("--axis", sweep_args.axis, "gamma_bar_d_db, M, N, r_th or delta")
        ->excludes(recipe_opt);
    sweep_cmd->add_option("--values", sweep_args.values, "start:step:stop or comma list")
        ->excludes(recipe_opt);
    sweep_cmd->add_option("--methods", sweep_args.methods,
                          "comma list of closed_form, asymptotic, quadrature, monte_carlo")
        ->excludes(recipe_opt);
    sweep_cmd->add_option("--out", sweep_args.out, "CSV destination (default stdout)");
    sweep_cmd->add_option("--plot-script", sweep_args.plot_script,
                          "also write a gnuplot script for a recipe sweep")
        ->needs(recipe_opt);

    CommonOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate only");
    add_common(simulate, sim_opts);

    CommonOptions val_opts;
    ValidateOptions val_args;
    auto* validate_cmd = app.add_subcommand("validate", "three-way validation over a grid");
    add_common(validate_cmd, val_opts);
    validate_cmd->add_option("--grid-m", val_args.grid_m, "user counts")->capture_default_str();
    validate_cmd->add_option("--grid-n", val_args.grid_n, "eavesdropper counts")->capture_default_str();
    validate_cmd->add_option("--grid-gamma-db", val_args.grid_gamma, "average user SNRs in dB")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sop) return run_sop(sop_opts);
        if (*sweep_cmd) return run_sweep_cmd(sweep_opts, sweep_args, *sweep_cmd);
        if (*simulate) return run_simulate(sim_opts);
        if (*validate_cmd) return run_validate(val_opts, val_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
