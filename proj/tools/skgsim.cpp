// Command-line front end for the secret key generation simulator.
//
// Exit codes: 0 success, 1 invalid parameters or usage, 2 I/O failure,
// 3 self-test failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skg/channel.hpp"
#include "skg/config_file.hpp"
#include "skg/experiment.hpp"
#include "skg/theory.hpp"

namespace {

// Scenario flags shared by every simulating subcommand. Flags override the
// config file, and --no-ris overrides both (it is a mode, not a value).
struct ScenarioFlags {
    std::string config_path;
    std::optional<int> n_elements;
    std::optional<int> t_s;
    std::optional<int> q_levels;
    std::optional<double> snr_db;
    bool no_ris = false;
};

struct RunFlags {
    std::uint64_t seed = 1;
    std::uint64_t keys = 10000;
    int workers = 0;
    skg::EstimationMode mode = skg::EstimationMode::Reduced;
    std::string out;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "key=value parameter file (SystemParams field names)");
    cmd->add_option("--n-elements", flags.n_elements,
                    "reflecting element count (0 disables the surface)");
    cmd->add_option("--t-s", flags.t_s, "symbols per phase-switching period");
    cmd->add_option("--q", flags.q_levels, "phase quantizer levels");
    cmd->add_option("--snr-db", flags.snr_db,
                    "sets noise power to power/10^(snr/10)");
    cmd->add_flag("--no-ris", flags.no_ris,
                  "surface off, t_s = t_k, full-period pilot energy");
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--seed", flags.seed, "master seed")
        ->default_val(flags.seed);
    cmd->add_option("--keys", flags.keys, "Monte Carlo keys per point")
        ->default_val(flags.keys);
    cmd->add_option("--workers", flags.workers,
                    "worker threads (0 = all hardware threads)");
    static const std::map<std::string, skg::EstimationMode> modes = {
        {"reduced", skg::EstimationMode::Reduced},
        {"pilot", skg::EstimationMode::Pilot},
    };
    cmd->add_option("--mode", flags.mode,
                    "estimator model: reduced (error draw) or pilot (symbols)")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
}

skg::SystemParams build_params(const ScenarioFlags& flags) {
    skg::SystemParams p;
    // The published curve values count each estimate as its own key, so the
    // CLI defaults to single-block keys; a config file can still raise it.
    p.f_blocks = 1;
    if (!flags.config_path.empty())
        p = skg::load_config_file(flags.config_path, p);
    if (flags.n_elements) p.n_elements = *flags.n_elements;
    if (flags.t_s) p.t_s = *flags.t_s;
    if (flags.q_levels) p.q_levels = *flags.q_levels;
    if (flags.snr_db)
        p.noise_power = skg::snr_db_to_noise_power(*flags.snr_db, p.power);
    return p;
}

// A one-point sweep along n_elements; the Monte Carlo engine is shared with
// real sweeps so single-shot runs inherit its seeding and thread layout.
skg::ExperimentConfig single_point_config(const skg::SystemParams& params,
                                          const ScenarioFlags& scenario,
                                          const RunFlags& run) {
    skg::ExperimentConfig config;
    config.base = params;
    config.axis = skg::SweepAxis::NElements;
    config.sweep_values = {
        static_cast<double>(scenario.no_ris ? 0 : params.n_elements)};
    config.n_keys = run.keys;
    config.master_seed = run.seed;
    config.workers = run.workers;
    config.mode = run.mode;
    if (scenario.no_ris) {
        config.force_n_elements = 0;
        config.force_t_s = params.t_k;
        config.est_var_scale = 0.5;
    }
    return config;
}

void print_value(const char* name, double value) {
    std::printf("%s %.12g\n", name, value);
}

// Output paths may point into directories that do not exist yet.
void ensure_parent_dir(const std::string& path) {
    const std::filesystem::path parent =
        std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void maybe_write_csv(const skg::ExperimentResult& result,
                     const std::string& out) {
    if (out.empty()) return;
    ensure_parent_dir(out);
    skg::emit_csv(result, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secret key generation simulator: surface-assisted channel "
                 "probing, phase-quantized key agreement, and rate bounds"};
    app.require_subcommand(1);
    int exit_code = 0;

    // --- bound ------------------------------------------------------------
    auto* bound = app.add_subcommand(
        "bound", "print the secret key rate lower bound in bits per symbol");
    auto bound_scenario = std::make_shared<ScenarioFlags>();
    add_scenario_flags(bound, *bound_scenario);
    bound->callback([bound_scenario] {
        skg::SystemParams p = build_params(*bound_scenario);
        double scale = 1.0;
        if (bound_scenario->no_ris) {
            p.n_elements = 0;
            p.t_s = p.t_k;
            scale = 0.5;
        }
        const skg::DerivedParams d = skg::validate(p);
        const double rho = skg::channel_covariances(p).rho_ab;
        std::printf("%.12g\n",
                    skg::skr_lower_bound(rho, scale * d.est_noise_var, p.t_s));
    });

    // --- kmr / throughput ---------------------------------------------------
    struct SingleCmd {
        const char* name;
        const char* help;
        bool lead_with_throughput;
    };
    for (const SingleCmd entry :
         {SingleCmd{"kmr", "estimate the key mismatch rate at one "
                           "operating point", false},
          SingleCmd{"throughput", "estimate average key throughput at one "
                                  "operating point", true}}) {
        auto* cmd = app.add_subcommand(entry.name, entry.help);
        auto scenario = std::make_shared<ScenarioFlags>();
        auto run = std::make_shared<RunFlags>();
        add_scenario_flags(cmd, *scenario);
        add_run_flags(cmd, *run);
        cmd->add_option("--out", run->out, "also write the row as CSV");
        const bool lead = entry.lead_with_throughput;
        cmd->callback([scenario, run, lead] {
            const skg::SystemParams p = build_params(*scenario);
            const skg::ExperimentConfig config =
                single_point_config(p, *scenario, *run);
            const skg::ResultRow row = skg::run_point(config, 0);
            if (lead) {
                print_value("throughput_bits_per_symbol",
                            row.throughput_bits_per_symbol);
                print_value("mean_handshakes", row.mean_handshakes);
                print_value("kmr", row.kmr);
            } else {
                print_value("kmr", row.kmr);
                print_value("match_prob", row.match_prob);
                print_value("per_estimate_match", row.per_estimate_match);
            }
            print_value("ci_halfwidth", row.ci_halfwidth);
            std::printf("n_keys %llu\n",
                        static_cast<unsigned long long>(row.n_keys));
            maybe_write_csv({config.axis, {row}}, run->out);
        });
    }

    // --- sweep --------------------------------------------------------------
    auto* sweep = app.add_subcommand(
        "sweep", "Monte Carlo sweep over one parameter axis, CSV out");
    auto sweep_scenario = std::make_shared<ScenarioFlags>();
    auto sweep_run = std::make_shared<RunFlags>();
    auto sweep_axis = std::make_shared<std::string>();
    auto sweep_values = std::make_shared<std::vector<double>>();
    auto sweep_theory = std::make_shared<bool>(false);
    add_scenario_flags(sweep, *sweep_scenario);
    add_run_flags(sweep, *sweep_run);
    sweep->add_option("--axis", *sweep_axis,
                      "n_elements | snr_db | t_s | q_levels")
        ->required();
    sweep->add_option("--values", *sweep_values, "sweep ticks along the axis")
        ->required()
        ->delimiter(',');
    sweep->add_flag("--theory", *sweep_theory,
                    "attach the rate lower bound column");
    sweep->add_option("--out", sweep_run->out, "CSV path (default stdout)");
    sweep->callback([sweep_scenario, sweep_run, sweep_axis, sweep_values,
                     sweep_theory] {
        skg::ExperimentConfig config;
        config.base = build_params(*sweep_scenario);
        config.axis = skg::axis_from_name(*sweep_axis);
        config.sweep_values = *sweep_values;
        config.n_keys = sweep_run->keys;
        config.master_seed = sweep_run->seed;
        config.workers = sweep_run->workers;
        config.mode = sweep_run->mode;
        config.include_theory = *sweep_theory;
        if (sweep_scenario->no_ris) {
            config.force_n_elements = 0;
            config.force_t_s = config.base.t_k;
            config.est_var_scale = 0.5;
        }
        const skg::ExperimentResult result = skg::run_sweep(config);
        if (sweep_run->out.empty())
            skg::emit_csv(result, std::cout);
        else
            skg::emit_csv(result, sweep_run->out);
    });

    // --- figure -------------------------------------------------------------
    auto* figure = app.add_subcommand(
        "figure", "run a preset curve family, one CSV per curve");
    auto fig_name = std::make_shared<std::string>();
    auto fig_run = std::make_shared<RunFlags>();
    auto fig_elements = std::make_shared<std::optional<int>>();
    figure->add_option("name", *fig_name, "fig3 | fig4 | fig5 | fig6")
        ->required();
    add_run_flags(figure, *fig_run);
    figure->add_option("--n-elements", *fig_elements,
                       "override the element count the SNR sweeps hold fixed");
    figure->add_option("--out", fig_run->out,
                       "output path prefix (default: current directory)");
    figure->callback([fig_name, fig_run, fig_elements] {
        std::vector<skg::FigureCurve> curves = skg::figure_preset(*fig_name);
        for (skg::FigureCurve& curve : curves) {
            curve.config.n_keys = fig_run->keys;
            curve.config.master_seed = fig_run->seed;
            curve.config.workers = fig_run->workers;
            curve.config.mode = fig_run->mode;
            if (*fig_elements) curve.config.base.n_elements = **fig_elements;
            const skg::ExperimentResult result = skg::run_sweep(curve.config);
            const std::string path =
                fig_run->out + *fig_name + "_" + curve.label + ".csv";
            ensure_parent_dir(path);
            skg::emit_csv(result, path);
            std::printf("wrote %s (%zu points)\n", path.c_str(),
                        result.rows.size());
        }
    });

    // --- selftest -----------------------------------------------------------
    auto* selftest = app.add_subcommand(
        "selftest", "internal consistency checks (bound vs oracle, "
                    "throughput identity, quantizer nesting)");
    selftest->callback([&exit_code] {
        if (!skg::run_selftest(std::cout)) exit_code = 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const skg::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
