#include "skg/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "skg/channel.hpp"
#include "skg/theory.hpp"

namespace skg {

std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::NElements: return "n_elements";
        case SweepAxis::SnrDb: return "snr_db";
        case SweepAxis::Ts: return "t_s";
        case SweepAxis::QLevels: return "q_levels";
    }
    return "unknown";
}

SweepAxis axis_from_name(std::string_view name) {
    if (name == "n_elements") return SweepAxis::NElements;
    if (name == "snr_db") return SweepAxis::SnrDb;
    if (name == "t_s") return SweepAxis::Ts;
    if (name == "q_levels") return SweepAxis::QLevels;
    throw ValidationError(ParamError::ConfigParse,
                          "unknown sweep axis '" + std::string(name) + "'");
}

namespace {

// Integer-valued axes reject fractional sweep values up front; a truncated
// 10.5 silently simulating 10 would be worse than an error.
int as_int(double value, const char* what) {
    const double rounded = std::nearbyint(value);
    if (!(std::abs(value - rounded) < 1e-9) || std::abs(value) > 1e9)
        throw std::invalid_argument(std::string(what) +
                                    " sweep value must be an integer");
    return static_cast<int>(rounded);
}

}  // namespace

SystemParams apply_sweep_value(const ExperimentConfig& config, double value) {
    SystemParams p = config.base;
    switch (config.axis) {
        case SweepAxis::NElements:
            p.n_elements = as_int(value, "n_elements");
            break;
        case SweepAxis::SnrDb:
            p.noise_power =
                config.snr_ticks_are_amplitude_db
                    ? p.power / std::pow(10.0, value / 20.0)
                    : snr_db_to_noise_power(value, p.power);
            break;
        case SweepAxis::Ts:
            p.t_s = as_int(value, "t_s");
            break;
        case SweepAxis::QLevels:
            p.q_levels = as_int(value, "q_levels");
            break;
    }
    if (config.force_n_elements) p.n_elements = *config.force_n_elements;
    if (config.force_t_s) p.t_s = *config.force_t_s;
    if (config.force_q) p.q_levels = *config.force_q;
    return p;
}

namespace {

// 12 significant digits, shortest form; enough to reconstruct the double to
// CSV-comparison precision and stable across runs.
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// One trial: f_blocks probing rounds, one key per switching period.
MatchCounts run_trial(RandomSource& rng, const SystemParams& params,
                      const DerivedParams& derived, EstimationMode mode,
                      double noise_param) {
    std::vector<EstimateSet> rounds;
    rounds.reserve(params.f_blocks);
    for (int f = 0; f < params.f_blocks; ++f) {
        const ChannelBlock block = sample_block(rng, params);
        const RisSchedule schedule = sample_schedule(
            rng, derived.periods_per_block, params.n_elements);
        rounds.push_back(
            run_round(rng, block, schedule, params, mode, noise_param));
    }
    const auto [alice, bob] = assemble_keys(rounds, params, derived);
    return count_matches(alice, bob);
}

}  // namespace

ResultRow run_point(const ExperimentConfig& config, std::size_t point_index) {
    if (point_index >= config.sweep_values.size())
        throw std::out_of_range("run_point: point index out of range");
    const double value = config.sweep_values[point_index];

    SystemParams params;
    DerivedParams derived;
    try {
        params = apply_sweep_value(config, value);
        derived = validate(params);
    } catch (const ValidationError& e) {
        // what() is "NAME: detail"; re-wrap only the detail so the rebuilt
        // message keeps a single code prefix.
        std::string detail = e.what();
        const std::string prefix = std::string(param_error_name(e.code())) + ": ";
        if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
        throw ValidationError(e.code(), detail + " (at " +
                                            std::string(axis_name(config.axis)) +
                                            " = " + fmt(value) + ")");
    }
    if (!(config.est_var_scale > 0.0))
        throw std::invalid_argument("run_point: est_var_scale must be > 0");

    // Reduced mode consumes the estimate error variance directly; pilot mode
    // consumes per-symbol noise power. Scaling either by est_var_scale scales
    // the resulting estimate error variance by the same factor.
    const double noise_param =
        config.mode == EstimationMode::Reduced
            ? config.est_var_scale * derived.est_noise_var
            : config.est_var_scale * params.noise_power;

    const std::uint64_t m = static_cast<std::uint64_t>(derived.periods_per_block);
    const std::uint64_t trials = (config.n_keys + m - 1) / m;
    if (trials > 0xffffffffULL || point_index > 0xffffffffULL)
        throw std::invalid_argument("run_point: trial/point count exceeds 2^32");

    unsigned workers = config.workers > 0
                           ? static_cast<unsigned>(config.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    if (workers > trials) workers = static_cast<unsigned>(trials);
    if (workers == 0) workers = 1;

    // Each trial owns substream (seed, point||trial), so the partition of
    // trials onto threads cannot change any sample; integer merges make the
    // totals order-independent too.
    std::vector<MatchCounts> partial(workers);
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                MatchCounts local;
                for (std::uint64_t t = w; t < trials; t += workers) {
                    RandomSource rng(config.master_seed,
                                     substream_id(point_index, t));
                    local += run_trial(rng, params, derived, config.mode,
                                       noise_param);
                }
                partial[w] = local;
            });
        }
        for (auto& thread : pool) thread.join();
    }
    MatchCounts total;
    for (const MatchCounts& c : partial) total += c;

    const ProtocolStats stats = make_stats(total, params, derived);
    ResultRow row;
    row.sweep_value = value;
    row.n_keys = stats.n_keys;
    row.kmr = stats.kmr_hat;
    row.match_prob = stats.match_prob_hat;
    row.per_estimate_match = stats.per_estimate_match_hat;
    row.mean_handshakes = stats.mean_handshakes;
    row.throughput_bits_per_symbol = stats.throughput_bits_per_symbol;
    if (config.include_theory)
        row.theory_bound_bits_per_symbol =
            skr_lower_bound(channel_covariances(params).rho_ab,
                            config.est_var_scale * derived.est_noise_var,
                            params.t_s);
    row.ci_halfwidth = stats.ci_halfwidth;
    row.seed = config.master_seed;
    return row;
}

ExperimentResult run_sweep(const ExperimentConfig& config) {
    if (config.sweep_values.empty())
        throw std::invalid_argument("run_sweep: empty sweep value list");
    ExperimentResult result;
    result.axis = config.axis;
    result.rows.reserve(config.sweep_values.size());
    for (std::size_t i = 0; i < config.sweep_values.size(); ++i)
        result.rows.push_back(run_point(config, i));
    return result;
}

std::string csv_string(const ExperimentResult& result) {
    std::ostringstream out;
    out << "sweep_axis,sweep_value,n_keys,kmr,match_prob,per_estimate_match,"
           "mean_handshakes,throughput_bits_per_symbol,"
           "theory_bound_bits_per_symbol,ci_halfwidth,seed\n";
    for (const ResultRow& row : result.rows) {
        out << axis_name(result.axis) << ',' << fmt(row.sweep_value) << ','
            << row.n_keys << ',' << fmt(row.kmr) << ',' << fmt(row.match_prob)
            << ',' << fmt(row.per_estimate_match) << ','
            << fmt(row.mean_handshakes) << ','
            << fmt(row.throughput_bits_per_symbol) << ',';
        if (row.theory_bound_bits_per_symbol)
            out << fmt(*row.theory_bound_bits_per_symbol);
        out << ',' << fmt(row.ci_halfwidth) << ',' << row.seed << '\n';
    }
    return out.str();
}

void emit_csv(const ExperimentResult& result, std::ostream& out) {
    out << csv_string(result);
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << csv_string(result);
    file.flush();
    if (!file) throw IoError("write failed for '" + path + "'");
}

namespace {

// Shared base for every preset: trials of a single fading block, so the
// reported key statistics are per-estimate quantities, the form the curve
// families tabulate. Multi-block keys remain available through f_blocks.
SystemParams preset_base() {
    SystemParams p;
    p.f_blocks = 1;
    return p;
}

std::vector<FigureCurve> element_sweep_preset(bool with_theory) {
    const std::vector<double> elements = {1, 11, 21, 31, 41, 51, 61};
    SystemParams base = preset_base();
    base.q_levels = 2;

    ExperimentConfig fast;
    fast.base = base;
    fast.axis = SweepAxis::NElements;
    fast.sweep_values = elements;
    fast.force_t_s = 2;
    fast.include_theory = with_theory;

    ExperimentConfig slow = fast;
    slow.force_t_s = 10;
    slow.include_theory = false;

    // Non-switching configurations carry the full-period pilot-energy
    // convention (see ExperimentConfig).
    ExperimentConfig none = fast;
    none.force_t_s = base.t_k;
    none.include_theory = false;
    none.est_var_scale = 0.5;

    ExperimentConfig off = none;
    off.force_n_elements = 0;

    return {{"ris_ts2", fast},
            {"ris_ts10", slow},
            {"ris_ts_tk", none},
            {"no_ris", off}};
}

std::vector<FigureCurve> snr_sweep_preset(bool with_theory) {
    std::vector<double> ticks;
    for (int db = -20; db <= 40; db += 5) ticks.push_back(db);
    SystemParams base = preset_base();
    base.n_elements = 64;

    ExperimentConfig q2;
    q2.base = base;
    q2.axis = SweepAxis::SnrDb;
    q2.sweep_values = ticks;
    q2.snr_ticks_are_amplitude_db = true;
    q2.force_t_s = 2;
    q2.force_q = 2;
    q2.include_theory = with_theory;

    ExperimentConfig q4 = q2;
    q4.force_q = 4;
    q4.include_theory = false;

    ExperimentConfig q8 = q2;
    q8.force_q = 8;
    q8.include_theory = false;

    ExperimentConfig none = q2;
    none.force_t_s = base.t_k;
    none.force_q = 2;
    none.include_theory = false;
    none.est_var_scale = 0.5;

    ExperimentConfig off = none;
    off.force_n_elements = 0;

    return {{"ris_ts2_q2", q2},
            {"ris_ts2_q4", q4},
            {"ris_ts2_q8", q8},
            {"ris_ts_tk", none},
            {"no_ris", off}};
}

}  // namespace

std::vector<FigureCurve> figure_preset(std::string_view name) {
    if (name == "fig3") return element_sweep_preset(false);
    if (name == "fig5") return element_sweep_preset(true);
    if (name == "fig4") return snr_sweep_preset(false);
    if (name == "fig6") return snr_sweep_preset(true);
    throw ValidationError(ParamError::ConfigParse,
                          "unknown figure preset '" + std::string(name) + "'");
}

bool run_selftest(std::ostream& out) {
    bool all_ok = true;
    const auto report = [&](const char* name, bool ok) {
        out << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        all_ok = all_ok && ok;
    };

    // Closed-form bound against the log-det route over random draws.
    {
        RandomSource rng(20240817, 0);
        bool ok = true;
        for (int i = 0; i < 1000 && ok; ++i) {
            SystemParams p;
            p.beta_ab = 2.0 * (1.0 - rng.uniform());
            p.beta_ar = 2.0 * (1.0 - rng.uniform());
            p.beta_rb = 2.0 * (1.0 - rng.uniform());
            p.n_elements = static_cast<int>(rng.uniform() * 257.0);
            p.t_s = 2 * (1 + static_cast<int>(rng.uniform() * 20.0));
            p.t_k = p.t_s;
            p.f_blocks = 1;
            p.noise_power = std::pow(10.0, -4.0 + 6.0 * rng.uniform());
            const DerivedParams d = validate(p);
            const GaussianJointModel model = build_joint_model(p, d);
            const double bound = skr_lower_bound(p, d);
            const double oracle = mi_oracle(model, p.t_s);
            ok = std::abs(bound - oracle) <= 1e-9 &&
                 detail::gaussian_mi_bits_1v2(model.cov_with_eve) == 0.0;
        }
        report("theorem value matches log-det oracle within 1e-9", ok);
    }

    // Throughput identity on a small sweep.
    {
        ExperimentConfig config;
        config.base = preset_base();
        config.axis = SweepAxis::NElements;
        config.sweep_values = {0, 8};
        config.n_keys = 2000;
        config.master_seed = 7;
        const ExperimentResult result = run_sweep(config);
        bool ok = true;
        for (const ResultRow& row : result.rows) {
            const double lhs = row.throughput_bits_per_symbol;
            const double rhs = row.match_prob * 1.0 / (2.0 / 2.0);
            ok = ok && lhs == rhs && row.kmr == 1.0 - row.match_prob;
        }
        report("throughput equals match_prob * log2(q)/(t_s/2) exactly", ok);
    }

    // Quantizer bin nesting on a dense grid.
    {
        bool ok = true;
        constexpr int kGrid = 100000;
        for (int i = 0; i < kGrid && ok; ++i) {
            const double theta =
                (2.0 * std::numbers::pi) * (static_cast<double>(i) / kGrid);
            for (int q = 2; q <= 8; q *= 2) {
                const int coarse = quantize_phase(theta, q);
                const int fine = quantize_phase(theta, 2 * q);
                ok = ok && coarse == (fine + 1) / 2;
            }
        }
        report("quantizer bins nest across q doublings", ok);
    }

    return all_ok;
}

}  // namespace skg
