#ifndef SKG_EXPERIMENT_HPP
#define SKG_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/errors.hpp"
#include "skg/estimation.hpp"
#include "skg/keygen.hpp"
#include "skg/params.hpp"

namespace skg {

enum class SweepAxis { NElements, SnrDb, Ts, QLevels };

// CSV token for each axis: n_elements, snr_db, t_s, q_levels.
std::string_view axis_name(SweepAxis axis);
SweepAxis axis_from_name(std::string_view name);  // throws ValidationError

// One Monte Carlo sweep: a base configuration, an axis whose values replace
// the corresponding base field point by point, and sampling controls.
//
// The force_* overrides are applied after sweep substitution; curve presets
// use them to hold one parameter fixed while the shared axis advances (the
// surface-off baseline, for instance, pins n_elements = 0 across an element
// sweep and its rows keep the nominal sweep value).
//
// est_var_scale multiplies the estimation-error variance used by the
// simulation (and by the theory column). The non-switching configurations
// (t_s = t_k, surface off) are conventionally run with 0.5: each node's
// estimate is backed by the full switching period's pilot energy t_s*power
// instead of the half-period (t_s/2)*power that time-shared probing implies.
//
// snr_ticks_are_amplitude_db selects the dB mapping of an snr_db sweep:
// false maps a tick x to noise power/10^(x/10); the fig4/fig6 presets set
// true, mapping to power/10^(x/20).
struct ExperimentConfig {
    SystemParams base{};
    SweepAxis axis = SweepAxis::NElements;
    std::vector<double> sweep_values;
    std::uint64_t n_keys = 10000;
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    EstimationMode mode = EstimationMode::Reduced;
    bool include_theory = false;
    double est_var_scale = 1.0;
    bool snr_ticks_are_amplitude_db = false;
    std::optional<int> force_n_elements;
    std::optional<int> force_t_s;
    std::optional<int> force_q;
};

struct ResultRow {
    double sweep_value;
    std::uint64_t n_keys;  // keys actually pooled (trials * periods_per_block)
    double kmr;
    double match_prob;
    double per_estimate_match;
    double mean_handshakes;
    double throughput_bits_per_symbol;
    std::optional<double> theory_bound_bits_per_symbol;
    double ci_halfwidth;
    std::uint64_t seed;  // master seed, for provenance
};

struct ExperimentResult {
    SweepAxis axis;
    std::vector<ResultRow> rows;  // sweep order
};

// The base parameters with sweep value and forces applied, not yet validated.
SystemParams apply_sweep_value(const ExperimentConfig& config, double value);

// Runs every trial of one sweep point and pools the statistics. A trial is
// one round of f_blocks fading blocks yielding periods_per_block keys;
// requested n_keys is rounded up to whole trials. Each trial consumes its own
// RNG substream (master_seed, point_index||trial), so the result is
// bit-identical for any worker count. Validation failures are rethrown with
// the offending sweep value named.
ResultRow run_point(const ExperimentConfig& config, std::size_t point_index);

// All points in order. Aborts on the first failing point.
ExperimentResult run_sweep(const ExperimentConfig& config);

// CSV with a fixed column set; numbers carry 12 significant digits. The
// theory column is empty when the bound was not requested. The byte stream
// is a pure function of the result, so identical runs diff empty.
void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv(const ExperimentResult& result, const std::string& path);
std::string csv_string(const ExperimentResult& result);

// A named family of sweeps sharing one axis, as plotted figures group curves.
struct FigureCurve {
    std::string label;
    ExperimentConfig config;
};

// Preset curve families fig3..fig6 (element sweeps for fig3/fig5, SNR sweeps
// at n_elements = 64 for fig4/fig6; fig5/fig6 add the theory column on their
// fastest-switching curve). Unknown names throw ValidationError.
std::vector<FigureCurve> figure_preset(std::string_view name);

// Quick internal consistency suite (theorem vs oracle, throughput identity,
// quantizer nesting). Prints one line per check; returns overall success.
bool run_selftest(std::ostream& out);

}  // namespace skg

#endif
