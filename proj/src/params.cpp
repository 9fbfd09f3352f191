#include "skg/params.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace skg {

const char* param_error_name(ParamError code) {
    switch (code) {
        case ParamError::NElementsNegative: return "N_ELEMENTS_NEGATIVE";
        case ParamError::TsOutOfRange: return "TS_OUT_OF_RANGE";
        case ParamError::TsNotDividingTk: return "TS_NOT_DIVIDING_TK";
        case ParamError::TsNotEven: return "TS_NOT_EVEN";
        case ParamError::FBlocksTooSmall: return "F_BLOCKS_TOO_SMALL";
        case ParamError::QOutOfRange: return "Q_OUT_OF_RANGE";
        case ParamError::QNotPowerOfTwo: return "Q_NOT_POWER_OF_TWO";
        case ParamError::PowerNotPositive: return "POWER_NOT_POSITIVE";
        case ParamError::NoisePowerNegative: return "NOISE_POWER_NEGATIVE";
        case ParamError::BetaNegative: return "BETA_NEGATIVE";
        case ParamError::ConfigParse: return "CONFIG_PARSE";
    }
    return "UNKNOWN";
}

ValidationError::ValidationError(ParamError code, const std::string& detail)
    : std::runtime_error(std::string(param_error_name(code)) + ": " + detail),
      code_(code) {}

namespace {

// NaN must fail too, so test the accepting predicate and negate.
bool is_nonnegative(double x) { return x >= 0.0; }

}  // namespace

DerivedParams validate(const SystemParams& p) {
    if (p.n_elements < 0)
        throw ValidationError(ParamError::NElementsNegative,
                              "n_elements = " + std::to_string(p.n_elements));
    // Range before divisibility before parity, so each bad t_s names one error.
    if (p.t_s < 2 || p.t_s > p.t_k)
        throw ValidationError(ParamError::TsOutOfRange,
                              "t_s = " + std::to_string(p.t_s) + ", t_k = " +
                                  std::to_string(p.t_k));
    if (p.t_k % p.t_s != 0)
        throw ValidationError(ParamError::TsNotDividingTk,
                              "t_s = " + std::to_string(p.t_s) +
                                  " does not divide t_k = " +
                                  std::to_string(p.t_k));
    if (p.t_s % 2 != 0)
        throw ValidationError(ParamError::TsNotEven,
                              "t_s = " + std::to_string(p.t_s));
    if (p.f_blocks < 1)
        throw ValidationError(ParamError::FBlocksTooSmall,
                              "f_blocks = " + std::to_string(p.f_blocks));
    if (p.q_levels < 2)
        throw ValidationError(ParamError::QOutOfRange,
                              "q_levels = " + std::to_string(p.q_levels));
    if (!std::has_single_bit(static_cast<unsigned>(p.q_levels)))
        throw ValidationError(ParamError::QNotPowerOfTwo,
                              "q_levels = " + std::to_string(p.q_levels));
    if (!(p.power > 0.0))
        throw ValidationError(ParamError::PowerNotPositive,
                              "power = " + std::to_string(p.power));
    if (!is_nonnegative(p.noise_power))
        throw ValidationError(ParamError::NoisePowerNegative,
                              "noise_power = " + std::to_string(p.noise_power));
    const struct { const char* name; double value; } betas[] = {
        {"beta_ab", p.beta_ab}, {"beta_ae", p.beta_ae}, {"beta_be", p.beta_be},
        {"beta_ar", p.beta_ar}, {"beta_rb", p.beta_rb}, {"beta_re", p.beta_re},
    };
    for (const auto& b : betas) {
        if (!is_nonnegative(b.value))
            throw ValidationError(ParamError::BetaNegative,
                                  std::string(b.name) + " = " +
                                      std::to_string(b.value));
    }

    DerivedParams d;
    d.est_noise_var = 2.0 * p.noise_power / (static_cast<double>(p.t_s) * p.power);
    d.periods_per_block = p.t_k / p.t_s;
    d.bits_per_level = std::bit_width(static_cast<unsigned>(p.q_levels)) - 1;
    d.key_len_bits = p.f_blocks * d.bits_per_level;
    d.snr_linear = p.noise_power > 0.0
                       ? p.power / p.noise_power
                       : std::numeric_limits<double>::infinity();
    return d;
}

double snr_db_to_noise_power(double snr_db, double power) {
    return power / std::pow(10.0, snr_db / 10.0);
}

}  // namespace skg
