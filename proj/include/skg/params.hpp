#ifndef SKG_PARAMS_HPP
#define SKG_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace skg {

// System configuration for one simulated link.
//
// Defaults are the baseline operating point used throughout the test suite:
// key-generation phase of t_k = 40 symbols, f_blocks = 100 fading blocks per
// key, unit transmit power, unit noise power (0 dB), unit direct path gains
// and 0.7 on every surface segment. n_elements = 0 turns the surface off.
struct SystemParams {
    int n_elements = 64;   // reflecting elements, 0 disables the surface
    int t_k = 40;          // key-generation symbols per fading block
    int t_s = 2;           // symbols per phase-switching period, even
    int f_blocks = 100;    // fading blocks combined into one key
    int q_levels = 2;      // phase quantizer levels, power of two
    double power = 1.0;        // pilot transmit power
    double noise_power = 1.0;  // receiver noise power per symbol
    double beta_ab = 1.0;  // direct Alice-Bob path gain
    double beta_ae = 1.0;  // direct Alice-Eve path gain
    double beta_be = 1.0;  // direct Bob-Eve path gain
    double beta_ar = 0.7;  // Alice-surface segment gain
    double beta_rb = 0.7;  // surface-Bob segment gain
    double beta_re = 0.7;  // surface-Eve segment gain
};

// Quantities derived from a validated SystemParams. Immutable afterwards.
struct DerivedParams {
    double est_noise_var;   // LS estimation error variance 2*noise/(t_s*power)
    int periods_per_block;  // M = t_k / t_s switching periods per block
    int bits_per_level;     // log2(q_levels)
    int key_len_bits;       // L = f_blocks * log2(q_levels)
    double snr_linear;      // power / noise_power, +inf when noiseless
};

enum class ParamError {
    NElementsNegative,
    TsOutOfRange,
    TsNotDividingTk,
    TsNotEven,
    FBlocksTooSmall,
    QOutOfRange,
    QNotPowerOfTwo,
    PowerNotPositive,
    NoisePowerNegative,
    BetaNegative,
    ConfigParse,  // malformed config file line or CLI sweep token
};

// Stable parse/log token for each violation, e.g. "TS_NOT_DIVIDING_TK".
const char* param_error_name(ParamError code);

class ValidationError : public std::runtime_error {
public:
    ValidationError(ParamError code, const std::string& detail);
    ParamError code() const { return code_; }

private:
    ParamError code_;
};

// Checks every invariant and returns the derived quantities.
// Total: any input either yields a DerivedParams or throws a ValidationError
// carrying exactly one violation (the first in a fixed check order, so the
// same bad input always names the same error).
DerivedParams validate(const SystemParams& params);

// Noise power that realizes the given SNR in dB at the given transmit power:
// power / 10^(snr_db / 10).
double snr_db_to_noise_power(double snr_db, double power);

}  // namespace skg

#endif
