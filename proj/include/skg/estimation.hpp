#ifndef SKG_ESTIMATION_HPP
#define SKG_ESTIMATION_HPP

#include <complex>
#include <span>
#include <vector>

#include "skg/channel.hpp"
#include "skg/params.hpp"
#include "skg/rng.hpp"

namespace skg {

// Reduced: add one complex Gaussian of the LS error variance per estimate.
// Pilot: simulate the t_s/2 pilot symbols and run the LS estimator.
// Both produce the same estimate distribution; Reduced is the default and
// Pilot is kept selectable to demonstrate that equivalence.
enum class EstimationMode { Reduced, Pilot };

// The four observers' channel estimates for every switching period of one
// block, index-aligned: entry l of each vector belongs to period l.
// g_hat_ba is Alice's estimate, g_hat_ab Bob's; g_hat_ae and g_hat_be are
// Eve's estimates of her two links.
struct EstimateSet {
    std::vector<cplx> g_hat_ba;
    std::vector<cplx> g_hat_ab;
    std::vector<cplx> g_hat_ae;
    std::vector<cplx> g_hat_be;
};

// True value plus one noise draw of the given variance.
cplx estimate_reduced(RandomSource& rng, cplx g_true, double est_noise_var);

// LS estimate x^H y / ||x||^2 from an explicit pilot sequence, with per-symbol
// receiver noise of the given power. Error variance is noise_power/||x||^2
// for any pilot sequence.
cplx estimate_pilot_seq(RandomSource& rng, cplx g_true,
                        std::span<const cplx> pilots, double noise_power);

// LS estimate from t_s/2 constant-modulus pilots of power `power`, the
// default pilot shape. Error variance is exactly 2*noise_power/(t_s*power).
cplx estimate_pilot(RandomSource& rng, cplx g_true, int t_s, double power,
                    double noise_power);

// One probing round over all switching periods of a block: computes the true
// aggregates and applies independent estimation noise per observer. Draw
// order per period: Alice, Bob, Eve(ae), Eve(be). noise_param is the estimate
// error variance in Reduced mode and the per-symbol noise power in Pilot mode.
EstimateSet run_round(RandomSource& rng, const ChannelBlock& block,
                      const RisSchedule& schedule, const SystemParams& params,
                      EstimationMode mode, double noise_param);

// Same, in Reduced mode with the validated error variance.
EstimateSet run_round(RandomSource& rng, const ChannelBlock& block,
                      const RisSchedule& schedule, const SystemParams& params,
                      const DerivedParams& derived);

}  // namespace skg

#endif
