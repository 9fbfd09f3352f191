#include "skg/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace skg {

cplx estimate_reduced(RandomSource& rng, cplx g_true, double est_noise_var) {
    if (est_noise_var < 0.0)
        throw std::domain_error("estimate_reduced: negative noise variance");
    return g_true + rng.complex_normal(est_noise_var);
}

cplx estimate_pilot_seq(RandomSource& rng, cplx g_true,
                        std::span<const cplx> pilots, double noise_power) {
    if (pilots.empty())
        throw std::domain_error("estimate_pilot_seq: empty pilot sequence");
    if (noise_power < 0.0)
        throw std::domain_error("estimate_pilot_seq: negative noise power");
    cplx numerator = 0.0;
    double energy = 0.0;
    for (const cplx& x : pilots) {
        const cplx y = g_true * x + rng.complex_normal(noise_power);
        numerator += std::conj(x) * y;
        energy += std::norm(x);
    }
    if (energy == 0.0)
        throw std::domain_error("estimate_pilot_seq: zero pilot energy");
    return numerator / energy;
}

cplx estimate_pilot(RandomSource& rng, cplx g_true, int t_s, double power,
                    double noise_power) {
    if (t_s < 2 || t_s % 2 != 0)
        throw std::domain_error("estimate_pilot: t_s must be even and >= 2");
    if (!(power > 0.0))
        throw std::domain_error("estimate_pilot: power must be positive");
    // Each node transmits during half the period, so t_s/2 pilot symbols back
    // one estimate; with constant sqrt(power) pilots the error variance is
    // noise_power / ((t_s/2) * power) = 2*noise_power/(t_s*power).
    const std::vector<cplx> pilots(static_cast<std::size_t>(t_s / 2),
                                   cplx(std::sqrt(power), 0.0));
    return estimate_pilot_seq(rng, g_true, pilots, noise_power);
}

EstimateSet run_round(RandomSource& rng, const ChannelBlock& block,
                      const RisSchedule& schedule, const SystemParams& params,
                      EstimationMode mode, double noise_param) {
    const int periods = schedule.periods();
    EstimateSet set;
    set.g_hat_ba.reserve(periods);
    set.g_hat_ab.reserve(periods);
    set.g_hat_ae.reserve(periods);
    set.g_hat_be.reserve(periods);

    for (int l = 0; l < periods; ++l) {
        const cplx g_ab = aggregate(block, schedule, l, Link::AliceBob);
        const cplx g_ae = aggregate(block, schedule, l, Link::AliceEve);
        const cplx g_be = aggregate(block, schedule, l, Link::BobEve);
        if (mode == EstimationMode::Reduced) {
            set.g_hat_ba.push_back(estimate_reduced(rng, g_ab, noise_param));
            set.g_hat_ab.push_back(estimate_reduced(rng, g_ab, noise_param));
            set.g_hat_ae.push_back(estimate_reduced(rng, g_ae, noise_param));
            set.g_hat_be.push_back(estimate_reduced(rng, g_be, noise_param));
        } else {
            set.g_hat_ba.push_back(
                estimate_pilot(rng, g_ab, params.t_s, params.power, noise_param));
            set.g_hat_ab.push_back(
                estimate_pilot(rng, g_ab, params.t_s, params.power, noise_param));
            set.g_hat_ae.push_back(
                estimate_pilot(rng, g_ae, params.t_s, params.power, noise_param));
            set.g_hat_be.push_back(
                estimate_pilot(rng, g_be, params.t_s, params.power, noise_param));
        }
    }
    return set;
}

EstimateSet run_round(RandomSource& rng, const ChannelBlock& block,
                      const RisSchedule& schedule, const SystemParams& params,
                      const DerivedParams& derived) {
    return run_round(rng, block, schedule, params, EstimationMode::Reduced,
                     derived.est_noise_var);
}

}  // namespace skg
