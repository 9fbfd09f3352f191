#include "skg/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace skg {

RisSchedule::RisSchedule(int periods, int elements)
    : periods_(periods),
      elements_(elements),
      phases_(static_cast<std::size_t>(periods) * elements, 0.0) {
    if (periods < 0 || elements < 0)
        throw std::invalid_argument("RisSchedule: negative dimension");
}

ChannelBlock sample_block(RandomSource& rng, const SystemParams& params) {
    ChannelBlock block;
    block.h_ab = rng.complex_normal(params.beta_ab);
    block.h_ae = rng.complex_normal(params.beta_ae);
    block.h_be = rng.complex_normal(params.beta_be);
    const int n = params.n_elements;
    block.h_ar.reserve(n);
    block.h_br.reserve(n);
    block.h_re.reserve(n);
    for (int i = 0; i < n; ++i) block.h_ar.push_back(rng.complex_normal(params.beta_ar));
    for (int i = 0; i < n; ++i) block.h_br.push_back(rng.complex_normal(params.beta_rb));
    for (int i = 0; i < n; ++i) block.h_re.push_back(rng.complex_normal(params.beta_re));
    return block;
}

RisSchedule sample_schedule(RandomSource& rng, int periods, int elements) {
    RisSchedule schedule(periods, elements);
    for (int l = 0; l < periods; ++l)
        for (int n = 0; n < elements; ++n)
            schedule.phase(l, n) = rng.uniform_angle();
    return schedule;
}

cplx aggregate(const ChannelBlock& block, const RisSchedule& schedule,
               int period, Link link) {
    const int n = schedule.elements();
    if (static_cast<int>(block.h_ar.size()) != n ||
        static_cast<int>(block.h_br.size()) != n ||
        static_cast<int>(block.h_re.size()) != n)
        throw std::invalid_argument("aggregate: block/schedule element mismatch");
    if (period < 0 || period >= schedule.periods())
        throw std::out_of_range("aggregate: period index out of range");

    cplx direct;
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = schedule.phase(period, i);
        const cplx phasor(std::cos(theta), std::sin(theta));
        switch (link) {
            case Link::AliceBob:
                // Reflected path enters conjugated on both segments; the same
                // product serves both probing directions, which is what makes
                // the link reciprocal by construction.
                sum += std::conj(block.h_ar[i]) * phasor * std::conj(block.h_br[i]);
                break;
            case Link::AliceEve:
                sum += std::conj(block.h_ar[i]) * phasor * block.h_re[i];
                break;
            case Link::BobEve:
                sum += std::conj(block.h_br[i]) * phasor * block.h_re[i];
                break;
        }
    }
    switch (link) {
        case Link::AliceBob: direct = block.h_ab; break;
        case Link::AliceEve: direct = block.h_ae; break;
        case Link::BobEve: direct = block.h_be; break;
    }
    return direct + sum;
}

Covariances channel_covariances(const SystemParams& params) {
    const double n = static_cast<double>(params.n_elements);
    Covariances cov;
    cov.rho_ab = params.beta_ab + n * params.beta_ar * params.beta_rb;
    cov.rho_ae = params.beta_ae + n * params.beta_ar * params.beta_re;
    cov.rho_be = params.beta_be + n * params.beta_rb * params.beta_re;
    return cov;
}

}  // namespace skg
