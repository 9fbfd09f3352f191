#ifndef SKG_CHANNEL_HPP
#define SKG_CHANNEL_HPP

#include <complex>
#include <vector>

#include "skg/params.hpp"
#include "skg/rng.hpp"

namespace skg {

using cplx = std::complex<double>;

// One block-fading realization: three direct scalars plus one vector per
// surface segment. Only the node-to-surface direction of each segment is
// stored; the reverse direction is its conjugate and is applied inside
// aggregate(). Constant within a block.
struct ChannelBlock {
    cplx h_ab{};  // Alice-Bob direct
    cplx h_ae{};  // Alice-Eve direct
    cplx h_be{};  // Bob-Eve direct
    std::vector<cplx> h_ar;  // Alice to surface, length n_elements
    std::vector<cplx> h_br;  // Bob to surface
    std::vector<cplx> h_re;  // surface to Eve
};

// Per-block phase plan: one angle in [0, 2*pi) per (switching period, element).
class RisSchedule {
public:
    RisSchedule(int periods, int elements);

    double phase(int period, int element) const {
        return phases_[static_cast<std::size_t>(period) * elements_ + element];
    }
    double& phase(int period, int element) {
        return phases_[static_cast<std::size_t>(period) * elements_ + element];
    }
    int periods() const { return periods_; }
    int elements() const { return elements_; }

private:
    int periods_;
    int elements_;
    std::vector<double> phases_;  // row-major [period][element]
};

// Second moments of the three aggregate channels.
struct Covariances {
    double rho_ab;
    double rho_ae;
    double rho_be;
};

enum class Link { AliceBob, AliceEve, BobEve };

// Draws one fading block. Every entry is an independent circularly symmetric
// complex Gaussian with the link's beta as its variance. Draw order is fixed:
// h_ab, h_ae, h_be, then h_ar, h_br, h_re element by element.
ChannelBlock sample_block(RandomSource& rng, const SystemParams& params);

// Draws independent uniform phases for every (period, element) slot,
// period-major.
RisSchedule sample_schedule(RandomSource& rng, int periods, int elements);

// Aggregate channel for one switching period:
//   direct + sum_n conj(seg1[n]) * e^{j*phase} * seg2[n]
// with (seg1, seg2) = (h_ar, conj(h_br)) for Alice-Bob, (h_ar, h_re) for
// Alice-Eve and (h_br, h_re) for Bob-Eve. The Alice-Bob pairing makes the
// two probing directions literally the same value (reciprocity). Periods are
// indexed 0..periods-1; out-of-range throws std::out_of_range, a block/
// schedule element-count mismatch throws std::invalid_argument.
cplx aggregate(const ChannelBlock& block, const RisSchedule& schedule,
               int period, Link link);

// Closed-form aggregate second moments:
//   rho_ab = beta_ab + n * beta_ar * beta_rb, and likewise toward Eve.
Covariances channel_covariances(const SystemParams& params);

}  // namespace skg

#endif
