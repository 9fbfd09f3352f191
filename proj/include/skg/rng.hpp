#ifndef SKG_RNG_HPP
#define SKG_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace skg {

// Deterministic random source addressed by (master_seed, stream_id).
//
// Two sources built from the same pair produce the same sample sequence on
// every run, independent of how many other sources exist or on which thread
// they are consumed. Parallel Monte Carlo stays bit-reproducible by giving
// each trial its own stream id instead of sharing one generator.
//
// All variates are derived from raw 64-bit draws inside this class (no
// std::*_distribution), because the standard leaves distribution output
// unspecified across library implementations.
class RandomSource {
public:
    RandomSource(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0, 1). Strictly below 1, 53-bit resolution.
    double uniform();

    // Uniform on [0, 2*pi). The product with uniform() < 1 rounds below 2*pi.
    double uniform_angle();

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    // Polar form: Rayleigh magnitude times a uniform phasor. variance == 0
    // returns exactly (0, 0) and consumes no draws.
    std::complex<double> complex_normal(double variance);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 gen_;
};

// Packs a sweep-point index and a trial index into one substream id.
// Injective for both halves below 2^32, so appending sweep points or trials
// never changes the samples of existing ones.
std::uint64_t substream_id(std::uint64_t point_index, std::uint64_t trial_index);

}  // namespace skg

#endif
