#ifndef SKG_KEYGEN_HPP
#define SKG_KEYGEN_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "skg/estimation.hpp"
#include "skg/params.hpp"
#include "skg/rng.hpp"

namespace skg {

// Phase of z folded into [0, 2*pi). phase_of(0) is 0 by convention.
double phase_of(cplx z);

// Quantizer level in 1..q_levels for theta in [0, 2*pi): level q covers
// [2*pi*(q-1)/q_levels, 2*pi*q/q_levels), lower edge inclusive. Throws
// std::domain_error outside [0, 2*pi).
int quantize_phase(double theta, int q_levels);

// Big-endian bits of (level - 1), exactly log2(q_levels) of them.
std::vector<std::uint8_t> bits_from_level(int level, int q_levels);

enum class Owner { Alice, Bob };

// One node's key material for a round: per switching period, the quantizer
// levels across the f_blocks estimates and the key bits they map to.
// keys[l] has key_len_bits entries, levels[l] has f_blocks entries; the bits
// are a function of the levels, so two keys are equal iff their level rows are.
struct KeyMaterial {
    Owner owner;
    std::vector<std::vector<int>> levels;            // [period][block]
    std::vector<std::vector<std::uint8_t>> keys;     // [period][bit]
};

// Builds Alice's and Bob's key material from the f_blocks probing rounds of
// one trial. Alice quantizes her own estimates (g_hat_ba), Bob his (g_hat_ab).
// Throws std::invalid_argument if the round count is not f_blocks or any
// round's period count is not t_k/t_s.
std::pair<KeyMaterial, KeyMaterial> assemble_keys(
    std::span<const EstimateSet> rounds, const SystemParams& params,
    const DerivedParams& derived);

// Raw pooled tallies. Integer sums merge associatively, so partial counts
// from parallel workers combine to the same totals in any order.
struct MatchCounts {
    std::uint64_t keys_matched = 0;
    std::uint64_t keys_total = 0;
    std::uint64_t est_matched = 0;   // per-estimate level agreements
    std::uint64_t est_total = 0;
    MatchCounts& operator+=(const MatchCounts& other);
};

// Keys compared for exact equality only; per-estimate agreement pooled over
// every (block, period) pair.
MatchCounts count_matches(const KeyMaterial& alice, const KeyMaterial& bob);

struct ProtocolStats {
    double match_prob_hat;          // p: fraction of exactly matching keys
    double kmr_hat;                 // 1 - p
    double per_estimate_match_hat;  // pooled single-estimate agreement rate
    double mean_handshakes;         // 1/p, +inf when p == 0
    double throughput_bits_per_symbol;  // p * log2(q) / (t_s/2)
    double ci_halfwidth;            // 95% normal half-width on p
    std::uint64_t n_keys;
};

ProtocolStats make_stats(const MatchCounts& counts, const SystemParams& params,
                         const DerivedParams& derived);

// Convenience over a collection of per-trial key pairs.
ProtocolStats match_stats(
    std::span<const std::pair<KeyMaterial, KeyMaterial>> rounds,
    const SystemParams& params, const DerivedParams& derived);

// Draws n counts of attempts-until-first-success at success probability p
// (support 1, 2, 3, ...), by inversion. Throws std::domain_error unless
// 0 < p <= 1.
std::vector<std::uint64_t> simulate_handshake_counts(RandomSource& rng,
                                                     double p, std::size_t n);

}  // namespace skg

#endif
