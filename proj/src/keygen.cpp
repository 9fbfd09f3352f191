#include "skg/keygen.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skg {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double phase_of(cplx z) {
    if (z == cplx(0.0, 0.0)) return 0.0;
    const double arg = std::arg(z);  // (-pi, pi]
    return arg < 0.0 ? arg + two_pi : arg;
}

int quantize_phase(double theta, int q_levels) {
    if (!(theta >= 0.0) || theta >= two_pi)
        throw std::domain_error("quantize_phase: theta outside [0, 2*pi)");
    if (q_levels < 2)
        throw std::domain_error("quantize_phase: q_levels < 2");
    int level = 1 + static_cast<int>(std::floor(theta * q_levels / two_pi));
    // theta just below 2*pi can round the product up to q_levels; keep the
    // top bin closed on that edge.
    if (level > q_levels) level = q_levels;
    return level;
}

std::vector<std::uint8_t> bits_from_level(int level, int q_levels) {
    if (level < 1 || level > q_levels)
        throw std::domain_error("bits_from_level: level outside 1..q_levels");
    int width = 0;
    while ((1 << width) < q_levels) ++width;
    std::vector<std::uint8_t> bits(width);
    const unsigned value = static_cast<unsigned>(level - 1);
    for (int i = 0; i < width; ++i)
        bits[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
    return bits;
}

std::pair<KeyMaterial, KeyMaterial> assemble_keys(
    std::span<const EstimateSet> rounds, const SystemParams& params,
    const DerivedParams& derived) {
    const int f = params.f_blocks;
    const int m = derived.periods_per_block;
    if (static_cast<int>(rounds.size()) != f)
        throw std::invalid_argument("assemble_keys: round count != f_blocks");
    for (const EstimateSet& set : rounds) {
        if (static_cast<int>(set.g_hat_ba.size()) != m ||
            static_cast<int>(set.g_hat_ab.size()) != m)
            throw std::invalid_argument(
                "assemble_keys: period count != t_k/t_s");
    }

    KeyMaterial alice{Owner::Alice, {}, {}};
    KeyMaterial bob{Owner::Bob, {}, {}};
    alice.levels.assign(m, std::vector<int>(f));
    bob.levels.assign(m, std::vector<int>(f));
    alice.keys.assign(m, {});
    bob.keys.assign(m, {});

    for (int l = 0; l < m; ++l) {
        auto& a_key = alice.keys[l];
        auto& b_key = bob.keys[l];
        a_key.reserve(derived.key_len_bits);
        b_key.reserve(derived.key_len_bits);
        for (int block = 0; block < f; ++block) {
            const int a_level = quantize_phase(phase_of(rounds[block].g_hat_ba[l]),
                                               params.q_levels);
            const int b_level = quantize_phase(phase_of(rounds[block].g_hat_ab[l]),
                                               params.q_levels);
            alice.levels[l][block] = a_level;
            bob.levels[l][block] = b_level;
            for (std::uint8_t bit : bits_from_level(a_level, params.q_levels))
                a_key.push_back(bit);
            for (std::uint8_t bit : bits_from_level(b_level, params.q_levels))
                b_key.push_back(bit);
        }
    }
    return {alice, bob};
}

MatchCounts& MatchCounts::operator+=(const MatchCounts& other) {
    keys_matched += other.keys_matched;
    keys_total += other.keys_total;
    est_matched += other.est_matched;
    est_total += other.est_total;
    return *this;
}

MatchCounts count_matches(const KeyMaterial& alice, const KeyMaterial& bob) {
    if (alice.levels.size() != bob.levels.size())
        throw std::invalid_argument("count_matches: period count mismatch");
    MatchCounts counts;
    for (std::size_t l = 0; l < alice.levels.size(); ++l) {
        const auto& a = alice.levels[l];
        const auto& b = bob.levels[l];
        if (a.size() != b.size())
            throw std::invalid_argument("count_matches: block count mismatch");
        // Bits are a bijection of levels, so level-row equality is key equality.
        counts.keys_matched += (a == b) ? 1 : 0;
        counts.keys_total += 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            counts.est_matched += (a[i] == b[i]) ? 1 : 0;
        counts.est_total += a.size();
    }
    return counts;
}

ProtocolStats make_stats(const MatchCounts& counts, const SystemParams& params,
                         const DerivedParams& derived) {
    if (counts.keys_total == 0)
        throw std::invalid_argument("make_stats: no keys counted");
    ProtocolStats stats;
    stats.n_keys = counts.keys_total;
    const double p = static_cast<double>(counts.keys_matched) /
                     static_cast<double>(counts.keys_total);
    stats.match_prob_hat = p;
    stats.kmr_hat = 1.0 - p;
    stats.per_estimate_match_hat =
        counts.est_total == 0
            ? 0.0
            : static_cast<double>(counts.est_matched) /
                  static_cast<double>(counts.est_total);
    stats.mean_handshakes =
        p > 0.0 ? 1.0 / p : std::numeric_limits<double>::infinity();
    // Computed from the same p so the identity with kmr_hat is exact.
    stats.throughput_bits_per_symbol =
        p * derived.bits_per_level / (params.t_s / 2.0);
    stats.ci_halfwidth =
        1.96 * std::sqrt(p * (1.0 - p) /
                         static_cast<double>(counts.keys_total));
    return stats;
}

ProtocolStats match_stats(
    std::span<const std::pair<KeyMaterial, KeyMaterial>> rounds,
    const SystemParams& params, const DerivedParams& derived) {
    MatchCounts total;
    for (const auto& [alice, bob] : rounds) total += count_matches(alice, bob);
    return make_stats(total, params, derived);
}

std::vector<std::uint64_t> simulate_handshake_counts(RandomSource& rng,
                                                     double p, std::size_t n) {
    if (!(p > 0.0) || p > 1.0)
        throw std::domain_error("simulate_handshake_counts: p outside (0, 1]");
    std::vector<std::uint64_t> counts;
    counts.reserve(n);
    if (p == 1.0) {
        counts.assign(n, 1);
        return counts;
    }
    const double log_q = std::log1p(-p);  // log(1 - p) < 0
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        // Inversion of the attempts-until-success law; u = 0 maps to 1.
        counts.push_back(
            1 + static_cast<std::uint64_t>(std::floor(std::log1p(-u) / log_q)));
    }
    return counts;
}

}  // namespace skg
