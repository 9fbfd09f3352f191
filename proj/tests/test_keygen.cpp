#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "skg/keygen.hpp"
#include "test_util.hpp"

using skg::cplx;
using skg::EstimateSet;
using skg::KeyMaterial;
using skg::MatchCounts;
using skg::RandomSource;
using skg::SystemParams;

namespace {

constexpr double kPi = std::numbers::pi;

// Correlated estimate pair: shared channel part of variance rho plus
// independent observation noise of variance v at each node.
std::pair<cplx, cplx> correlated_pair(RandomSource& rng, double rho, double v) {
    const cplx common = rng.complex_normal(rho);
    return {common + rng.complex_normal(v), common + rng.complex_normal(v)};
}

}  // namespace

TEST_CASE("phase_of wraps the four-quadrant angle into [0, 2*pi)") {
    CHECK(skg::phase_of(cplx(1.0, 0.0)) == 0.0);
    CHECK(skg::phase_of(cplx(0.0, 1.0)) == doctest::Approx(kPi / 2));
    CHECK(skg::phase_of(cplx(-1.0, -1.0)) == doctest::Approx(5.0 * kPi / 4));
    CHECK(skg::phase_of(cplx(-1.0, 0.0)) == doctest::Approx(kPi));
    CHECK(skg::phase_of(cplx(0.0, 0.0)) == 0.0);  // convention for exact zero

    RandomSource rng(60, 0);
    bool in_range = true;
    for (int i = 0; i < 10000; ++i) {
        const double t = skg::phase_of(rng.complex_normal(1.0));
        in_range = in_range && t >= 0.0 && t < 2.0 * kPi;
    }
    CHECK(in_range);
}

TEST_CASE("quantize_phase bins are half-open with inclusive lower edges") {
    CHECK(skg::quantize_phase(kPi / 3, 4) == 1);
    CHECK(skg::quantize_phase(3.0 * kPi / 2, 2) == 2);
    CHECK(skg::quantize_phase(0.0, 8) == 1);
    CHECK(skg::quantize_phase(kPi / 2, 4) == 2);  // exact bin edge goes up
    CHECK(skg::quantize_phase(std::nextafter(2.0 * kPi, 0.0), 16) == 16);

    CHECK_THROWS_AS(skg::quantize_phase(-0.1, 4), std::domain_error);
    CHECK_THROWS_AS(skg::quantize_phase(2.0 * kPi, 4), std::domain_error);
    CHECK_THROWS_AS(skg::quantize_phase(std::nan(""), 4), std::domain_error);
    CHECK_THROWS_AS(skg::quantize_phase(1.0, 1), std::domain_error);
}

TEST_CASE("bits_from_level emits big-endian level-minus-one") {
    CHECK(skg::bits_from_level(1, 2) == std::vector<std::uint8_t>{0});
    CHECK(skg::bits_from_level(2, 2) == std::vector<std::uint8_t>{1});
    CHECK(skg::bits_from_level(4, 4) == std::vector<std::uint8_t>{1, 1});
    CHECK(skg::bits_from_level(3, 8) == std::vector<std::uint8_t>{0, 1, 0});
    CHECK_THROWS_AS(skg::bits_from_level(0, 2), std::domain_error);
    CHECK_THROWS_AS(skg::bits_from_level(3, 2), std::domain_error);
}

TEST_CASE("quantizer bins nest and mismatches persist upward in q") {
    // Dense grid: the coarse level is always ceil(fine_level / 2).
    const int grid = 20000;
    bool nests = true;
    for (int i = 0; i < grid && nests; ++i) {
        const double theta = 2.0 * kPi * i / grid;
        for (int q = 2; q <= 8; q *= 2) {
            const int coarse = skg::quantize_phase(theta, q);
            const int fine = skg::quantize_phase(theta, 2 * q);
            nests = nests && coarse == (fine + 1) / 2;
        }
    }
    CHECK(nests);

    // Common random numbers: a pair that disagrees at q keeps disagreeing at
    // 2q, so mismatch counts cannot decrease as q grows.
    RandomSource rng(61, 0);
    int mismatch2 = 0, mismatch4 = 0, mismatch8 = 0;
    bool implication = true;
    for (int i = 0; i < 100000; ++i) {
        const auto [a, b] = correlated_pair(rng, 1.0, 1.0);
        const double ta = skg::phase_of(a), tb = skg::phase_of(b);
        const bool m2 = skg::quantize_phase(ta, 2) != skg::quantize_phase(tb, 2);
        const bool m4 = skg::quantize_phase(ta, 4) != skg::quantize_phase(tb, 4);
        const bool m8 = skg::quantize_phase(ta, 8) != skg::quantize_phase(tb, 8);
        implication = implication && (!m2 || m4) && (!m4 || m8);
        mismatch2 += m2;
        mismatch4 += m4;
        mismatch8 += m8;
    }
    CHECK(implication);
    CHECK(mismatch2 <= mismatch4);
    CHECK(mismatch4 <= mismatch8);
    CHECK(mismatch2 > 0);  // correlated but noisy: both sides populated
    CHECK(mismatch8 < 100000);
}

TEST_CASE("assembled keys have f_blocks * log2(q) bits in period order") {
    SystemParams p;
    p.f_blocks = 3;
    p.q_levels = 8;
    p.t_k = 4;
    p.t_s = 2;
    const skg::DerivedParams d = skg::validate(p);
    CHECK(d.key_len_bits == 9);

    RandomSource rng(62, 0);
    std::vector<EstimateSet> rounds(3);
    for (EstimateSet& set : rounds) {
        for (int l = 0; l < 2; ++l) {
            set.g_hat_ba.push_back(rng.complex_normal(1.0));
            set.g_hat_ab.push_back(rng.complex_normal(1.0));
            set.g_hat_ae.push_back(rng.complex_normal(1.0));
            set.g_hat_be.push_back(rng.complex_normal(1.0));
        }
    }
    const auto [alice, bob] = skg::assemble_keys(rounds, p, d);
    CHECK(alice.owner == skg::Owner::Alice);
    CHECK(bob.owner == skg::Owner::Bob);
    REQUIRE(alice.keys.size() == 2);
    REQUIRE(alice.levels.size() == 2);
    for (int l = 0; l < 2; ++l) {
        CHECK(alice.keys[l].size() == 9);
        CHECK(bob.keys[l].size() == 9);
        CHECK(alice.levels[l].size() == 3);
        // Bits are the concatenated big-endian encodings of the levels.
        std::vector<std::uint8_t> expect;
        for (int f = 0; f < 3; ++f)
            for (std::uint8_t bit :
                 skg::bits_from_level(alice.levels[l][f], p.q_levels))
                expect.push_back(bit);
        CHECK(alice.keys[l] == expect);
    }

    // Alice reads her own estimates, Bob his.
    CHECK(alice.levels[0][0] ==
          skg::quantize_phase(skg::phase_of(rounds[0].g_hat_ba[0]), 8));
    CHECK(bob.levels[0][0] ==
          skg::quantize_phase(skg::phase_of(rounds[0].g_hat_ab[0]), 8));

    rounds.pop_back();
    CHECK_THROWS_AS(skg::assemble_keys(rounds, p, d), std::invalid_argument);
}

TEST_CASE("noiseless estimates produce identical keys on both sides") {
    SystemParams p;
    p.f_blocks = 5;
    p.t_k = 6;
    p.t_s = 2;
    const skg::DerivedParams d = skg::validate(p);
    RandomSource rng(63, 0);
    std::vector<EstimateSet> rounds(5);
    for (EstimateSet& set : rounds) {
        for (int l = 0; l < 3; ++l) {
            const cplx g = rng.complex_normal(2.0);
            set.g_hat_ba.push_back(g);
            set.g_hat_ab.push_back(g);
            set.g_hat_ae.push_back(rng.complex_normal(1.0));
            set.g_hat_be.push_back(rng.complex_normal(1.0));
        }
    }
    const auto [alice, bob] = skg::assemble_keys(rounds, p, d);
    CHECK(alice.keys == bob.keys);
    const MatchCounts counts = skg::count_matches(alice, bob);
    CHECK(counts.keys_matched == counts.keys_total);
    CHECK(counts.est_matched == counts.est_total);
}

TEST_CASE("count_matches tallies keys and single estimates separately") {
    KeyMaterial alice{skg::Owner::Alice, {{1, 2}, {3, 4}}, {}};
    KeyMaterial bob{skg::Owner::Bob, {{1, 2}, {3, 1}}, {}};
    const MatchCounts counts = skg::count_matches(alice, bob);
    CHECK(counts.keys_matched == 1);
    CHECK(counts.keys_total == 2);
    CHECK(counts.est_matched == 3);
    CHECK(counts.est_total == 4);

    MatchCounts merged = counts;
    merged += counts;
    CHECK(merged.keys_matched == 2);
    CHECK(merged.est_total == 8);

    KeyMaterial ragged{skg::Owner::Bob, {{1, 2}}, {}};
    CHECK_THROWS_AS(skg::count_matches(alice, ragged), std::invalid_argument);
}

TEST_CASE("make_stats computes the documented statistics exactly") {
    SystemParams p;
    p.q_levels = 4;
    p.t_s = 2;
    const skg::DerivedParams d = skg::validate(p);
    const MatchCounts counts{75, 100, 170, 200};
    const skg::ProtocolStats stats = skg::make_stats(counts, p, d);
    CHECK(stats.match_prob_hat == 0.75);
    CHECK(stats.kmr_hat == 0.25);
    CHECK(stats.per_estimate_match_hat == 0.85);
    CHECK(stats.mean_handshakes == doctest::Approx(4.0 / 3.0));
    CHECK(stats.throughput_bits_per_symbol == 1.5);  // 0.75 * 2 / 1
    CHECK(stats.ci_halfwidth ==
          doctest::Approx(1.96 * std::sqrt(0.75 * 0.25 / 100.0)));
    CHECK(stats.n_keys == 100);

    const MatchCounts perfect{40, 40, 80, 80};
    const skg::ProtocolStats ideal = skg::make_stats(perfect, p, d);
    CHECK(ideal.kmr_hat == 0.0);
    CHECK(ideal.mean_handshakes == 1.0);
    CHECK(ideal.throughput_bits_per_symbol == 2.0);  // log2(q)/(t_s/2)

    const MatchCounts hopeless{0, 10, 0, 10};
    const skg::ProtocolStats stuck = skg::make_stats(hopeless, p, d);
    CHECK(std::isinf(stuck.mean_handshakes));
    CHECK(stuck.throughput_bits_per_symbol == 0.0);

    CHECK_THROWS_AS(skg::make_stats(MatchCounts{}, p, d),
                    std::invalid_argument);
}

TEST_CASE("throughput identity holds exactly for any tallies") {
    SystemParams p;
    p.q_levels = 8;
    p.t_s = 10;
    const skg::DerivedParams d = skg::validate(p);
    for (std::uint64_t matched : {0ull, 1ull, 37ull, 9999ull, 10000ull}) {
        const MatchCounts counts{matched, 10000, matched, 10000};
        const skg::ProtocolStats stats = skg::make_stats(counts, p, d);
        CHECK(stats.kmr_hat == 1.0 - stats.match_prob_hat);
        CHECK(stats.throughput_bits_per_symbol ==
              stats.match_prob_hat * d.bits_per_level / (p.t_s / 2.0));
    }
}

TEST_CASE("pooled key matches follow the per-estimate composition law") {
    SystemParams p;
    p.f_blocks = 2;
    p.t_k = 20;
    p.t_s = 2;
    const skg::DerivedParams d = skg::validate(p);
    RandomSource rng(64, 0);

    MatchCounts total;
    const int trials = 3000;
    for (int t = 0; t < trials; ++t) {
        std::vector<EstimateSet> rounds(2);
        for (EstimateSet& set : rounds) {
            for (int l = 0; l < d.periods_per_block; ++l) {
                const auto [a, b] = correlated_pair(rng, 1.0, 1.0);
                set.g_hat_ba.push_back(a);
                set.g_hat_ab.push_back(b);
                set.g_hat_ae.push_back(0.0);
                set.g_hat_be.push_back(0.0);
            }
        }
        const auto [alice, bob] = skg::assemble_keys(rounds, p, d);
        total += skg::count_matches(alice, bob);
    }
    const skg::ProtocolStats stats = skg::make_stats(total, p, d);
    const double composed = std::pow(stats.per_estimate_match_hat, 2.0);
    // Independent slots: p = m^F. Conservative 3 sigma on both estimates.
    CHECK(std::abs(stats.match_prob_hat - composed) < 0.012);
}

TEST_CASE("handshake counts are geometric with mean 1/p") {
    RandomSource rng(65, 0);
    const auto ones = skg::simulate_handshake_counts(rng, 1.0, 1000);
    bool all_one = true;
    for (const auto c : ones) all_one = all_one && c == 1;
    CHECK(all_one);

    for (double p : {0.5, 0.2}) {
        const auto counts = skg::simulate_handshake_counts(rng, p, 100000);
        std::vector<double> as_double(counts.begin(), counts.end());
        const double m = testutil::mean(as_double);
        const double se = std::sqrt(1.0 - p) / p / std::sqrt(100000.0);
        CHECK(std::abs(m - 1.0 / p) < 3.0 * se + 1e-12);
        bool positive = true;
        for (const auto c : counts) positive = positive && c >= 1;
        CHECK(positive);
    }

    CHECK_THROWS_AS(skg::simulate_handshake_counts(rng, 0.0, 10),
                    std::domain_error);
    CHECK_THROWS_AS(skg::simulate_handshake_counts(rng, -0.2, 10),
                    std::domain_error);
    CHECK_THROWS_AS(skg::simulate_handshake_counts(rng, 1.5, 10),
                    std::domain_error);
}

TEST_CASE("match_stats pools a collection of trial pairs") {
    SystemParams p;
    p.q_levels = 2;
    p.t_s = 2;
    const skg::DerivedParams d = skg::validate(p);
    std::vector<std::pair<KeyMaterial, KeyMaterial>> rounds;
    rounds.push_back({KeyMaterial{skg::Owner::Alice, {{1}, {2}}, {}},
                      KeyMaterial{skg::Owner::Bob, {{1}, {1}}, {}}});
    rounds.push_back({KeyMaterial{skg::Owner::Alice, {{2}, {2}}, {}},
                      KeyMaterial{skg::Owner::Bob, {{2}, {2}}, {}}});
    const skg::ProtocolStats stats = skg::match_stats(rounds, p, d);
    CHECK(stats.n_keys == 4);
    CHECK(stats.match_prob_hat == 0.75);
    CHECK(stats.per_estimate_match_hat == 0.75);
}
