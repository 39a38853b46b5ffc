#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "ddstream/rswr_sampler.hpp"

using namespace ddstream;

namespace {

// Binomial tolerance: |freq - p| <= z * sqrt(p(1-p)/n).
double tolerance(double p, std::size_t n, double z = 4.5) {
    return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

/// Streams `d` distinct tails 100..100+d-1 into q slots.
std::vector<NodeId> run_slots(std::size_t q, std::size_t d, Rng& rng) {
    std::vector<NodeId> slots(q, kNoNode);
    for (std::size_t i = 1; i <= d; ++i) observe(slots, static_cast<NodeId>(99 + i), i, rng);
    return slots;
}

}  // namespace

TEST(Rswr, FirstEdgeFillsEverySlot) {
    Rng rng(7);
    std::vector<NodeId> slots(5, kNoNode);
    observe(slots, 42, 1, rng);
    for (auto s : slots) EXPECT_EQ(s, 42u);
}

TEST(Rswr, ZeroDegreeIsRejected) {
    Rng rng(1);
    std::vector<NodeId> slots(2, kNoNode);
    EXPECT_THROW(observe(slots, 1, 0, rng), std::invalid_argument);
}

TEST(Rswr, ConsumesExactlyQDraws) {
    Rng a(99);
    Rng b(99);
    std::vector<NodeId> slots(6, kNoNode);
    observe(slots, 3, 1, a);
    observe(slots, 4, 9, a);
    b.discard(12);
    EXPECT_EQ(a(), b());
}

TEST(Rswr, PerSlotReplacementFrequencyAtDegreeFour) {
    // q=3, degree 4: each slot is overwritten with probability 1/4.
    constexpr std::size_t kTrials = 100000;
    Rng rng(2024);
    std::array<std::size_t, 3> hits{};
    for (std::size_t t = 0; t < kTrials; ++t) {
        std::vector<NodeId> slots(3, 0);
        observe(slots, 1, 4, rng);
        for (std::size_t i = 0; i < 3; ++i) hits[i] += slots[i] == 1;
    }
    for (auto h : hits) EXPECT_NEAR(static_cast<double>(h) / kTrials, 0.25, 0.01);
}

TEST(Rswr, SecondEdgeWinsHalfTheTime) {
    constexpr std::size_t kSeeds = 40000;
    std::size_t hits = 0;
    for (std::size_t s = 0; s < kSeeds; ++s) {
        Rng rng(s);
        auto slots = run_slots(1, 2, rng);
        hits += slots[0] == 101;
    }
    EXPECT_NEAR(static_cast<double>(hits) / kSeeds, 0.5, 0.01);
}

TEST(Rswr, MarginalUniformityOverDistinctTails) {
    constexpr std::size_t kReplays = 20000;
    for (std::size_t d : {2u, 3u, 5u}) {
        std::vector<std::array<std::size_t, 5>> counts(2);
        Rng rng(1000 + d);
        for (std::size_t r = 0; r < kReplays; ++r) {
            auto slots = run_slots(2, d, rng);
            for (std::size_t i = 0; i < 2; ++i) {
                ASSERT_NE(slots[i], kNoNode);
                ++counts[i][slots[i] - 100];
            }
        }
        const double p = 1.0 / static_cast<double>(d);
        for (const auto& slot : counts) {
            for (std::size_t t = 0; t < d; ++t) {
                EXPECT_NEAR(static_cast<double>(slot[t]) / kReplays, p, tolerance(p, kReplays))
                    << "d=" << d << " tail=" << t;
            }
        }
    }
}

TEST(Rswr, SlotsAreIndependent) {
    // q=2 over 3 distinct tails: the joint law must be the product of the
    // uniform marginals, 1/9 per cell.
    constexpr std::size_t kReplays = 45000;
    std::array<std::array<std::size_t, 3>, 3> joint{};
    Rng rng(77);
    for (std::size_t r = 0; r < kReplays; ++r) {
        auto slots = run_slots(2, 3, rng);
        ++joint[slots[0] - 100][slots[1] - 100];
    }
    double chi2 = 0.0;
    const double expected = kReplays / 9.0;
    for (const auto& row : joint) {
        for (auto c : row) chi2 += (c - expected) * (c - expected) / expected;
    }
    // chi-square, 8 degrees of freedom: P(X > 26.12) = 0.001.
    EXPECT_LT(chi2, 26.12);
}

TEST(Rswr, ReproducibleForSeed) {
    Rng a(5);
    Rng b(5);
    EXPECT_EQ(run_slots(4, 30, a), run_slots(4, 30, b));
}
