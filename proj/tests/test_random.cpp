#include "ssafs/parallel.hpp"
#include "ssafs/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

using ssafs::Rng;

TEST(Random, SameSeedSameStream)
{
    Rng a(17);
    Rng b(17);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
}

TEST(Random, DerivedSeedsDiffer)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 50; ++i) {
        for (std::uint64_t j = 0; j < 50; ++j) {
            seen.insert(ssafs::derive_seed(7, 1, i, j));
        }
    }
    EXPECT_EQ(seen.size(), 2500u);
    EXPECT_NE(ssafs::derive_seed(7, 1), ssafs::derive_seed(7, 2));
    EXPECT_EQ(ssafs::derive_seed(7, 1, 2, 3), ssafs::derive_seed(7, 1, 2, 3));
}

TEST(Random, UniformRangeAndMean)
{
    Rng rng(3);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(Random, NormalMoments)
{
    Rng rng(11);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.0, 0.02);
    EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.03);
}

TEST(Random, BelowCoversRange)
{
    Rng rng(5);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.below(7);
        ASSERT_LT(v, 7u);
        ++hits[v];
    }
    for (int h : hits) {
        EXPECT_GT(h, 800);
    }
}

TEST(Random, ShuffleIsPermutation)
{
    Rng rng(9);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    auto w = v;
    rng.shuffle(std::span<int>(w));
    EXPECT_NE(v, w);
    std::sort(w.begin(), w.end());
    EXPECT_EQ(v, w);
}

TEST(Parallel, VisitsEveryIndexOnce)
{
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(101);
        ssafs::parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
        for (auto& h : hits) {
            EXPECT_EQ(h.load(), 1);
        }
    }
}

TEST(Parallel, RethrowsLowestFailingIndex)
{
    for (unsigned workers : {1u, 4u}) {
        try {
            ssafs::parallel_for(40, workers, [](std::size_t i) {
                if (i == 13 || i == 31) {
                    throw std::runtime_error(std::to_string(i));
                }
            });
            FAIL() << "expected an exception";
        } catch (const std::runtime_error& e) {
            EXPECT_STREQ(e.what(), "13");
        }
    }
}
