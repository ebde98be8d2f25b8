#include "ssafs/error.hpp"
#include "ssafs/metrics.hpp"
#include "ssafs/random.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace ssafs;

TEST(Metrics, HandExample)
{
    const auto m = metric_set({.tp = 3, .fp = 1, .fn = 2, .tn = 4});
    EXPECT_NEAR(m.accuracy, 0.7, 1e-12);
    EXPECT_NEAR(m.recall, 0.6, 1e-12);
    EXPECT_NEAR(m.precision, 0.75, 1e-12);
    EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(m.error, 0.3, 1e-12);
}

TEST(Metrics, AllCorrect)
{
    const auto m = metric_set({.tp = 5, .fp = 0, .fn = 0, .tn = 5});
    EXPECT_EQ(m.accuracy, 1.0);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.f1, 1.0);
    EXPECT_EQ(m.error, 0.0);
}

TEST(Metrics, ZeroDenominatorsAreZero)
{
    const auto none_predicted = metric_set({.tp = 0, .fp = 0, .fn = 4, .tn = 6});
    EXPECT_EQ(none_predicted.precision, 0.0);
    EXPECT_EQ(none_predicted.recall, 0.0);
    EXPECT_EQ(none_predicted.f1, 0.0);
    EXPECT_NEAR(none_predicted.accuracy, 0.6, 1e-15);
    const auto no_positives = metric_set({.tp = 0, .fp = 2, .fn = 0, .tn = 8});
    EXPECT_EQ(no_positives.recall, 0.0);
    EXPECT_THROW(metric_set({}), ContractError);
}

TEST(Metrics, ConfusionFromLabels)
{
    const std::vector<Label> y{1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    const std::vector<Label> p{1, 1, 1, 0, 0, 1, 0, 0, 0, 0};
    const auto cm = confusion(y, p);
    EXPECT_EQ(cm, (ConfusionMatrix{.tp = 3, .fp = 1, .fn = 2, .tn = 4}));
}

TEST(Metrics, ConfusionContract)
{
    const std::vector<Label> a{0, 1};
    const std::vector<Label> b{0};
    const std::vector<Label> bad{0, 2};
    EXPECT_THROW(confusion(a, b), ContractError);
    EXPECT_THROW(confusion(a, bad), ContractError);
    EXPECT_THROW(confusion(std::vector<Label>{}, std::vector<Label>{}), ContractError);
}

TEST(MetricsProperty, RandomMatrices)
{
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm{rng.below(50), rng.below(50), rng.below(50), rng.below(50)};
        if (cm.total() == 0) {
            cm.tn = 1;
        }
        const auto m = metric_set(cm);
        const double total = static_cast<double>(cm.total());
        EXPECT_EQ(m.accuracy, 1.0 - static_cast<double>(cm.fp + cm.fn) / total);
        EXPECT_EQ(m.error, static_cast<double>(cm.fp + cm.fn) / total);
        for (double v : {m.accuracy, m.recall, m.precision, m.f1, m.error}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        EXPECT_LE(m.f1, std::max(m.precision, m.recall) + 1e-15);
        EXPECT_GE(m.f1, std::min(m.precision, m.recall) - 1e-15);

        // Swapping the class roles swaps tp/tn and fp/fn and keeps accuracy.
        const auto swapped = metric_set({.tp = cm.tn, .fp = cm.fn, .fn = cm.fp, .tn = cm.tp});
        EXPECT_EQ(swapped.accuracy, m.accuracy);

        // Sample order does not matter.
        std::vector<Label> y;
        std::vector<Label> p;
        auto push = [&](std::size_t n, Label t, Label q) {
            y.insert(y.end(), n, t);
            p.insert(p.end(), n, q);
        };
        push(cm.tp, 1, 1);
        push(cm.fp, 0, 1);
        push(cm.fn, 1, 0);
        push(cm.tn, 0, 0);
        std::vector<std::size_t> order(y.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        rng.shuffle(std::span<std::size_t>(order));
        std::vector<Label> ys;
        std::vector<Label> ps;
        for (auto i : order) {
            ys.push_back(y[i]);
            ps.push_back(p[i]);
        }
        EXPECT_EQ(confusion(ys, ps), cm);
    }
}
