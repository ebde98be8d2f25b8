#pragma once

#include <cstddef>
#include <span>

#include "ssafs/dataset.hpp"

namespace ssafs {

/// 2x2 contingency counts with fraud (label 1) as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    std::size_t positives() const noexcept { return tp + fn; }
    std::size_t negatives() const noexcept { return tn + fp; }

    bool operator==(const ConfusionMatrix&) const = default;
};

/// All values are fractions in [0, 1]. Undefined ratios (zero
/// denominators) are reported as 0.
struct MetricSet {
    double accuracy = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    /// (fp + fn) / total, the misclassification rate.
    double error = 0.0;

    bool operator==(const MetricSet&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);
MetricSet metric_set(const ConfusionMatrix& cm);

}  // namespace ssafs
