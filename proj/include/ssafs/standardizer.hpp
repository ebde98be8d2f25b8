#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssafs/dataset.hpp"
#include "ssafs/matrix.hpp"

namespace ssafs {

/// Per-feature z-scoring learned from training data. Columns whose
/// training standard deviation falls below kStdFloor are treated as
/// constant and map to 0.
class Standardizer {
public:
    static constexpr double kStdFloor = 1e-12;

    Standardizer() = default;
    Standardizer(std::vector<double> mean, std::vector<double> stddev);

    static Standardizer fit(const Matrix& train);
    static Standardizer identity(std::size_t dim);

    std::size_t dim() const noexcept { return mean_.size(); }
    const std::vector<double>& mean() const noexcept { return mean_; }
    const std::vector<double>& stddev() const noexcept { return stddev_; }

    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> in) const;
    Matrix apply(const Matrix& x) const;

private:
    std::vector<double> mean_;
    std::vector<double> stddev_;
};

Standardizer standardize_fit(const Dataset& train);
Matrix standardize_apply(const Standardizer& s, const Matrix& x);

}  // namespace ssafs
