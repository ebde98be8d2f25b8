#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ssafs/dataset.hpp"
#include "ssafs/matrix.hpp"
#include "ssafs/ssa.hpp"

namespace ssafs {

/// Boolean selection over the A attributes of a dataset.
class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::vector<bool> selected);
    static FeatureMask from_indices(std::size_t total, std::span<const std::size_t> indices);
    static FeatureMask all(std::size_t total) { return FeatureMask(std::vector<bool>(total, true)); }

    std::size_t size() const noexcept { return selected_.size(); }
    /// Number of selected attributes (L).
    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    bool operator[](std::size_t j) const { return selected_[j]; }
    const std::vector<bool>& bits() const noexcept { return selected_; }
    std::vector<std::size_t> indices() const;

    bool operator==(const FeatureMask& other) const { return selected_ == other.selected_; }

private:
    std::vector<bool> selected_;
    std::size_t count_ = 0;
};

struct FitnessConfig {
    /// Weight on the classification error; 1 - alpha weighs L/A.
    double alpha = 0.9;
    std::size_t k_neighbors = 5;
    std::size_t cv_folds = 5;
    double threshold = 0.5;
    double empty_mask_fitness = 2.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SelectionResult {
    FeatureMask mask;
    double fitness = 0.0;
    std::vector<ssa::ConvergencePoint> convergence;
    double cv_error = 0.0;
    std::vector<std::size_t> selected_indices;
};

/// selected[j] = position[j] > threshold.
FeatureMask binarize(std::span<const double> position, double threshold);

/// Scores masks on one dataset. Fold assignment and the per-fold
/// standardized copies are computed once at construction; scoring is a pure
/// function of the mask and safe to call from several threads.
class FitnessEvaluator {
public:
    FitnessEvaluator(const Dataset& data, FitnessConfig config);

    /// Mean per-fold misclassification rate of k-NN restricted to the
    /// selected columns.
    double cv_error(const FeatureMask& mask) const;

    /// alpha * cv_error + (1 - alpha) * L / A, or empty_mask_fitness when
    /// nothing is selected.
    double operator()(const FeatureMask& mask) const;

    double combine(double cv_error, std::size_t selected) const noexcept;

    const FitnessConfig& config() const noexcept { return config_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::size_t>& folds() const noexcept { return folds_; }

private:
    struct Fold {
        Matrix train;  // standardized with this fold's training statistics
        Matrix test;
        std::vector<Label> train_labels;
        std::vector<Label> test_labels;
    };

    FitnessConfig config_;
    std::size_t dim_;
    std::vector<std::size_t> folds_;
    std::vector<Fold> fold_data_;
};

double fitness(const FeatureMask& mask, const Dataset& data, const FitnessConfig& config);

/// SSA over [0, 1]^A with objective fitness(binarize(x)).
SelectionResult select_features(const Dataset& data, const ssa::SsaParams& params, const FitnessConfig& config);

inline constexpr std::size_t kDefaultOracleMaxDim = 20;

/// Brute-force minimum over every non-empty mask. Ties prefer fewer
/// features, then the lexicographically smallest index list.
SelectionResult exhaustive_oracle(const Dataset& data, const FitnessConfig& config, std::size_t max_dim = kDefaultOracleMaxDim,
                                  unsigned workers = 0);

}  // namespace ssafs
