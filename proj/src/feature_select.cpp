#include "ssafs/feature_select.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ssafs/error.hpp"
#include "ssafs/knn.hpp"
#include "ssafs/metrics.hpp"
#include "ssafs/parallel.hpp"
#include "ssafs/standardizer.hpp"

namespace ssafs {

FeatureMask::FeatureMask(std::vector<bool> selected)
    : selected_(std::move(selected)), count_(static_cast<std::size_t>(std::count(selected_.begin(), selected_.end(), true)))
{
}

FeatureMask FeatureMask::from_indices(std::size_t total, std::span<const std::size_t> indices)
{
    std::vector<bool> bits(total, false);
    for (const auto j : indices) {
        if (j >= total) {
            throw ContractError("feature index " + std::to_string(j) + " out of range for " + std::to_string(total) + " attributes");
        }
        bits[j] = true;
    }
    return FeatureMask(std::move(bits));
}

std::vector<std::size_t> FeatureMask::indices() const
{
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t j = 0; j < selected_.size(); ++j) {
        if (selected_[j]) {
            out.push_back(j);
        }
    }
    return out;
}

void FitnessConfig::validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError("fitness.alpha must lie in [0, 1]");
    }
    if (k_neighbors < 1 || k_neighbors % 2 == 0) {
        throw ConfigError("fitness.k_neighbors must be a positive odd integer");
    }
    if (cv_folds < 2) {
        throw ConfigError("fitness.cv_folds must be at least 2");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("fitness.threshold must lie in (0, 1)");
    }
    if (!(empty_mask_fitness > 1.0) || !std::isfinite(empty_mask_fitness)) {
        throw ConfigError("fitness.empty_mask_fitness must be a finite value greater than 1");
    }
}

FeatureMask binarize(std::span<const double> position, double threshold)
{
    std::vector<bool> bits(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) {
        const double v = position[j];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ContractError("binarize: component " + std::to_string(j) + " = " + std::to_string(v) + " lies outside [0, 1]");
        }
        bits[j] = v > threshold;
    }
    return FeatureMask(std::move(bits));
}

// ---------------------------------------------------------------------------

FitnessEvaluator::FitnessEvaluator(const Dataset& data, FitnessConfig config) : config_(config), dim_(data.dim())
{
    config_.validate();
    if (dim_ == 0) {
        throw ConfigError("feature selection needs at least one attribute");
    }
    const auto counts = data.class_counts();
    if (counts[0] == 0 || counts[1] == 0) {
        throw DataError(std::string("dataset has no ") + (counts[0] == 0 ? "normal" : "fraud") + " samples");
    }
    const std::size_t smallest = std::min(counts[0], counts[1]);
    if (config_.cv_folds > smallest) {
        throw ConfigError("fitness.cv_folds = " + std::to_string(config_.cv_folds) + " exceeds the smallest class count " +
                          std::to_string(smallest));
    }

    folds_ = kfold_assign(data.labels(), config_.cv_folds, config_.seed);
    fold_data_.resize(config_.cv_folds);
    for (std::size_t f = 0; f < config_.cv_folds; ++f) {
        std::vector<std::size_t> train_idx;
        std::vector<std::size_t> test_idx;
        for (std::size_t i = 0; i < folds_.size(); ++i) {
            (folds_[i] == f ? test_idx : train_idx).push_back(i);
        }
        if (config_.k_neighbors > train_idx.size()) {
            throw ConfigError("fitness.k_neighbors = " + std::to_string(config_.k_neighbors) + " exceeds fold training size " +
                              std::to_string(train_idx.size()));
        }
        const Matrix train = data.features().select_rows(train_idx);
        const auto scaler = Standardizer::fit(train);
        Fold& fold = fold_data_[f];
        fold.train = scaler.apply(train);
        fold.test = scaler.apply(data.features().select_rows(test_idx));
        for (const auto i : train_idx) {
            fold.train_labels.push_back(data.labels()[i]);
        }
        for (const auto i : test_idx) {
            fold.test_labels.push_back(data.labels()[i]);
        }
    }
}

double FitnessEvaluator::cv_error(const FeatureMask& mask) const
{
    if (mask.size() != dim_) {
        throw ContractError("mask has " + std::to_string(mask.size()) + " entries, dataset has " + std::to_string(dim_) + " attributes");
    }
    if (mask.empty()) {
        throw ContractError("cv_error is undefined for an empty mask");
    }
    const auto cols = mask.indices();
    std::vector<double> dist;
    std::vector<std::size_t> order;
    std::vector<Label> predicted;
    double total = 0.0;
    for (const auto& fold : fold_data_) {
        dist.resize(fold.train.rows());
        predicted.clear();
        for (std::size_t t = 0; t < fold.test.rows(); ++t) {
            const auto query = fold.test.row(t);
            for (std::size_t i = 0; i < fold.train.rows(); ++i) {
                const auto row = fold.train.row(i);
                double s = 0.0;
                for (const auto c : cols) {
                    const double d = row[c] - query[c];
                    s += d * d;
                }
                dist[i] = s;
            }
            predicted.push_back(knn_vote(dist, fold.train_labels, config_.k_neighbors, order));
        }
        total += metric_set(confusion(fold.test_labels, predicted)).error;
    }
    return total / static_cast<double>(fold_data_.size());
}

double FitnessEvaluator::combine(double cv_error, std::size_t selected) const noexcept
{
    return config_.alpha * cv_error + (1.0 - config_.alpha) * (static_cast<double>(selected) / static_cast<double>(dim_));
}

double FitnessEvaluator::operator()(const FeatureMask& mask) const
{
    if (mask.size() != dim_) {
        throw ContractError("mask has " + std::to_string(mask.size()) + " entries, dataset has " + std::to_string(dim_) + " attributes");
    }
    if (mask.empty()) {
        return config_.empty_mask_fitness;
    }
    return combine(cv_error(mask), mask.count());
}

double fitness(const FeatureMask& mask, const Dataset& data, const FitnessConfig& config)
{
    return FitnessEvaluator(data, config)(mask);
}

namespace {

SelectionResult make_result(const FitnessEvaluator& evaluator, FeatureMask mask, double fitness)
{
    SelectionResult result;
    result.cv_error = mask.empty() ? 1.0 : evaluator.cv_error(mask);
    result.selected_indices = mask.indices();
    result.mask = std::move(mask);
    result.fitness = fitness;
    return result;
}

}  // namespace

SelectionResult select_features(const Dataset& data, const ssa::SsaParams& params, const FitnessConfig& config)
{
    const FitnessEvaluator evaluator(data, config);
    const std::size_t dim = data.dim();

    // Binarization collapses the continuous space onto at most 2^A masks, so
    // scores are memoized by mask.
    std::unordered_map<std::vector<bool>, double> cache;
    std::mutex cache_mutex;
    const ssa::Objective objective = [&](std::span<const double> x) {
        const FeatureMask mask = binarize(x, config.threshold);
        {
            const std::lock_guard lock(cache_mutex);
            if (const auto it = cache.find(mask.bits()); it != cache.end()) {
                return it->second;
            }
        }
        const double f = evaluator(mask);
        const std::lock_guard lock(cache_mutex);
        cache.emplace(mask.bits(), f);
        return f;
    };

    auto run = ssa::run(objective, params, ssa::Bounds::uniform(dim, 0.0, 1.0), dim);
    auto result = make_result(evaluator, binarize(run.best_position, config.threshold), run.best_fitness);
    result.convergence = std::move(run.convergence);
    return result;
}

SelectionResult exhaustive_oracle(const Dataset& data, const FitnessConfig& config, std::size_t max_dim, unsigned workers)
{
    const std::size_t dim = data.dim();
    if (dim > max_dim) {
        throw ConfigError("exhaustive oracle refuses " + std::to_string(dim) + " attributes; the limit is " + std::to_string(max_dim));
    }
    if (dim >= 63) {
        throw ConfigError("exhaustive oracle cannot enumerate " + std::to_string(dim) + " attributes");
    }
    const FitnessEvaluator evaluator(data, config);
    const std::size_t candidates = std::size_t{1} << dim;

    const auto mask_of = [dim](std::size_t code) {
        std::vector<bool> bits(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            bits[j] = ((code >> j) & 1U) != 0;
        }
        return FeatureMask(std::move(bits));
    };

    std::vector<double> scores(candidates);
    parallel_for(candidates, workers, [&](std::size_t code) { scores[code] = evaluator(mask_of(code)); });

    // Deterministic reduction: (fitness, L, lexicographic index list).
    std::size_t best = 0;
    std::vector<std::size_t> best_indices;
    for (std::size_t code = 1; code < candidates; ++code) {
        const auto better = [&] {
            if (scores[code] != scores[best]) {
                return scores[code] < scores[best];
            }
            const auto pc = static_cast<std::size_t>(std::popcount(code));
            const auto pb = static_cast<std::size_t>(std::popcount(best));
            if (pc != pb) {
                return pc < pb;
            }
            const auto indices = mask_of(code).indices();
            return indices < best_indices;
        }();
        if (better) {
            best = code;
            best_indices = mask_of(code).indices();
        }
    }
    return make_result(evaluator, mask_of(best), scores[best]);
}

}  // namespace ssafs
