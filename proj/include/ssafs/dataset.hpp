#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssafs/matrix.hpp"

namespace ssafs {

/// Class labels: 0 = normal, 1 = fraud (the positive class).
using Label = int;
inline constexpr Label kNormal = 0;
inline constexpr Label kFraud = 1;

/// Numeric feature matrix with binary labels. Instances are validated on
/// construction and treated as immutable afterwards.
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names, std::string source = {});

    const Matrix& features() const noexcept { return features_; }
    std::span<const Label> labels() const noexcept { return labels_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::string& source() const noexcept { return source_; }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return features_.cols(); }

    /// {normal count, fraud count}.
    std::array<std::size_t, 2> class_counts() const noexcept;

    Dataset select_rows(std::span<const std::size_t> indices) const;
    Dataset select_cols(std::span<const std::size_t> indices) const;

    bool operator==(const Dataset& other) const
    {
        return features_ == other.features_ && labels_ == other.labels_ && feature_names_ == other.feature_names_;
    }

private:
    Matrix features_;
    std::vector<Label> labels_;
    std::vector<std::string> feature_names_;
    std::string source_;
};

std::array<std::size_t, 2> count_classes(std::span<const Label> labels) noexcept;

/// Reads a comma-separated file with a header row. Every column other than
/// `label_column` becomes a feature, in file order. Labels accept 0/1 and
/// the aliases normal/fraud (case-insensitive).
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column);

/// Writes features followed by the label column. Values use the shortest
/// representation that round-trips exactly; lines end with LF.
void save_csv(const Dataset& data, const std::filesystem::path& path, const std::string& label_column = "label");
std::string to_csv(const Dataset& data, const std::string& label_column = "label");

struct SplitSpec {
    double test_fraction = 0.3;
    bool stratified = true;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SplitIndices {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

/// Deterministic train/test partition. The total test size is
/// round(test_fraction * n); when stratified, it is apportioned across the
/// classes by largest remainder, so each class is within one sample of its
/// exact share.
SplitIndices split_indices(std::span<const Label> labels, const SplitSpec& spec);
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

/// Stratified fold index per sample. Each class is shuffled independently
/// and dealt round-robin; the deal continues across classes so overall fold
/// sizes stay balanced too.
std::vector<std::size_t> kfold_assign(std::span<const Label> labels, std::size_t folds, std::uint64_t seed);
std::vector<std::size_t> kfold_assign(const Dataset& data, std::size_t folds, std::uint64_t seed);

struct SynthSpec {
    std::size_t n_samples = 300;
    std::size_t n_informative = 3;
    std::size_t n_noise = 7;
    /// Euclidean distance between the class centroids in units of the
    /// per-feature standard deviation, spread evenly over the informative
    /// features.
    double class_separation = 3.0;
    double fraud_fraction = 0.1;
    std::uint64_t seed = 0;

    /// `min_class_count` is the smallest class size the caller needs
    /// (typically the CV fold count).
    void validate(std::size_t min_class_count = 2) const;
    std::size_t fraud_count() const noexcept;
};

/// Informative features occupy columns [0, n_informative); noise features
/// follow. Feature names are V1..VA.
Dataset generate_synthetic(const SynthSpec& spec);

}  // namespace ssafs
