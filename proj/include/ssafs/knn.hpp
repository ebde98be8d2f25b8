#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssafs/classifier.hpp"
#include "ssafs/standardizer.hpp"

namespace ssafs {

/// Majority label among the k smallest distances. Distance ties go to the
/// lower index; a tied vote goes to the label of the single nearest point.
/// `order` is scratch space, resized as needed.
Label knn_vote(std::span<const double> distances, std::span<const Label> labels, std::size_t k, std::vector<std::size_t>& order);

class KnnModel : public BinaryClassifier {
public:
    KnnModel(Standardizer scaler, Matrix train, std::vector<Label> labels, std::size_t k);

    std::size_t dim() const noexcept override { return scaler_.dim(); }
    Label predict(std::span<const double> x) const override;
    using BinaryClassifier::predict;

    std::size_t k() const noexcept { return k_; }
    const Standardizer& scaler() const noexcept { return scaler_; }
    /// Standardized training points.
    const Matrix& train() const noexcept { return train_; }
    std::span<const Label> labels() const noexcept { return labels_; }

private:
    Standardizer scaler_;
    Matrix train_;
    std::vector<Label> labels_;
    std::size_t k_;
};

KnnModel knn_fit(const Dataset& train, std::size_t k);

}  // namespace ssafs
