#include "ssafs/knn.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ssafs/error.hpp"

namespace ssafs {

Label knn_vote(std::span<const double> distances, std::span<const Label> labels, std::size_t k, std::vector<std::size_t>& order)
{
    const std::size_t n = distances.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto closer = [&](std::size_t a, std::size_t b) { return distances[a] < distances[b] || (distances[a] == distances[b] && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);

    std::size_t fraud_votes = 0;
    for (std::size_t i = 0; i < k; ++i) {
        fraud_votes += labels[order[i]] == kFraud ? 1 : 0;
    }
    const std::size_t normal_votes = k - fraud_votes;
    if (fraud_votes == normal_votes) {
        return labels[order[0]];
    }
    return fraud_votes > normal_votes ? kFraud : kNormal;
}

KnnModel::KnnModel(Standardizer scaler, Matrix train, std::vector<Label> labels, std::size_t k)
    : scaler_(std::move(scaler)), train_(std::move(train)), labels_(std::move(labels)), k_(k)
{
    if (k_ == 0) {
        throw ConfigError("knn: k must be positive");
    }
    if (k_ > labels_.size()) {
        throw ConfigError("knn: k = " + std::to_string(k_) + " exceeds training size " + std::to_string(labels_.size()));
    }
    if (train_.rows() != labels_.size() || train_.cols() != scaler_.dim()) {
        throw ContractError("knn: inconsistent training shapes");
    }
}

Label KnnModel::predict(std::span<const double> x) const
{
    const auto z = scaler_.apply(x);
    std::vector<double> dist(train_.rows());
    for (std::size_t i = 0; i < train_.rows(); ++i) {
        const auto row = train_.row(i);
        double s = 0.0;
        for (std::size_t c = 0; c < z.size(); ++c) {
            const double d = row[c] - z[c];
            s += d * d;
        }
        dist[i] = s;
    }
    std::vector<std::size_t> order;
    return knn_vote(dist, labels_, k_, order);
}

KnnModel knn_fit(const Dataset& train, std::size_t k)
{
    auto scaler = Standardizer::fit(train.features());
    auto z = scaler.apply(train.features());
    return KnnModel(std::move(scaler), std::move(z), std::vector<Label>(train.labels().begin(), train.labels().end()), k);
}

}  // namespace ssafs
