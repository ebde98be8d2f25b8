#pragma once

#include <span>

#include <json.hpp>

#include "ssafs/dataset.hpp"
#include "ssafs/gnb.hpp"
#include "ssafs/knn.hpp"
#include "ssafs/metrics.hpp"
#include "ssafs/mlp.hpp"
#include "ssafs/standardizer.hpp"
#include "ssafs/svm.hpp"

namespace ssafs {

nlohmann::json to_json(const Standardizer& s);
Standardizer standardizer_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const MetricSet& m);
MetricSet metric_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GnbModel& m);
GnbModel gnb_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MlpModel& m);
MlpModel mlp_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SvmModel& m);
SvmModel svm_from_json(const nlohmann::json& j);

/// k-NN models are stored by reference: the source dataset plus the
/// training row and feature column indices.
nlohmann::json knn_reference(std::size_t k, const std::string& source, std::span<const std::size_t> train_rows,
                             std::span<const std::size_t> feature_columns);
/// Refits the referenced model from `source`, which must be the dataset the
/// reference was written against.
KnnModel knn_from_json(const nlohmann::json& j, const Dataset& source);

}  // namespace ssafs
