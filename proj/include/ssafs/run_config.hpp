#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ssafs/dataset.hpp"
#include "ssafs/feature_select.hpp"
#include "ssafs/mlp.hpp"
#include "ssafs/ssa.hpp"
#include "ssafs/svm.hpp"

namespace ssafs {

enum class ClassifierKind { SsaKnn, Knn, Nn, Nb, Svm };

/// Lower-case roster token, e.g. "ssa_knn".
std::string roster_token(ClassifierKind kind);
/// Table row label, e.g. "SSA_KNN".
std::string row_label(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view token);
/// Comma-separated tokens, e.g. "ssa_knn,knn,nn,nb".
std::vector<ClassifierKind> parse_roster(std::string_view list);

struct DataSource {
    std::string path;
    std::string label_column = "label";
    std::optional<SynthSpec> synthetic;
};

struct ClassifierSettings {
    std::size_t knn_k = 5;
    MlpConfig mlp;
    SvmConfig svm;
};

/// Everything that determines the numbers a command produces. The output
/// directory is a run location rather than an input, so it is not part of
/// the echoed document.
struct RunConfig {
    std::uint64_t seed = 0;
    DataSource data;
    SplitSpec split;
    ssa::SsaParams ssa;
    FitnessConfig fitness;
    ClassifierSettings classifiers;
    std::vector<ClassifierKind> roster{ClassifierKind::SsaKnn, ClassifierKind::Knn, ClassifierKind::Nn, ClassifierKind::Nb};
    bool apply_mask_to_all = false;
    std::size_t oracle_max_dim = kDefaultOracleMaxDim;
    bool record_timings = false;

    std::filesystem::path output_dir = "out";

    /// Sets every seed field.
    void set_seed(std::uint64_t value);
    void validate() const;
};

nlohmann::json to_json(const RunConfig& config);

/// Overlays `doc` on the defaults. Unknown keys are rejected. A full
/// report.json is accepted too; its "config" member is used.
RunConfig config_from_json(const nlohmann::json& doc);

/// Sets `doc[a][b]...` for a dotted key such as "ssa.max_iterations". The
/// value is parsed as JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, std::string_view dotted_key, std::string_view value);

}  // namespace ssafs
