#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ssafs/dataset.hpp"
#include "ssafs/feature_select.hpp"
#include "ssafs/metrics.hpp"
#include "ssafs/run_config.hpp"

namespace ssafs {

struct ClassifierOutcome {
    std::string name;  // table row, e.g. "SSA_KNN"
    std::vector<std::size_t> feature_indices;
    ConfusionMatrix confusion;
    MetricSet metrics;
    std::vector<Label> predictions;  // on the test split, in test order
    nlohmann::json model;
};

/// The serialized experiment record written as report.json.
struct RunReport {
    std::string command;
    RunConfig config;
    std::string source;
    std::vector<std::string> feature_names;
    std::size_t samples = 0;
    SplitIndices split;
    std::optional<SelectionResult> selection;
    std::vector<Label> test_labels;
    std::vector<ClassifierOutcome> classifiers;
    std::vector<std::pair<std::string, double>> timings;  // seconds

    nlohmann::json to_json() const;
};

/// Header `iteration,best_fitness`, one row per point.
std::string convergence_csv(std::span<const ssa::ConvergencePoint> curve);
/// One index per line.
std::string selected_features_text(std::span<const std::size_t> indices);
/// Fixed-width table: Accuracy, Recall, Precision, F1 as percentages with
/// two decimals, one row per classifier.
std::string metrics_table(std::span<const ClassifierOutcome> rows);

/// Loads the configured CSV or generates the configured synthetic set.
Dataset load_dataset(const RunConfig& config);

/// Feature selection on the training split. Writes report.json,
/// convergence.csv and selected_features.txt.
RunReport cmd_select(const RunConfig& config);

/// Trains the roster on the training split and scores the test split.
/// Writes report.json and metrics_table.txt, plus the selection files when
/// a selection was run.
RunReport cmd_compare(const RunConfig& config);

/// Exhaustive search on the training split. Writes report.json and
/// selected_features.txt. When `prior_report` names a select or compare
/// report, the gap to its selection is recorded.
nlohmann::json cmd_oracle(const RunConfig& config, const std::optional<std::filesystem::path>& prior_report = std::nullopt);

/// Writes a synthetic dataset as CSV; returns {normal, fraud} counts.
std::array<std::size_t, 2> cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_path);

}  // namespace ssafs
