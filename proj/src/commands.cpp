#include "ssafs/commands.hpp"

#include <chrono>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "ssafs/error.hpp"
#include "ssafs/gnb.hpp"
#include "ssafs/knn.hpp"
#include "ssafs/mlp.hpp"
#include "ssafs/serialization.hpp"
#include "ssafs/svm.hpp"

namespace ssafs {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Files are written under temporary names and renamed once all of them
/// are on disk; a failure removes whatever was staged.
class StagedOutput {
public:
    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

    void commit(const std::filesystem::path& dir) const
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
        }
        std::vector<std::filesystem::path> staged;
        const auto discard = [&] {
            for (const auto& p : staged) {
                std::filesystem::remove(p, ec);
            }
        };
        for (const auto& [name, content] : files_) {
            const auto tmp = dir / (name + ".partial");
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (out) {
                staged.push_back(tmp);
                out << content;
            }
            if (!out) {
                discard();
                throw IoError("cannot write '" + (dir / name).string() + "'");
            }
        }
        for (std::size_t i = 0; i < files_.size(); ++i) {
            std::filesystem::rename(staged[i], dir / files_[i].first, ec);
            if (ec) {
                discard();
                throw IoError("cannot finalize '" + (dir / files_[i].first).string() + "': " + ec.message());
            }
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

json convergence_json(std::span<const ssa::ConvergencePoint> curve)
{
    json out = json::array();
    for (const auto& p : curve) {
        out.push_back({p.iteration, p.best_fitness});
    }
    return out;
}

json selection_json(const SelectionResult& s, std::size_t dim)
{
    return json{{"selected_indices", s.selected_indices},
                {"selected_count", s.mask.count()},
                {"attributes", dim},
                {"fitness", s.fitness},
                {"cv_error", s.cv_error},
                {"convergence", convergence_json(s.convergence)}};
}

struct Prepared {
    Dataset data;
    SplitIndices split;
    Dataset train;
    Dataset test;
};

Prepared prepare(const RunConfig& config, RunReport& report, std::string command)
{
    config.validate();
    Prepared p;
    p.data = load_dataset(config);
    p.split = split_indices(p.data.labels(), config.split);
    p.train = p.data.select_rows(p.split.train);
    p.test = p.data.select_rows(p.split.test);

    report.command = std::move(command);
    report.config = config;
    report.source = p.data.source();
    report.feature_names = p.data.feature_names();
    report.samples = p.data.size();
    report.split = p.split;
    report.test_labels.assign(p.test.labels().begin(), p.test.labels().end());
    return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ClassifierOutcome evaluate_classifier(ClassifierKind kind, bool masked, const RunConfig& config, const Prepared& p,
                                      std::span<const std::size_t> selected)
{
    ClassifierOutcome out;
    out.name = masked && kind != ClassifierKind::SsaKnn ? "SSA_" + row_label(kind) : row_label(kind);
    if (masked) {
        if (selected.empty()) {
            throw StateError("feature selection produced an empty mask");
        }
        out.feature_indices.assign(selected.begin(), selected.end());
    } else {
        for (std::size_t j = 0; j < p.data.dim(); ++j) {
            out.feature_indices.push_back(j);
        }
    }
    const Dataset train = p.train.select_cols(out.feature_indices);
    const Matrix test_x = p.test.features().select_cols(out.feature_indices);

    std::unique_ptr<BinaryClassifier> model;
    switch (kind) {
    case ClassifierKind::SsaKnn:
    case ClassifierKind::Knn: {
        auto m = std::make_unique<KnnModel>(knn_fit(train, config.classifiers.knn_k));
        out.model = knn_reference(config.classifiers.knn_k, p.data.source(), p.split.train, out.feature_indices);
        model = std::move(m);
        break;
    }
    case ClassifierKind::Nn: {
        auto m = std::make_unique<MlpModel>(mlp_fit(train, config.classifiers.mlp));
        out.model = to_json(*m);
        model = std::move(m);
        break;
    }
    case ClassifierKind::Nb: {
        auto m = std::make_unique<GnbModel>(gnb_fit(train));
        out.model = to_json(*m);
        model = std::move(m);
        break;
    }
    case ClassifierKind::Svm: {
        auto m = std::make_unique<SvmModel>(svm_fit(train, config.classifiers.svm));
        out.model = to_json(*m);
        model = std::move(m);
        break;
    }
    }
    out.predictions = model->predict(test_x);
    out.confusion = confusion(p.test.labels(), out.predictions);
    out.metrics = metric_set(out.confusion);
    return out;
}

}  // namespace

json RunReport::to_json() const
{
    json doc{{"command", command},
             {"config", ssafs::to_json(config)},
             {"seed", config.seed},
             {"dataset",
              {{"source", source},
               {"samples", samples},
               {"attributes", feature_names.size()},
               {"feature_names", feature_names},
               {"train_rows", split.train},
               {"test_rows", split.test}}}};
    if (selection) {
        doc["selection"] = selection_json(*selection, feature_names.size());
    }
    if (!classifiers.empty()) {
        doc["test_labels"] = test_labels;
        json rows = json::array();
        for (const auto& c : classifiers) {
            rows.push_back({{"name", c.name},
                            {"feature_indices", c.feature_indices},
                            {"confusion", ssafs::to_json(c.confusion)},
                            {"metrics", ssafs::to_json(c.metrics)},
                            {"predictions", c.predictions},
                            {"model", c.model}});
        }
        doc["classifiers"] = rows;
    }
    if (config.record_timings) {
        json t = json::object();
        for (const auto& [name, secs] : timings) {
            t[name] = secs;
        }
        doc["timings_seconds"] = t;
    }
    return doc;
}

std::string convergence_csv(std::span<const ssa::ConvergencePoint> curve)
{
    std::string out = "iteration,best_fitness\n";
    for (const auto& p : curve) {
        out += std::to_string(p.iteration);
        out += ',';
        out += format_double(p.best_fitness);
        out += '\n';
    }
    return out;
}

std::string selected_features_text(std::span<const std::size_t> indices)
{
    std::string out;
    for (const auto j : indices) {
        out += std::to_string(j);
        out += '\n';
    }
    return out;
}

std::string metrics_table(std::span<const ClassifierOutcome> rows)
{
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n", "Classifier", "Accuracy", "Recall", "Precision", "F1");
    out += line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%-10s %10.2f %10.2f %10.2f %10.2f\n", r.name.c_str(), 100.0 * r.metrics.accuracy,
                      100.0 * r.metrics.recall, 100.0 * r.metrics.precision, 100.0 * r.metrics.f1);
        out += line;
    }
    return out;
}

Dataset load_dataset(const RunConfig& config)
{
    if (config.data.synthetic) {
        return generate_synthetic(*config.data.synthetic);
    }
    if (config.data.path.empty()) {
        throw ConfigError("no dataset configured");
    }
    return load_csv(config.data.path, config.data.label_column);
}

RunReport cmd_select(const RunConfig& config)
{
    const auto start = Clock::now();
    RunReport report;
    const Prepared p = prepare(config, report, "select");
    report.timings.emplace_back("load", seconds_since(start));

    const auto t0 = Clock::now();
    report.selection = select_features(p.train, config.ssa, config.fitness);
    report.timings.emplace_back("selection", seconds_since(t0));
    report.timings.emplace_back("total", seconds_since(start));

    StagedOutput files;
    files.add("report.json", dump(report.to_json()));
    files.add("convergence.csv", convergence_csv(report.selection->convergence));
    files.add("selected_features.txt", selected_features_text(report.selection->selected_indices));
    files.commit(config.output_dir);
    return report;
}

RunReport cmd_compare(const RunConfig& config)
{
    const auto start = Clock::now();
    RunReport report;
    const Prepared p = prepare(config, report, "compare");
    report.timings.emplace_back("load", seconds_since(start));

    const auto& roster = config.roster;
    const bool wants_selection =
        config.apply_mask_to_all || std::find(roster.begin(), roster.end(), ClassifierKind::SsaKnn) != roster.end();
    if (wants_selection) {
        const auto t0 = Clock::now();
        report.selection = select_features(p.train, config.ssa, config.fitness);
        report.timings.emplace_back("selection", seconds_since(t0));
    }
    const std::vector<std::size_t> selected = report.selection ? report.selection->selected_indices : std::vector<std::size_t>{};

    const auto t1 = Clock::now();
    for (const auto kind : roster) {
        report.classifiers.push_back(evaluate_classifier(kind, kind == ClassifierKind::SsaKnn, config, p, selected));
        if (config.apply_mask_to_all && kind != ClassifierKind::SsaKnn) {
            if (kind == ClassifierKind::Knn) {
                if (std::find(roster.begin(), roster.end(), ClassifierKind::SsaKnn) == roster.end()) {
                    report.classifiers.push_back(evaluate_classifier(ClassifierKind::SsaKnn, true, config, p, selected));
                }
            } else {
                report.classifiers.push_back(evaluate_classifier(kind, true, config, p, selected));
            }
        }
    }
    report.timings.emplace_back("classifiers", seconds_since(t1));
    report.timings.emplace_back("total", seconds_since(start));

    StagedOutput files;
    files.add("report.json", dump(report.to_json()));
    files.add("metrics_table.txt", metrics_table(report.classifiers));
    if (report.selection) {
        files.add("convergence.csv", convergence_csv(report.selection->convergence));
        files.add("selected_features.txt", selected_features_text(report.selection->selected_indices));
    }
    files.commit(config.output_dir);
    return report;
}

json cmd_oracle(const RunConfig& config, const std::optional<std::filesystem::path>& prior_report)
{
    const auto start = Clock::now();
    RunReport base;
    const Prepared p = prepare(config, base, "oracle");
    if (p.data.dim() > config.oracle_max_dim) {
        throw ConfigError("oracle refuses " + std::to_string(p.data.dim()) + " attributes; the limit is " +
                          std::to_string(config.oracle_max_dim) + " features");
    }

    std::optional<json> prior;
    if (prior_report) {
        std::ifstream in(*prior_report);
        if (!in) {
            throw IoError("cannot open prior report '" + prior_report->string() + "'");
        }
        prior = json::parse(in, nullptr, false);
        if (prior->is_discarded() || !prior->contains("selection")) {
            throw DataError("'" + prior_report->string() + "' is not a report with a selection");
        }
    }

    const auto result = exhaustive_oracle(p.train, config.fitness, config.oracle_max_dim, config.ssa.workers);
    json doc = base.to_json();
    json oracle = selection_json(result, p.data.dim());
    oracle.erase("convergence");
    std::vector<bool> mask = result.mask.bits();
    oracle["mask"] = mask;
    oracle["masks_evaluated"] = (std::size_t{1} << p.data.dim());
    doc["oracle"] = oracle;
    if (prior) {
        const double select_fitness = prior->at("selection").at("fitness").get<double>();
        doc["comparison"] = {{"report", prior_report->string()},
                             {"select_fitness", select_fitness},
                             {"select_indices", prior->at("selection").at("selected_indices")},
                             {"oracle_fitness", result.fitness},
                             {"gap", select_fitness - result.fitness},
                             {"relative_gap", result.fitness > 0.0 ? (select_fitness - result.fitness) / result.fitness : 0.0}};
    }
    if (config.record_timings) {
        doc["timings_seconds"] = {{"total", seconds_since(start)}};
    }

    StagedOutput files;
    files.add("report.json", dump(doc));
    files.add("selected_features.txt", selected_features_text(result.selected_indices));
    files.commit(config.output_dir);
    return doc;
}

std::array<std::size_t, 2> cmd_synth(const SynthSpec& spec, const std::filesystem::path& out_path)
{
    const Dataset data = generate_synthetic(spec);
    const auto dir = out_path.parent_path();
    StagedOutput files;
    files.add(out_path.filename().string(), to_csv(data));
    files.commit(dir.empty() ? std::filesystem::path(".") : dir);
    return data.class_counts();
}

}  // namespace ssafs
