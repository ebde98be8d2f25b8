// Command-line front end: select, compare, oracle, synth.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssafs/commands.hpp"
#include "ssafs/error.hpp"
#include "ssafs/run_config.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> data;
    std::optional<std::string> label_col;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<std::size_t> k;
    std::optional<std::size_t> folds;
    std::optional<std::size_t> iters;
    std::optional<std::size_t> pop;
    std::optional<std::string> roster;
    bool apply_mask_to_all = false;
    bool timings = false;
};

void add_common(CLI::App* sub, CommonFlags& f)
{
    sub->add_option("--config", f.config_path, "JSON config (or a previous report.json)");
    sub->add_option("--data", f.data, "CSV dataset path");
    sub->add_option("--label-col", f.label_col, "Name of the label column");
    sub->add_option("--out", f.out, "Output directory");
    sub->add_option("--seed", f.seed, "Seed applied to every random stream");
    sub->add_option("--alpha", f.alpha, "Weight of the classification error in the fitness");
    sub->add_option("--k", f.k, "Neighbors for k-NN (fitness and classifiers)");
    sub->add_option("--folds", f.folds, "Cross-validation folds for the fitness");
    sub->add_option("--iters", f.iters, "SSA iterations");
    sub->add_option("--pop", f.pop, "SSA population size");
    sub->add_option("--roster", f.roster, "Comma-separated classifiers: ssa_knn,knn,nn,nb,svm");
    sub->add_flag("--apply-mask-to-all", f.apply_mask_to_all, "Also evaluate every classifier on the selected features");
    sub->add_flag("--timings", f.timings, "Record wall-clock timings in report.json");
    sub->allow_extras();
    sub->footer("Any config field can be set with its dotted name, e.g. --ssa.max_iterations=50 or --split.test_fraction 0.25");
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ssafs::IoError("cannot open config '" + path + "'");
    }
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
        throw ssafs::ConfigError("config '" + path + "' is not valid JSON");
    }
    return doc;
}

// Leftover arguments of the form --a.b=value or --a.b value.
void apply_dotted(json& doc, const std::vector<std::string>& extras)
{
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& arg = extras[i];
        if (arg.rfind("--", 0) != 0 || arg.find('.') == std::string::npos) {
            throw ssafs::ConfigError("unrecognized argument '" + arg + "'");
        }
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            ssafs::apply_override(doc, arg.substr(2, eq - 2), arg.substr(eq + 1));
        } else {
            if (i + 1 >= extras.size()) {
                throw ssafs::ConfigError("missing value for '" + arg + "'");
            }
            ssafs::apply_override(doc, arg.substr(2), extras[++i]);
        }
    }
}

ssafs::RunConfig build_config(const CommonFlags& f, const std::vector<std::string>& extras)
{
    json doc = f.config_path.empty() ? json::object() : read_json_file(f.config_path);
    if (doc.contains("config") && doc.contains("command")) {
        doc = doc["config"];
    }
    apply_dotted(doc, extras);
    if (f.data) {
        doc["data"]["path"] = *f.data;
        doc["data"]["synthetic"] = nullptr;
    }
    if (f.label_col) {
        doc["data"]["label_column"] = *f.label_col;
    }
    if (f.alpha) {
        doc["fitness"]["alpha"] = *f.alpha;
    }
    if (f.k) {
        doc["fitness"]["k_neighbors"] = *f.k;
        doc["classifiers"]["knn_k"] = *f.k;
    }
    if (f.folds) {
        doc["fitness"]["cv_folds"] = *f.folds;
    }
    if (f.iters) {
        doc["ssa"]["max_iterations"] = *f.iters;
    }
    if (f.pop) {
        doc["ssa"]["population_size"] = *f.pop;
    }
    if (f.roster) {
        doc["roster"] = *f.roster;
    }
    if (f.apply_mask_to_all) {
        doc["apply_mask_to_all"] = true;
    }
    if (f.timings) {
        doc["record_timings"] = true;
    }

    ssafs::RunConfig config = ssafs::config_from_json(doc);
    if (f.seed) {
        config.set_seed(*f.seed);
    }
    if (f.out) {
        config.output_dir = *f.out;
    }
    return config;
}

void print_timings(const ssafs::RunReport& report)
{
    for (const auto& [name, secs] : report.timings) {
        std::cerr << "time." << name << " = " << secs << " s\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Squirrel-search wrapper feature selection for fraud/normal classification"};
    app.require_subcommand(1);

    CommonFlags select_flags;
    CommonFlags compare_flags;
    CommonFlags oracle_flags;
    auto* select_cmd = app.add_subcommand("select", "Run SSA feature selection on the training split");
    auto* compare_cmd = app.add_subcommand("compare", "Compare classifiers with and without the selected features");
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustively search every feature subset");
    add_common(select_cmd, select_flags);
    add_common(compare_cmd, compare_flags);
    add_common(oracle_cmd, oracle_flags);
    std::string prior_report;
    oracle_cmd->add_option("--compare-report", prior_report, "report.json from select/compare to measure the gap against");

    ssafs::SynthSpec synth;
    std::string synth_out;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic imbalanced dataset as CSV");
    synth_cmd->add_option("--out", synth_out, "Output CSV path")->required();
    synth_cmd->add_option("--n", synth.n_samples, "Number of samples")->capture_default_str();
    synth_cmd->add_option("--informative", synth.n_informative, "Informative features")->capture_default_str();
    synth_cmd->add_option("--noise", synth.n_noise, "Pure-noise features")->capture_default_str();
    synth_cmd->add_option("--separation", synth.class_separation, "Centroid distance in feature standard deviations")
        ->capture_default_str();
    synth_cmd->add_option("--fraud", synth.fraud_fraction, "Fraction of fraud samples")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*select_cmd) {
            const auto config = build_config(select_flags, select_cmd->remaining());
            const auto report = ssafs::cmd_select(config);
            std::cout << "selected " << report.selection->selected_indices.size() << " of " << report.feature_names.size()
                      << " features, fitness " << report.selection->fitness << ", cv error " << report.selection->cv_error << "\n"
                      << "wrote " << config.output_dir.string() << "/{report.json,convergence.csv,selected_features.txt}\n";
            print_timings(report);
        } else if (*compare_cmd) {
            const auto config = build_config(compare_flags, compare_cmd->remaining());
            const auto report = ssafs::cmd_compare(config);
            std::cout << ssafs::metrics_table(report.classifiers);
            print_timings(report);
        } else if (*oracle_cmd) {
            const auto config = build_config(oracle_flags, oracle_cmd->remaining());
            const auto doc = ssafs::cmd_oracle(config, prior_report.empty() ? std::nullopt : std::optional<std::filesystem::path>(prior_report));
            std::cout << "oracle optimum " << doc["oracle"]["selected_indices"].dump() << ", fitness " << doc["oracle"]["fitness"].dump()
                      << "\n";
            if (doc.contains("comparison")) {
                std::cout << "gap to select: " << doc["comparison"]["gap"].dump() << "\n";
            }
        } else if (*synth_cmd) {
            const auto counts = ssafs::cmd_synth(synth, synth_out);
            std::cout << "normal: " << counts[0] << "\nfraud: " << counts[1] << "\n";
        }
    } catch (const ssafs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ssafs::exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
