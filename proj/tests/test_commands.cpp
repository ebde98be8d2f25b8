#include "ssafs/commands.hpp"
#include "ssafs/error.hpp"
#include "ssafs/gnb.hpp"
#include "ssafs/mlp.hpp"
#include "ssafs/serialization.hpp"
#include "ssafs/svm.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ssafs;
using nlohmann::json;
using ssafs::test::TempDir;

namespace {

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small_config(const std::filesystem::path& out, std::uint64_t seed = 3)
{
    RunConfig c;
    SynthSpec spec;
    spec.n_samples = 120;
    spec.n_informative = 2;
    spec.n_noise = 4;
    spec.fraud_fraction = 0.25;
    c.data.synthetic = spec;
    c.ssa.population_size = 12;
    c.ssa.max_iterations = 8;
    c.classifiers.mlp.epochs = 40;
    c.set_seed(seed);
    c.output_dir = out;
    return c;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(SSAFS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> listing(const std::filesystem::path& dir)
{
    std::vector<std::string> names;
    if (std::filesystem::exists(dir)) {
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            names.push_back(e.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

TEST(Formats, ConvergenceCsv)
{
    const std::vector<ssa::ConvergencePoint> curve{{0, 0.5}, {1, 0.25}};
    EXPECT_EQ(convergence_csv(curve), "iteration,best_fitness\n0,0.5\n1,0.25\n");
    EXPECT_EQ(selected_features_text(std::vector<std::size_t>{1, 4}), "1\n4\n");
}

TEST(Formats, MetricsTable)
{
    ClassifierOutcome row;
    row.name = "SSA_KNN";
    row.metrics = metric_set({.tp = 3, .fp = 1, .fn = 2, .tn = 4});
    const auto table = metrics_table(std::vector<ClassifierOutcome>{row});
    EXPECT_EQ(table,
              "Classifier   Accuracy     Recall  Precision         F1\n"
              "SSA_KNN         70.00      60.00      75.00      66.67\n");
}

TEST(Commands, SelectWritesFiles)
{
    TempDir dir;
    const auto cfg = small_config(dir.path() / "sel");
    const auto report = cmd_select(cfg);
    EXPECT_EQ(listing(cfg.output_dir), (std::vector<std::string>{"convergence.csv", "report.json", "selected_features.txt"}));
    const auto doc = json::parse(slurp(cfg.output_dir / "report.json"));
    EXPECT_EQ(doc["command"], "select");
    EXPECT_EQ(doc["selection"]["selected_indices"].get<std::vector<std::size_t>>(), report.selection->selected_indices);
    EXPECT_FALSE(doc.contains("timings_seconds"));
    EXPECT_FALSE(doc["config"].contains("output_dir"));
    std::istringstream csv(slurp(cfg.output_dir / "convergence.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "iteration,best_fitness");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, cfg.ssa.max_iterations + 1);
}

TEST(Commands, ZeroIterationsGivesOneRow)
{
    TempDir dir;
    auto cfg = small_config(dir.path() / "z");
    cfg.ssa.max_iterations = 0;
    cmd_select(cfg);
    EXPECT_EQ(slurp(cfg.output_dir / "convergence.csv").find("iteration,best_fitness\n0,"), 0u);
    const auto text = slurp(cfg.output_dir / "convergence.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Commands, CompareTableAndRerun)
{
    TempDir dir;
    const auto cfg = small_config(dir.path() / "a");
    const auto report = cmd_compare(cfg);
    const auto table = slurp(cfg.output_dir / "metrics_table.txt");
    std::istringstream in(table);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) {
        lines.push_back(l);
    }
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[1].substr(0, 7), "SSA_KNN");
    EXPECT_EQ(lines[2].substr(0, 4), "KNN ");
    EXPECT_EQ(lines[3].substr(0, 3), "NN ");
    EXPECT_EQ(lines[4].substr(0, 3), "NB ");

    auto again = config_from_json(json::parse(slurp(cfg.output_dir / "report.json")));
    again.output_dir = dir.path() / "b";
    cmd_compare(again);
    EXPECT_EQ(listing(cfg.output_dir), listing(again.output_dir));
    for (const auto& name : listing(cfg.output_dir)) {
        EXPECT_EQ(slurp(cfg.output_dir / name), slurp(again.output_dir / name)) << name;
    }
}

TEST(Commands, ReportMetricsMatchPredictions)
{
    TempDir dir;
    auto cfg = small_config(dir.path() / "m", 9);
    cfg.roster = parse_roster("ssa_knn,knn,nn,nb,svm");
    cfg.apply_mask_to_all = true;
    cmd_compare(cfg);
    const auto doc = json::parse(slurp(cfg.output_dir / "report.json"));
    const auto truth = doc["test_labels"].get<std::vector<Label>>();
    ASSERT_EQ(doc["classifiers"].size(), 8u);
    for (const auto& row : doc["classifiers"]) {
        const auto pred = row["predictions"].get<std::vector<Label>>();
        const auto cm = confusion(truth, pred);
        EXPECT_EQ(row["confusion"]["tp"].get<std::size_t>(), cm.tp);
        EXPECT_EQ(row["confusion"]["fn"].get<std::size_t>(), cm.fn);
        EXPECT_EQ(metric_set_from_json(row["metrics"]), metric_set(cm)) << row["name"];
    }
}

TEST(Commands, StoredModelsReproducePredictions)
{
    TempDir dir;
    auto cfg = small_config(dir.path() / "s", 4);
    cfg.roster = parse_roster("knn,nn,nb,svm");
    cmd_compare(cfg);
    const auto doc = json::parse(slurp(cfg.output_dir / "report.json"));
    const auto data = load_dataset(cfg);
    const auto test_rows = doc["dataset"]["test_rows"].get<std::vector<std::size_t>>();
    const Matrix x = data.features().select_rows(test_rows);
    for (const auto& row : doc["classifiers"]) {
        const auto expected = row["predictions"].get<std::vector<Label>>();
        const std::string name = row["name"];
        if (name == "KNN") {
            EXPECT_EQ(knn_from_json(row["model"], data).predict(x), expected);
        } else if (name == "NN") {
            EXPECT_EQ(mlp_from_json(row["model"]).predict(x), expected);
        } else if (name == "NB") {
            EXPECT_EQ(gnb_from_json(row["model"]).predict(x), expected);
        } else if (name == "SVM") {
            EXPECT_EQ(svm_from_json(row["model"]).predict(x), expected);
        }
    }
}

TEST(Commands, OracleReportAndGap)
{
    TempDir dir;
    const auto cfg = small_config(dir.path() / "sel");
    cmd_select(cfg);
    auto ocfg = cfg;
    ocfg.output_dir = dir.path() / "orc";
    const auto doc = cmd_oracle(ocfg, cfg.output_dir / "report.json");
    EXPECT_EQ(doc["oracle"]["masks_evaluated"], 64);
    EXPECT_GE(doc["comparison"]["gap"].get<double>(), 0.0);
    EXPECT_EQ(listing(ocfg.output_dir), (std::vector<std::string>{"report.json", "selected_features.txt"}));
}

TEST(Commands, OracleRefusesWideData)
{
    TempDir dir;
    auto cfg = small_config(dir.path() / "w");
    cfg.data.synthetic->n_noise = 23;
    try {
        cmd_oracle(cfg);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("20"), std::string::npos);
    }
    EXPECT_FALSE(std::filesystem::exists(cfg.output_dir));
}

TEST(Commands, SynthCountsAndRoundTrip)
{
    TempDir dir;
    SynthSpec spec;
    spec.n_samples = 100;
    spec.seed = 5;
    const auto counts = cmd_synth(spec, dir.path() / "s.csv");
    EXPECT_EQ(counts[1], 10u);
    EXPECT_EQ(counts[0], 90u);
    EXPECT_EQ(load_csv(dir.path() / "s.csv", "label"), generate_synthetic(spec));
}

TEST(Config, JsonRoundTripAndOverrides)
{
    RunConfig c = small_config("x", 11);
    const auto back = config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    json doc = to_json(c);
    apply_override(doc, "ssa.max_iterations", "17");
    apply_override(doc, "data.label_column", "Class");
    const auto over = config_from_json(doc);
    EXPECT_EQ(over.ssa.max_iterations, 17u);
    EXPECT_EQ(over.data.label_column, "Class");
    json bad = to_json(c);
    bad["ssa"]["speed"] = 3;
    EXPECT_THROW(config_from_json(bad), ConfigError);
    EXPECT_THROW(parse_roster("knn,forest"), ConfigError);
}

TEST(Config, SeedReachesSyntheticData)
{
    RunConfig c = small_config("x", 21);
    EXPECT_EQ(c.data.synthetic->seed, 21u);
    json doc = to_json(c);
    doc["data"]["synthetic"].erase("seed");
    doc["seed"] = 8;
    EXPECT_EQ(config_from_json(doc).data.synthetic->seed, 8u);
    EXPECT_FALSE(load_dataset(small_config("x", 1)) == load_dataset(small_config("x", 2)));
}

TEST(Cli, ExitCodesAndOutputs)
{
    TempDir dir;
    const auto d = dir.path();
    ASSERT_EQ(run_cli("synth --out " + (d / "s.csv").string() + " --n 100 --seed 2"), 0);
    EXPECT_EQ(run_cli("select --data " + (d / "s.csv").string() + " --iters 3 --pop 10 --out " + (d / "o").string()), 0);
    EXPECT_EQ(listing(d / "o"), (std::vector<std::string>{"convergence.csv", "report.json", "selected_features.txt"}));
    EXPECT_EQ(run_cli("oracle --config " + (d / "o" / "report.json").string() + " --out " + (d / "g").string() +
                      " --compare-report " + (d / "o" / "report.json").string()),
              0);

    EXPECT_EQ(run_cli("select --bogus-flag"), 1);
    EXPECT_EQ(run_cli("select --data " + (d / "s.csv").string() + " --alpha 3 --out " + (d / "e1").string()), 1);
    EXPECT_EQ(run_cli("select --data " + (d / "missing.csv").string() + " --out " + (d / "e2").string()), 2);
    std::ofstream(d / "nan.csv") << "a,b,label\n1,nan,0\n2,3,1\n";
    EXPECT_EQ(run_cli("select --data " + (d / "nan.csv").string() + " --out " + (d / "e3").string()), 2);
    EXPECT_EQ(run_cli("compare --data " + (d / "s.csv").string() + " --ssa.speed=4 --out " + (d / "e4").string()), 1);
    for (const char* name : {"e1", "e2", "e3", "e4"}) {
        EXPECT_FALSE(std::filesystem::exists(d / name)) << name;
    }
}

TEST(Cli, RerunFromEchoedConfigIsByteIdentical)
{
    TempDir dir;
    const auto d = dir.path();
    ASSERT_EQ(run_cli("compare --seed 6 --data.synthetic.n_samples=150 --ssa.max_iterations=5 --ssa.population_size=10 "
                      "--classifiers.mlp.epochs=30 --out " +
                      (d / "a").string()),
              0);
    ASSERT_EQ(run_cli("compare --config " + (d / "a" / "report.json").string() + " --out " + (d / "b").string()), 0);
    const auto names = listing(d / "a");
    EXPECT_EQ(names.size(), 4u);
    EXPECT_EQ(names, listing(d / "b"));
    for (const auto& name : names) {
        EXPECT_EQ(slurp(d / "a" / name), slurp(d / "b" / name)) << name;
    }
    for (const auto& e : std::filesystem::recursive_directory_iterator(d)) {
        EXPECT_NE(e.path().extension(), ".partial") << e.path();
    }
}
