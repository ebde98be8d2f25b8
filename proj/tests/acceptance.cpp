// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include "ssafs/commands.hpp"
#include "ssafs/knn.hpp"
#include "ssafs/gnb.hpp"
#include "ssafs/metrics.hpp"
#include "ssafs/mlp.hpp"
#include "ssafs/ssa.hpp"
#include "ssafs/svm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace ssafs;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail)
{
    std::printf("%s  %-22s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool non_increasing(std::span<const ssa::ConvergencePoint> curve)
{
    for (std::size_t t = 1; t < curve.size(); ++t) {
        if (!(curve[t].best_fitness <= curve[t - 1].best_fitness)) {
            return false;
        }
    }
    return true;
}

double seconds(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

RunConfig family_config(std::uint64_t seed, const fs::path& out)
{
    SynthSpec spec;
    spec.n_samples = 300;
    spec.n_informative = 3;
    spec.n_noise = 7;
    spec.class_separation = 4.0;
    spec.fraud_fraction = 0.2;
    RunConfig c;
    c.data.synthetic = spec;
    c.set_seed(seed);
    c.output_dir = out;
    return c;
}

Dataset blobs(std::size_t n, double separation, std::uint64_t seed)
{
    // Two 2-D unit Gaussians whose centers are `separation` apart.
    Rng rng(seed);
    const double shift = separation / std::sqrt(2.0);
    Matrix x(n, 2);
    std::vector<Label> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<Label>(i % 2);
        for (std::size_t j = 0; j < 2; ++j) {
            x(i, j) = rng.normal() + (y[i] == kFraud ? shift : 0.0);
        }
    }
    return Dataset(std::move(x), std::move(y), {});
}

double test_accuracy(const BinaryClassifier& model, const Dataset& test)
{
    return metric_set(confusion(test.labels(), model.predict(test.features()))).accuracy;
}

}  // namespace

int main()
{
    const fs::path root = fs::temp_directory_path() / ("ssafs_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    bool curves_ok = true;
    std::size_t curves = 0;

    // Synthetic family: 10 seeds, A = 10 (3 informative at separation 4,
    // 7 noise), n = 300, 20% fraud.
    int within = 0;
    int recovered = 0;
    int benefit = 0;
    double slowest = 0.0;
    std::string gaps;
    std::string picks;
    std::string accs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto dir = root / ("family_" + std::to_string(seed));
        auto cfg = family_config(seed, dir / "select");

        auto t0 = std::chrono::steady_clock::now();
        const auto sel = cmd_select(cfg);
        slowest = std::max(slowest, seconds(t0));

        auto ocfg = cfg;
        ocfg.output_dir = dir / "oracle";
        t0 = std::chrono::steady_clock::now();
        const auto orc = cmd_oracle(ocfg, cfg.output_dir / "report.json");
        slowest = std::max(slowest, seconds(t0));

        const double rel = orc["comparison"]["relative_gap"].get<double>();
        within += rel <= 0.02 ? 1 : 0;
        gaps += fmt(" %.3f", rel);

        const auto& idx = sel.selection->selected_indices;
        const auto informative = std::count_if(idx.begin(), idx.end(), [](std::size_t j) { return j < 3; });
        const auto noise = static_cast<std::ptrdiff_t>(idx.size()) - informative;
        recovered += informative == 3 && noise <= 2 ? 1 : 0;
        picks += " " + std::to_string(informative) + "+" + std::to_string(noise);

        curves_ok = curves_ok && non_increasing(sel.selection->convergence);
        ++curves;

        auto ccfg = cfg;
        ccfg.output_dir = dir / "compare";
        ccfg.roster = {ClassifierKind::SsaKnn, ClassifierKind::Knn};
        t0 = std::chrono::steady_clock::now();
        const auto cmp = cmd_compare(ccfg);
        slowest = std::max(slowest, seconds(t0));
        curves_ok = curves_ok && non_increasing(cmp.selection->convergence);
        ++curves;
        const double with_sel = cmp.classifiers[0].metrics.accuracy;
        const double with_all = cmp.classifiers[1].metrics.accuracy;
        benefit += with_sel >= with_all - 0.01 ? 1 : 0;
        accs += fmt(" %.3f/%.3f", with_sel, with_all);
    }
    report(within >= 8 && slowest < 60.0, "oracle equivalence",
           std::to_string(within) + "/10 within 2% (need 8), slowest run " + fmt("%.2f s", slowest) + "; relative gaps" + gaps);
    report(recovered >= 8, "informative recovery",
           std::to_string(recovered) + "/10 with all 3 informative and <= 2 noise (need 8); informative+noise" + picks);
    report(benefit >= 8, "selection benefit",
           std::to_string(benefit) + "/10 with selected >= all - 0.01 (need 8); test accuracy selected/all" + accs);

    // Metrics exactness.
    {
        const auto m = metric_set({.tp = 3, .fp = 1, .fn = 2, .tn = 4});
        bool ok = std::abs(m.accuracy - 0.7) <= 1e-12 && std::abs(m.precision - 0.75) <= 1e-12 && std::abs(m.recall - 0.6) <= 1e-12 &&
                  std::abs(m.f1 - 2.0 / 3.0) <= 1e-12;
        Rng rng(1000);
        int exact = 0;
        for (int i = 0; i < 1000; ++i) {
            ConfusionMatrix cm{rng.below(100), rng.below(100), rng.below(100), rng.below(100) + 1};
            const double total = static_cast<double>(cm.total());
            exact += metric_set(cm).accuracy == 1.0 - static_cast<double>(cm.fp + cm.fn) / total ? 1 : 0;
        }
        ok = ok && exact == 1000;
        report(ok, "metrics exactness",
               fmt("accuracy/precision/recall %.4f/%.4f/%.4f, ", m.accuracy, m.precision, m.recall) + fmt("f1 %.4f; ", m.f1) +
                   std::to_string(exact) + "/1000 random matrices exact");
    }

    // Classifier sanity on 6-sigma blobs, 200 train / 200 test.
    {
        double worst = 1.0;
        std::string worst_name;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto train = blobs(200, 6.0, seed);
            const auto test = blobs(200, 6.0, seed + 1000);
            const std::pair<std::string, double> scores[] = {
                {"KNN", test_accuracy(knn_fit(train, 5), test)},
                {"GNB", test_accuracy(gnb_fit(train), test)},
                {"MLP", test_accuracy(mlp_fit(train, {.seed = seed}), test)},
                {"SVM", test_accuracy(svm_fit(train, {.seed = seed}), test)},
            };
            for (const auto& [name, acc] : scores) {
                if (acc <= worst) {
                    worst = acc;
                    worst_name = name + " seed " + std::to_string(seed);
                }
            }
        }
        const Matrix x(3, 3, std::vector<double>{0.3, -1.2, 0.8, 1.5, 0.4, -0.7, -0.9, 0.2, 1.1});
        const std::vector<Label> y{1, 0, 1};
        double max_rel = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto w = mlp_init(3, 4, seed);
            const auto analytic = mlp_gradient(w, x, y).flatten();
            auto params = w.flatten();
            for (std::size_t i = 0; i < params.size(); ++i) {
                const double keep = params[i];
                params[i] = keep + 1e-5;
                const double up = mlp_loss(MlpWeights::unflatten(params, 3, 4), x, y);
                params[i] = keep - 1e-5;
                const double down = mlp_loss(MlpWeights::unflatten(params, 3, 4), x, y);
                params[i] = keep;
                const double numeric = (up - down) / 2e-5;
                const double denom = std::max({std::abs(numeric), std::abs(analytic[i]), 1e-8});
                max_rel = std::max(max_rel, std::abs(numeric - analytic[i]) / denom);
            }
        }
        report(worst >= 0.95 && max_rel < 1e-4, "classifier sanity",
               fmt("lowest test accuracy %.3f", worst) + " (" + worst_name + "), MLP gradient max relative error " + fmt("%.2e", max_rel));
    }

    // SSA on the 5-D sphere.
    {
        auto sphere = [](std::span<const double> v) {
            double s = 0.0;
            for (double e : v) {
                s += e * e;
            }
            return s;
        };
        int solved = 0;
        double worst = 0.0;
        bool identical = true;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            ssa::SsaParams p;
            p.population_size = 50;
            p.max_iterations = 100;
            p.seed = seed;
            const auto bounds = ssa::Bounds::uniform(5, -5.0, 5.0);
            const auto a = ssa::run(sphere, p, bounds, 5);
            const auto b = ssa::run(sphere, p, bounds, 5);
            identical = identical && a.convergence == b.convergence;
            curves_ok = curves_ok && non_increasing(a.convergence);
            ++curves;
            solved += a.best_fitness < 0.1 ? 1 : 0;
            worst = std::max(worst, a.best_fitness);
        }
        report(solved >= 9 && identical, "SSA optimizer sanity",
               std::to_string(solved) + "/10 seeds below 0.1 (worst " + fmt("%.2e", worst) + "), repeated curves " +
                   (identical ? "bit-identical" : "DIFFER"));
    }

    // Report fidelity.
    {
        auto cfg = family_config(7, root / "fidelity_a");
        cmd_compare(cfg);
        const auto table = slurp(cfg.output_dir / "metrics_table.txt");
        std::istringstream in(table);
        std::vector<std::string> lines;
        for (std::string l; std::getline(in, l);) {
            lines.push_back(l);
        }
        bool layout = lines.size() == 5;
        const char* expected_rows[] = {"SSA_KNN", "KNN", "NN", "NB"};
        for (std::size_t r = 1; layout && r < 5; ++r) {
            std::istringstream row(lines[r]);
            std::string name;
            row >> name;
            int numbers = 0;
            for (std::string cell; row >> cell;) {
                const auto dot = cell.find('.');
                const double v = std::stod(cell);
                layout = layout && dot != std::string::npos && cell.size() - dot == 3 && v >= 0.0 && v <= 100.0;
                ++numbers;
            }
            layout = layout && name == expected_rows[r - 1] && numbers >= 3;
        }

        auto again = config_from_json(nlohmann::json::parse(slurp(cfg.output_dir / "report.json")));
        again.output_dir = root / "fidelity_b";
        cmd_compare(again);
        std::size_t files = 0;
        bool same = true;
        for (const auto& e : fs::directory_iterator(cfg.output_dir)) {
            ++files;
            const auto name = e.path().filename();
            same = same && fs::exists(again.output_dir / name) && slurp(e.path()) == slurp(again.output_dir / name);
        }
        for (const auto& e : fs::directory_iterator(again.output_dir)) {
            same = same && fs::exists(cfg.output_dir / e.path().filename());
        }
        report(layout && same, "report fidelity",
               std::string("table ") + (layout ? "has 4 rows x 4 percent columns" : "layout mismatch") + ", rerun of " + std::to_string(files) +
                   " files " + (same ? "byte-identical" : "DIFFERS"));
    }

    report(curves_ok, "convergence shape", std::to_string(curves) + " curves checked, " + (curves_ok ? "all non-increasing" : "increase found"));

    fs::remove_all(root);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
