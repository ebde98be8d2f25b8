#include "ssafs/serialization.hpp"

#include "ssafs/error.hpp"

namespace ssafs {

using nlohmann::json;

namespace {

void expect_type(const json& j, const char* type)
{
    if (!j.is_object() || j.value("type", "") != type) {
        throw DataError(std::string("expected a serialized '") + type + "' model");
    }
}

template <class Fn>
auto guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed model document: ") + e.what());
    }
}

}  // namespace

json to_json(const Standardizer& s) { return json{{"mean", s.mean()}, {"stddev", s.stddev()}}; }

Standardizer standardizer_from_json(const json& j)
{
    return guarded([&] { return Standardizer(j.at("mean").get<std::vector<double>>(), j.at("stddev").get<std::vector<double>>()); });
}

json to_json(const ConfusionMatrix& cm) { return json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}}; }

json to_json(const MetricSet& m)
{
    return json{{"accuracy", m.accuracy}, {"recall", m.recall}, {"precision", m.precision}, {"f1", m.f1}, {"error", m.error}};
}

MetricSet metric_set_from_json(const json& j)
{
    return guarded([&] {
        MetricSet m;
        m.accuracy = j.at("accuracy").get<double>();
        m.recall = j.at("recall").get<double>();
        m.precision = j.at("precision").get<double>();
        m.f1 = j.at("f1").get<double>();
        m.error = j.at("error").get<double>();
        return m;
    });
}

json to_json(const GnbModel& m)
{
    return json{{"type", "gnb"},
                {"standardizer", to_json(m.scaler())},
                {"means", m.means()},
                {"variances", m.variances()},
                {"priors", m.priors()},
                {"epsilon", m.epsilon()}};
}

GnbModel gnb_from_json(const json& j)
{
    expect_type(j, "gnb");
    return guarded([&] {
        return GnbModel(standardizer_from_json(j.at("standardizer")), j.at("means").get<std::array<std::vector<double>, 2>>(),
                        j.at("variances").get<std::array<std::vector<double>, 2>>(), j.at("priors").get<std::array<double, 2>>(),
                        j.at("epsilon").get<double>());
    });
}

json to_json(const MlpModel& m)
{
    const auto& c = m.config();
    return json{{"type", "mlp"},
                {"standardizer", to_json(m.scaler())},
                {"inputs", m.weights().inputs()},
                {"hidden", m.weights().hidden()},
                {"parameters", m.weights().flatten()},
                {"training", {{"learning_rate", c.learning_rate}, {"epochs", c.epochs}, {"seed", c.seed}}}};
}

MlpModel mlp_from_json(const json& j)
{
    expect_type(j, "mlp");
    return guarded([&] {
        MlpConfig c;
        c.hidden = j.at("hidden").get<std::size_t>();
        c.learning_rate = j.at("training").at("learning_rate").get<double>();
        c.epochs = j.at("training").at("epochs").get<std::size_t>();
        c.seed = j.at("training").at("seed").get<std::uint64_t>();
        auto weights = MlpWeights::unflatten(j.at("parameters").get<std::vector<double>>(), j.at("inputs").get<std::size_t>(), c.hidden);
        return MlpModel(standardizer_from_json(j.at("standardizer")), std::move(weights), c);
    });
}

json to_json(const SvmModel& m)
{
    return json{{"type", "svm"}, {"standardizer", to_json(m.scaler())}, {"weights", m.weights()}, {"bias", m.bias()}, {"lambda", m.lambda()}};
}

SvmModel svm_from_json(const json& j)
{
    expect_type(j, "svm");
    return guarded([&] {
        return SvmModel(standardizer_from_json(j.at("standardizer")), j.at("weights").get<std::vector<double>>(), j.at("bias").get<double>(),
                        j.at("lambda").get<double>());
    });
}

json knn_reference(std::size_t k, const std::string& source, std::span<const std::size_t> train_rows, std::span<const std::size_t> feature_columns)
{
    return json{{"type", "knn"},
                {"k", k},
                {"dataset", source},
                {"train_rows", std::vector<std::size_t>(train_rows.begin(), train_rows.end())},
                {"feature_columns", std::vector<std::size_t>(feature_columns.begin(), feature_columns.end())}};
}

KnnModel knn_from_json(const json& j, const Dataset& source)
{
    expect_type(j, "knn");
    return guarded([&] {
        const auto rows = j.at("train_rows").get<std::vector<std::size_t>>();
        const auto cols = j.at("feature_columns").get<std::vector<std::size_t>>();
        for (const auto r : rows) {
            if (r >= source.size()) {
                throw DataError("knn reference row " + std::to_string(r) + " is outside the dataset");
            }
        }
        for (const auto c : cols) {
            if (c >= source.dim()) {
                throw DataError("knn reference column " + std::to_string(c) + " is outside the dataset");
            }
        }
        return knn_fit(source.select_rows(rows).select_cols(cols), j.at("k").get<std::size_t>());
    });
}

}  // namespace ssafs
