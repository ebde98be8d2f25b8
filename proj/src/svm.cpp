#include "ssafs/svm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ssafs/error.hpp"
#include "ssafs/random.hpp"

namespace ssafs {

void SvmConfig::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("svm: lambda must be positive");
    }
}

void pegasos_step(std::vector<double>& weights, double& bias, std::span<const double> x, int target, double lambda, std::size_t t)
{
    const double eta = 1.0 / (lambda * static_cast<double>(t));
    double margin = bias;
    for (std::size_t j = 0; j < x.size(); ++j) {
        margin += weights[j] * x[j];
    }
    margin *= target;

    const double shrink = 1.0 - eta * lambda;
    for (auto& w : weights) {
        w *= shrink;
    }
    bias *= shrink;
    if (margin < 1.0) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            weights[j] += eta * target * x[j];
        }
        bias += eta * target;
    }
}

SvmModel::SvmModel(Standardizer scaler, std::vector<double> weights, double bias, double lambda)
    : scaler_(std::move(scaler)), weights_(std::move(weights)), bias_(bias), lambda_(lambda)
{
    if (weights_.size() != scaler_.dim()) {
        throw ContractError("svm: weight length does not match feature count");
    }
    for (const double w : weights_) {
        if (!std::isfinite(w)) {
            throw NumericError("svm: non-finite weight");
        }
    }
    if (!std::isfinite(bias_)) {
        throw NumericError("svm: non-finite bias");
    }
}

double SvmModel::decision(std::span<const double> x) const
{
    const auto z = scaler_.apply(x);
    double s = bias_;
    for (std::size_t j = 0; j < z.size(); ++j) {
        s += weights_[j] * z[j];
    }
    return s;
}

Label SvmModel::predict(std::span<const double> x) const { return decision(x) >= 0.0 ? kFraud : kNormal; }

SvmModel svm_fit(const Dataset& train, const SvmConfig& config)
{
    config.validate();
    auto scaler = Standardizer::fit(train.features());
    const Matrix z = scaler.apply(train.features());
    const auto y = train.labels();

    std::vector<double> w(z.cols(), 0.0);
    double b = 0.0;
    std::vector<std::size_t> order(z.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(config.seed, 0x53564dULL));  // "SVM"
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (const auto i : order) {
            pegasos_step(w, b, z.row(i), y[i] == kFraud ? 1 : -1, config.lambda, ++t);
        }
    }
    return SvmModel(std::move(scaler), std::move(w), b, config.lambda);
}

}  // namespace ssafs
