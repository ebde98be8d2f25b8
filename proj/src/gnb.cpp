#include "ssafs/gnb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ssafs/error.hpp"

namespace ssafs {

GnbModel::GnbModel(Standardizer scaler, std::array<std::vector<double>, 2> means, std::array<std::vector<double>, 2> variances,
                   std::array<double, 2> priors, double epsilon)
    : scaler_(std::move(scaler)), means_(std::move(means)), variances_(std::move(variances)), priors_(priors), epsilon_(epsilon)
{
    if (!(epsilon_ > 0.0)) {
        throw ContractError("gnb: variance floor must be positive");
    }
    for (std::size_t c = 0; c < 2; ++c) {
        if (means_[c].size() != scaler_.dim() || variances_[c].size() != scaler_.dim()) {
            throw ContractError("gnb: parameter length does not match feature count");
        }
        for (auto& v : variances_[c]) {
            v = std::max(v, epsilon_);
        }
        if (!(priors_[c] > 0.0)) {
            throw ContractError("gnb: class priors must be positive");
        }
    }
    if (std::abs(priors_[0] + priors_[1] - 1.0) > 1e-12) {
        throw ContractError("gnb: priors must sum to 1");
    }
}

std::array<double, 2> GnbModel::log_joint(std::span<const double> x) const
{
    const auto z = scaler_.apply(x);
    std::array<double, 2> score{};
    for (std::size_t c = 0; c < 2; ++c) {
        double s = std::log(priors_[c]);
        for (std::size_t j = 0; j < z.size(); ++j) {
            const double v = variances_[c][j];
            const double d = z[j] - means_[c][j];
            s -= 0.5 * std::log(2.0 * std::numbers::pi * v) + d * d / (2.0 * v);
        }
        score[c] = s;
    }
    return score;
}

std::array<double, 2> GnbModel::posterior(std::span<const double> x) const
{
    const auto s = log_joint(x);
    const double top = std::max(s[0], s[1]);
    const double e0 = std::exp(s[0] - top);
    const double e1 = std::exp(s[1] - top);
    return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

Label GnbModel::predict(std::span<const double> x) const
{
    const auto s = log_joint(x);
    return s[1] > s[0] ? kFraud : kNormal;
}

GnbModel gnb_fit(const Dataset& train)
{
    const auto counts = train.class_counts();
    if (counts[0] == 0 || counts[1] == 0) {
        throw DataError("gnb: training data contains a single class");
    }
    if (counts[0] < 2 || counts[1] < 2) {
        throw DataError("gnb: each class needs at least 2 training samples");
    }
    auto scaler = Standardizer::fit(train.features());
    const Matrix z = scaler.apply(train.features());
    const std::size_t d = z.cols();

    std::array<std::vector<double>, 2> means{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    std::array<std::vector<double>, 2> vars{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    const auto labels = train.labels();
    for (std::size_t r = 0; r < z.rows(); ++r) {
        const std::size_t c = labels[r] == kFraud ? 1 : 0;
        for (std::size_t j = 0; j < d; ++j) {
            means[c][j] += z(r, j);
        }
    }
    for (std::size_t c = 0; c < 2; ++c) {
        for (auto& m : means[c]) {
            m /= static_cast<double>(counts[c]);
        }
    }
    for (std::size_t r = 0; r < z.rows(); ++r) {
        const std::size_t c = labels[r] == kFraud ? 1 : 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double dev = z(r, j) - means[c][j];
            vars[c][j] += dev * dev;
        }
    }

    double max_var = 0.0;
    const auto n = static_cast<double>(z.rows());
    for (std::size_t j = 0; j < d; ++j) {
        double mu = 0.0;
        for (std::size_t r = 0; r < z.rows(); ++r) {
            mu += z(r, j);
        }
        mu /= n;
        double v = 0.0;
        for (std::size_t r = 0; r < z.rows(); ++r) {
            v += (z(r, j) - mu) * (z(r, j) - mu);
        }
        max_var = std::max(max_var, v / n);
    }
    const double epsilon = max_var > 0.0 ? GnbModel::kVarianceSmoothing * max_var : GnbModel::kVarianceSmoothing;

    for (std::size_t c = 0; c < 2; ++c) {
        for (auto& v : vars[c]) {
            v = v / static_cast<double>(counts[c]) + epsilon;
        }
    }
    const std::array<double, 2> priors{static_cast<double>(counts[0]) / n, static_cast<double>(counts[1]) / n};
    return GnbModel(std::move(scaler), std::move(means), std::move(vars), priors, epsilon);
}

}  // namespace ssafs
