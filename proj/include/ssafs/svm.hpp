#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ssafs/classifier.hpp"
#include "ssafs/standardizer.hpp"

namespace ssafs {

struct SvmConfig {
    double lambda = 0.01;
    std::size_t epochs = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Pegasos update for the regularized hinge loss at step t (1-based) with
/// step size 1/(lambda t). The bias is treated as the weight of a constant
/// input and regularized with the rest. `target` is -1 or +1.
void pegasos_step(std::vector<double>& weights, double& bias, std::span<const double> x, int target, double lambda, std::size_t t);

/// Linear SVM on standardized inputs; predicts fraud when w.x + b >= 0.
class SvmModel : public BinaryClassifier {
public:
    SvmModel(Standardizer scaler, std::vector<double> weights, double bias, double lambda);

    std::size_t dim() const noexcept override { return scaler_.dim(); }
    Label predict(std::span<const double> x) const override;
    using BinaryClassifier::predict;

    double decision(std::span<const double> x) const;

    const Standardizer& scaler() const noexcept { return scaler_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    double lambda() const noexcept { return lambda_; }

private:
    Standardizer scaler_;
    std::vector<double> weights_;
    double bias_;
    double lambda_;
};

/// Stochastic subgradient descent, one shuffled pass over the data per epoch.
SvmModel svm_fit(const Dataset& train, const SvmConfig& config = {});

}  // namespace ssafs
