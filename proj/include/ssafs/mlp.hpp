#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ssafs/classifier.hpp"
#include "ssafs/standardizer.hpp"

namespace ssafs {

struct MlpConfig {
    std::size_t hidden = 16;
    double learning_rate = 0.1;
    std::size_t epochs = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One sigmoid hidden layer feeding a single sigmoid output unit.
struct MlpWeights {
    Matrix hidden_weights;  // hidden x inputs
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;  // hidden
    double output_bias = 0.0;

    std::size_t inputs() const noexcept { return hidden_weights.cols(); }
    std::size_t hidden() const noexcept { return hidden_weights.rows(); }

    /// Parameters in a fixed order: hidden weights (row-major), hidden
    /// bias, output weights, output bias.
    std::vector<double> flatten() const;
    static MlpWeights unflatten(std::span<const double> params, std::size_t inputs, std::size_t hidden);

    bool operator==(const MlpWeights&) const = default;
};

/// Uniform in [-0.5, 0.5].
MlpWeights mlp_init(std::size_t inputs, std::size_t hidden, std::uint64_t seed);

/// Logit of the output unit.
double mlp_logit(const MlpWeights& w, std::span<const double> x);

/// Mean binary cross-entropy over the batch.
double mlp_loss(const MlpWeights& w, const Matrix& x, std::span<const Label> y);

/// Analytic gradient of mlp_loss, same layout as the weights.
MlpWeights mlp_gradient(const MlpWeights& w, const Matrix& x, std::span<const Label> y);

class MlpModel : public BinaryClassifier {
public:
    MlpModel(Standardizer scaler, MlpWeights weights, MlpConfig config, std::vector<double> loss_history = {});

    std::size_t dim() const noexcept override { return scaler_.dim(); }
    Label predict(std::span<const double> x) const override;
    using BinaryClassifier::predict;

    /// Output probability of the fraud class.
    double probability(std::span<const double> x) const;

    const Standardizer& scaler() const noexcept { return scaler_; }
    const MlpWeights& weights() const noexcept { return weights_; }
    const MlpConfig& config() const noexcept { return config_; }
    /// Full-batch loss before each epoch, plus the final loss.
    const std::vector<double>& loss_history() const noexcept { return loss_history_; }

private:
    Standardizer scaler_;
    MlpWeights weights_;
    MlpConfig config_;
    std::vector<double> loss_history_;
};

/// Full-batch gradient descent on standardized inputs.
MlpModel mlp_fit(const Dataset& train, const MlpConfig& config = {});

}  // namespace ssafs
