#include "ssafs/mlp.hpp"

#include <cmath>
#include <string>

#include "ssafs/error.hpp"
#include "ssafs/random.hpp"

namespace ssafs {

namespace {

double sigmoid(double z) noexcept
{
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) noexcept { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void hidden_activations(const MlpWeights& w, std::span<const double> x, std::vector<double>& out)
{
    out.resize(w.hidden());
    for (std::size_t h = 0; h < w.hidden(); ++h) {
        const auto row = w.hidden_weights.row(h);
        double z = w.hidden_bias[h];
        for (std::size_t j = 0; j < x.size(); ++j) {
            z += row[j] * x[j];
        }
        out[h] = sigmoid(z);
    }
}

void check_batch(const MlpWeights& w, const Matrix& x, std::span<const Label> y)
{
    if (x.cols() != w.inputs() || x.rows() != y.size() || x.rows() == 0) {
        throw ContractError("mlp: batch shape does not match the network");
    }
}

}  // namespace

void MlpConfig::validate() const
{
    if (hidden < 1) {
        throw ConfigError("mlp: hidden width must be at least 1");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("mlp: learning rate must be positive");
    }
}

std::vector<double> MlpWeights::flatten() const
{
    std::vector<double> p(hidden_weights.values().begin(), hidden_weights.values().end());
    p.insert(p.end(), hidden_bias.begin(), hidden_bias.end());
    p.insert(p.end(), output_weights.begin(), output_weights.end());
    p.push_back(output_bias);
    return p;
}

MlpWeights MlpWeights::unflatten(std::span<const double> params, std::size_t inputs, std::size_t hidden)
{
    const std::size_t expected = hidden * inputs + 2 * hidden + 1;
    if (params.size() != expected) {
        throw ContractError("mlp: expected " + std::to_string(expected) + " parameters, got " + std::to_string(params.size()));
    }
    MlpWeights w;
    auto it = params.begin();
    w.hidden_weights = Matrix(hidden, inputs, std::vector<double>(it, it + static_cast<std::ptrdiff_t>(hidden * inputs)));
    it += static_cast<std::ptrdiff_t>(hidden * inputs);
    w.hidden_bias.assign(it, it + static_cast<std::ptrdiff_t>(hidden));
    it += static_cast<std::ptrdiff_t>(hidden);
    w.output_weights.assign(it, it + static_cast<std::ptrdiff_t>(hidden));
    it += static_cast<std::ptrdiff_t>(hidden);
    w.output_bias = *it;
    return w;
}

MlpWeights mlp_init(std::size_t inputs, std::size_t hidden, std::uint64_t seed)
{
    Rng rng(derive_seed(seed, 0x4d4c50ULL));  // "MLP"
    std::vector<double> p(hidden * inputs + 2 * hidden + 1);
    for (auto& v : p) {
        v = rng.uniform(-0.5, 0.5);
    }
    return MlpWeights::unflatten(p, inputs, hidden);
}

double mlp_logit(const MlpWeights& w, std::span<const double> x)
{
    std::vector<double> a;
    hidden_activations(w, x, a);
    double z = w.output_bias;
    for (std::size_t h = 0; h < a.size(); ++h) {
        z += w.output_weights[h] * a[h];
    }
    return z;
}

double mlp_loss(const MlpWeights& w, const Matrix& x, std::span<const Label> y)
{
    check_batch(w, x, y);
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const double z = mlp_logit(w, x.row(r));
        // -[y log s(z) + (1-y) log(1-s(z))] = softplus(z) - y z
        total += softplus(z) - (y[r] == kFraud ? z : 0.0);
    }
    return total / static_cast<double>(x.rows());
}

MlpWeights mlp_gradient(const MlpWeights& w, const Matrix& x, std::span<const Label> y)
{
    check_batch(w, x, y);
    MlpWeights g;
    g.hidden_weights = Matrix(w.hidden(), w.inputs());
    g.hidden_bias.assign(w.hidden(), 0.0);
    g.output_weights.assign(w.hidden(), 0.0);
    g.output_bias = 0.0;

    const double scale = 1.0 / static_cast<double>(x.rows());
    std::vector<double> a;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto xr = x.row(r);
        hidden_activations(w, xr, a);
        double z = w.output_bias;
        for (std::size_t h = 0; h < a.size(); ++h) {
            z += w.output_weights[h] * a[h];
        }
        const double delta_out = (sigmoid(z) - (y[r] == kFraud ? 1.0 : 0.0)) * scale;
        g.output_bias += delta_out;
        for (std::size_t h = 0; h < a.size(); ++h) {
            g.output_weights[h] += delta_out * a[h];
            const double delta_h = delta_out * w.output_weights[h] * a[h] * (1.0 - a[h]);
            g.hidden_bias[h] += delta_h;
            auto grow = g.hidden_weights.row(h);
            for (std::size_t j = 0; j < xr.size(); ++j) {
                grow[j] += delta_h * xr[j];
            }
        }
    }
    return g;
}

MlpModel::MlpModel(Standardizer scaler, MlpWeights weights, MlpConfig config, std::vector<double> loss_history)
    : scaler_(std::move(scaler)), weights_(std::move(weights)), config_(config), loss_history_(std::move(loss_history))
{
    if (weights_.inputs() != scaler_.dim() || weights_.hidden_bias.size() != weights_.hidden() ||
        weights_.output_weights.size() != weights_.hidden()) {
        throw ContractError("mlp: weight shapes are inconsistent");
    }
    for (const double v : weights_.flatten()) {
        if (!std::isfinite(v)) {
            throw NumericError("mlp: non-finite weight");
        }
    }
}

double MlpModel::probability(std::span<const double> x) const { return sigmoid(mlp_logit(weights_, scaler_.apply(x))); }

Label MlpModel::predict(std::span<const double> x) const { return probability(x) >= 0.5 ? kFraud : kNormal; }

MlpModel mlp_fit(const Dataset& train, const MlpConfig& config)
{
    config.validate();
    auto scaler = Standardizer::fit(train.features());
    const Matrix z = scaler.apply(train.features());
    const auto y = train.labels();

    MlpWeights w = mlp_init(z.cols(), config.hidden, config.seed);
    std::vector<double> history;
    history.reserve(config.epochs + 1);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        const double loss = mlp_loss(w, z, y);
        if (!std::isfinite(loss)) {
            throw NumericError("mlp: non-finite loss at epoch " + std::to_string(epoch));
        }
        history.push_back(loss);
        const MlpWeights g = mlp_gradient(w, z, y);
        auto params = w.flatten();
        const auto grad = g.flatten();
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] -= config.learning_rate * grad[i];
        }
        w = MlpWeights::unflatten(params, z.cols(), config.hidden);
    }
    const double final_loss = mlp_loss(w, z, y);
    if (!std::isfinite(final_loss)) {
        throw NumericError("mlp: non-finite loss at epoch " + std::to_string(config.epochs));
    }
    history.push_back(final_loss);
    return MlpModel(std::move(scaler), std::move(w), config, std::move(history));
}

}  // namespace ssafs
