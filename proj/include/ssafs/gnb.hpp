#pragma once

#include <array>
#include <vector>

#include "ssafs/classifier.hpp"
#include "ssafs/standardizer.hpp"

namespace ssafs {

/// Gaussian naive Bayes over standardized inputs. Index 0 of each array is
/// the normal class, index 1 fraud.
class GnbModel : public BinaryClassifier {
public:
    static constexpr double kVarianceSmoothing = 1e-9;

    GnbModel(Standardizer scaler, std::array<std::vector<double>, 2> means, std::array<std::vector<double>, 2> variances,
             std::array<double, 2> priors, double epsilon);

    std::size_t dim() const noexcept override { return scaler_.dim(); }
    Label predict(std::span<const double> x) const override;
    using BinaryClassifier::predict;

    /// log prior + sum of per-feature Gaussian log densities.
    std::array<double, 2> log_joint(std::span<const double> x) const;
    /// Exp-normalized log_joint.
    std::array<double, 2> posterior(std::span<const double> x) const;

    const Standardizer& scaler() const noexcept { return scaler_; }
    const std::array<std::vector<double>, 2>& means() const noexcept { return means_; }
    const std::array<std::vector<double>, 2>& variances() const noexcept { return variances_; }
    const std::array<double, 2>& priors() const noexcept { return priors_; }
    double epsilon() const noexcept { return epsilon_; }

private:
    Standardizer scaler_;
    std::array<std::vector<double>, 2> means_;
    std::array<std::vector<double>, 2> variances_;
    std::array<double, 2> priors_;
    double epsilon_;
};

/// Per-class maximum-likelihood means and variances; every variance is
/// inflated by epsilon = 1e-9 * (largest feature variance).
GnbModel gnb_fit(const Dataset& train);

}  // namespace ssafs
