#include "ssafs/standardizer.hpp"

#include <cmath>
#include <string>

#include "ssafs/error.hpp"

namespace ssafs {

Standardizer::Standardizer(std::vector<double> mean, std::vector<double> stddev) : mean_(std::move(mean)), stddev_(std::move(stddev))
{
    if (mean_.size() != stddev_.size()) {
        throw ContractError("standardizer: mean and stddev lengths differ");
    }
    for (auto& s : stddev_) {
        if (!(s >= kStdFloor)) {
            s = kStdFloor;
        }
    }
}

Standardizer Standardizer::fit(const Matrix& train)
{
    if (train.rows() == 0) {
        throw DataError("standardizer: empty training matrix");
    }
    const std::size_t d = train.cols();
    const auto n = static_cast<double>(train.rows());
    std::vector<double> mean(d, 0.0);
    std::vector<double> sd(d, 0.0);
    for (std::size_t r = 0; r < train.rows(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            mean[c] += train(r, c);
        }
    }
    for (auto& m : mean) {
        m /= n;
    }
    for (std::size_t r = 0; r < train.rows(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double dev = train(r, c) - mean[c];
            sd[c] += dev * dev;
        }
    }
    for (auto& s : sd) {
        s = std::sqrt(s / n);
    }
    return Standardizer(std::move(mean), std::move(sd));
}

Standardizer Standardizer::identity(std::size_t dim) { return Standardizer(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)); }

void Standardizer::apply(std::span<const double> in, std::span<double> out) const
{
    if (in.size() != dim() || out.size() != dim()) {
        throw ContractError("standardizer: expected " + std::to_string(dim()) + " columns, got " + std::to_string(in.size()));
    }
    for (std::size_t c = 0; c < dim(); ++c) {
        out[c] = stddev_[c] <= kStdFloor ? 0.0 : (in[c] - mean_[c]) / stddev_[c];
    }
}

std::vector<double> Standardizer::apply(std::span<const double> in) const
{
    std::vector<double> out(in.size());
    apply(in, out);
    return out;
}

Matrix Standardizer::apply(const Matrix& x) const
{
    if (x.cols() != dim()) {
        throw ContractError("standardizer: expected " + std::to_string(dim()) + " columns, got " + std::to_string(x.cols()));
    }
    Matrix out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        apply(x.row(r), out.row(r));
    }
    return out;
}

Standardizer standardize_fit(const Dataset& train) { return Standardizer::fit(train.features()); }

Matrix standardize_apply(const Standardizer& s, const Matrix& x) { return s.apply(x); }

}  // namespace ssafs
