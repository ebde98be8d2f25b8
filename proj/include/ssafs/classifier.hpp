#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssafs/dataset.hpp"
#include "ssafs/matrix.hpp"

namespace ssafs {

/// Fitted binary model. Implementations are immutable after construction,
/// so predict may be called concurrently.
class BinaryClassifier {
public:
    virtual ~BinaryClassifier() = default;

    /// Number of raw (unstandardized) input features.
    virtual std::size_t dim() const noexcept = 0;
    virtual Label predict(std::span<const double> x) const = 0;

    std::vector<Label> predict(const Matrix& x) const
    {
        std::vector<Label> out;
        out.reserve(x.rows());
        for (std::size_t r = 0; r < x.rows(); ++r) {
            out.push_back(predict(x.row(r)));
        }
        return out;
    }
};

}  // namespace ssafs
