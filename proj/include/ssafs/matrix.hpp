#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ssafs/error.hpp"

namespace ssafs {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values) : rows_(rows), cols_(cols), data_(std::move(values))
    {
        if (data_.size() != rows_ * cols_) {
            throw ContractError("matrix: value count does not match shape");
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    /// Copies the listed rows, in order.
    Matrix select_rows(std::span<const std::size_t> indices) const
    {
        Matrix out(indices.size(), cols_);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const auto src = row(indices[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    /// Copies the listed columns, in order.
    Matrix select_cols(std::span<const std::size_t> indices) const
    {
        Matrix out(rows_, indices.size());
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t j = 0; j < indices.size(); ++j) {
                out(r, j) = (*this)(r, indices[j]);
            }
        }
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace ssafs
