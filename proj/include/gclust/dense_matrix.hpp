#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gclust/errors.hpp"

namespace gclust {

using Index = std::int64_t;

/// Row-major dense matrix of doubles. All numerics in the toolkit run in
/// 64-bit precision; there is no 32-bit compute mode.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows * cols), fill) {
        if (rows < 0 || cols < 0) throw ShapeError("matrix dimensions must be non-negative");
    }

    static DenseMatrix identity(Index n) {
        DenseMatrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const Index r = static_cast<Index>(rows.size());
        const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
        DenseMatrix m(r, c);
        Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Index>(row.size()) != c)
                throw ShapeError("from_rows: ragged initializer");
            Index j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(Index i, Index j) { return values_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(Index i, Index j) const { return values_[static_cast<std::size_t>(i * cols_ + j)]; }

    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }

    std::span<double> row(Index i) { return {values_.data() + i * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(Index i) const {
        return {values_.data() + i * cols_, static_cast<std::size_t>(cols_)};
    }

    std::span<double> flat() noexcept { return values_; }
    std::span<const double> flat() const noexcept { return values_; }

    void fill(double v) { values_.assign(values_.size(), v); }

    bool same_shape(const DenseMatrix& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

    bool all_finite() const noexcept {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs_diff(const DenseMatrix& o) const {
        if (!same_shape(o)) throw ShapeError("max_abs_diff: shape mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            m = std::max(m, std::abs(values_[i] - o.values_[i]));
        return m;
    }

    bool operator==(const DenseMatrix& o) const = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> values_;
};

inline void require_shape(const DenseMatrix& m, Index rows, Index cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols)
        throw ShapeError(std::string(what) + ": expected " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

}  // namespace gclust
