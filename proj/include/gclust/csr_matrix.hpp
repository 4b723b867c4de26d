#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gclust/dense_matrix.hpp"
#include "gclust/errors.hpp"

namespace gclust {

/// Compressed sparse row matrix of doubles. Immutable after construction;
/// safe to share across concurrent readers.
struct CsrMatrix {
    Index rows = 0;
    Index cols = 0;
    std::vector<Index> row_offsets;   // length rows+1, monotone
    std::vector<Index> col_indices;   // strictly increasing within each row
    std::vector<double> values;       // aligned with col_indices

    Index nnz() const noexcept { return static_cast<Index>(col_indices.size()); }

    std::span<const Index> row_cols(Index i) const {
        return {col_indices.data() + row_offsets[i],
                static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
    }
    std::span<const double> row_vals(Index i) const {
        return {values.data() + row_offsets[i],
                static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
    }

    /// Entry lookup by binary search; 0.0 when absent.
    double at(Index i, Index j) const {
        auto cols_i = row_cols(i);
        auto it = std::lower_bound(cols_i.begin(), cols_i.end(), j);
        if (it == cols_i.end() || *it != j) return 0.0;
        return values[static_cast<std::size_t>(row_offsets[i] + (it - cols_i.begin()))];
    }

    DenseMatrix to_dense() const {
        DenseMatrix d(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            auto cs = row_cols(i);
            auto vs = row_vals(i);
            for (std::size_t k = 0; k < cs.size(); ++k) d(i, cs[k]) = vs[k];
        }
        return d;
    }

    /// CSR of the transpose (counting sort over columns, stable within rows).
    CsrMatrix transposed() const {
        CsrMatrix t;
        t.rows = cols;
        t.cols = rows;
        t.row_offsets.assign(static_cast<std::size_t>(cols) + 1, 0);
        for (Index c : col_indices) ++t.row_offsets[static_cast<std::size_t>(c) + 1];
        for (std::size_t i = 1; i < t.row_offsets.size(); ++i)
            t.row_offsets[i] += t.row_offsets[i - 1];
        t.col_indices.resize(col_indices.size());
        t.values.resize(values.size());
        std::vector<Index> cursor(t.row_offsets.begin(), t.row_offsets.end() - 1);
        for (Index i = 0; i < rows; ++i) {
            for (Index k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
                const Index c = col_indices[static_cast<std::size_t>(k)];
                const Index pos = cursor[static_cast<std::size_t>(c)]++;
                t.col_indices[static_cast<std::size_t>(pos)] = i;
                t.values[static_cast<std::size_t>(pos)] = values[static_cast<std::size_t>(k)];
            }
        }
        return t;
    }

    static CsrMatrix from_dense(const DenseMatrix& d) {
        CsrMatrix m;
        m.rows = d.rows();
        m.cols = d.cols();
        m.row_offsets.reserve(static_cast<std::size_t>(d.rows()) + 1);
        m.row_offsets.push_back(0);
        for (Index i = 0; i < d.rows(); ++i) {
            for (Index j = 0; j < d.cols(); ++j) {
                if (d(i, j) != 0.0) {
                    m.col_indices.push_back(j);
                    m.values.push_back(d(i, j));
                }
            }
            m.row_offsets.push_back(m.nnz());
        }
        return m;
    }
};

}  // namespace gclust
