#pragma once

#include <stdexcept>
#include <vector>

#include "bellforge/scalar.hpp"

namespace bellforge {

template <class T>
class DenseMatrix {
  public:
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols,
                                       scalar_policy<T>::from_int(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("DenseMatrix: bad shape");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& at(int r, int c) { return v_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& at(int r, int c) const { return v_[static_cast<std::size_t>(r) * cols_ + c]; }

  private:
    int rows_, cols_;
    std::vector<T> v_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Rational only.
Rat det_exact(DenseMatrix<Rat> m);

/// Rank of a matrix, destructive Gaussian elimination. Pivot choice: first
/// nonzero for Rat, largest magnitude with a 1e-9 cutoff for double.
template <class T>
int matrix_rank(DenseMatrix<T> m) {
    const int rows = m.rows(), cols = m.cols();
    int rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        if constexpr (scalar_policy<T>::exact) {
            for (int r = row; r < rows; ++r)
                if (!scalar_policy<T>::is_zero(m.at(r, col))) { pivot = r; break; }
        } else {
            T best = scalar_policy<T>::tolerance();
            for (int r = row; r < rows; ++r)
                if (scalar_abs(m.at(r, col)) > best) { best = scalar_abs(m.at(r, col)); pivot = r; }
        }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int c = col; c < cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        for (int r = row + 1; r < rows; ++r) {
            if (scalar_policy<T>::is_zero(m.at(r, col))) continue;
            T f = m.at(r, col) / m.at(row, col);
            for (int c = col; c < cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Rank of the affine span of a point list: rank of (p_i - p_0) rows.
template <class T>
int affine_rank(const std::vector<std::vector<T>>& points) {
    if (points.empty()) throw std::invalid_argument("affine_rank: empty point list");
    const std::size_t dim = points[0].size();
    for (const auto& p : points)
        if (p.size() != dim) throw std::invalid_argument("affine_rank: ragged point list");
    if (points.size() == 1) return 0;
    DenseMatrix<T> m(static_cast<int>(points.size()) - 1, static_cast<int>(dim));
    for (std::size_t i = 1; i < points.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m.at(static_cast<int>(i) - 1, static_cast<int>(j)) = points[i][j] - points[0][j];
    return matrix_rank(std::move(m));
}

}  // namespace bellforge
