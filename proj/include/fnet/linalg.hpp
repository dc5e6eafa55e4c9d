#ifndef FNET_LINALG_HPP
#define FNET_LINALG_HPP

// Small dense matrices and Gaussian elimination, enough for the clearing
// and threat-index linear systems. Exact mode eliminates over rationals;
// float mode uses partial pivoting with a residual check.

#include <cstddef>
#include <optional>
#include <vector>

#include "fnet/scalar.hpp"

namespace fnet {

template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, S fill = S(0))
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    S& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    int rows_, cols_;
    std::vector<S> data_;
};

// Solves A x = b; returns nullopt when A is singular (exact zero pivot in
// exact mode, tiny pivot or large residual in float mode).
template <class S>
std::optional<std::vector<S>> solve_linear(Matrix<S> a, std::vector<S> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw input_error("solve_linear: shape mismatch");

    Matrix<S> a0;
    std::vector<S> b0;
    if constexpr (!scalar_traits<S>::exact) {
        a0 = a;
        b0 = b;
    }

    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        if constexpr (scalar_traits<S>::exact) {
            for (int r = col; r < n; ++r) {
                if (a(r, col) != S(0)) {
                    pivot = r;
                    break;
                }
            }
        } else {
            double best = 0.0;
            for (int r = col; r < n; ++r) {
                double mag = std::fabs(scalar_traits<S>::to_double(a(r, col)));
                if (mag > best) {
                    best = mag;
                    pivot = r;
                }
            }
            if (best < 1e-12) pivot = -1;
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        const S inv_pivot = S(1) / a(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == S(0)) continue;
            const S factor = a(r, col) * inv_pivot;
            a(r, col) = S(0);
            for (int j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
            b[r] -= factor * b[col];
        }
    }

    std::vector<S> x(n, S(0));
    for (int i = n - 1; i >= 0; --i) {
        S sum = b[i];
        for (int j = i + 1; j < n; ++j) sum -= a(i, j) * x[j];
        x[i] = sum / a(i, i);
    }

    if constexpr (!scalar_traits<S>::exact) {
        // residual check <= 1e-9
        for (int i = 0; i < n; ++i) {
            S r = -b0[i];
            for (int j = 0; j < n; ++j) r += a0(i, j) * x[j];
            if (std::fabs(scalar_traits<S>::to_double(r)) > 1e-9) return std::nullopt;
        }
    }
    return x;
}

} // namespace fnet

#endif
