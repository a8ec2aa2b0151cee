#pragma once

// Small dense row-major matrices over an exact ring (rationals or Laurent series).

#include "equi/scalar_series.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <stdexcept>
#include <vector>

namespace equi {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto &x : data_)
            if (!equi::is_zero(x)) return false;
        return true;
    }

    Matrix &operator+=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
        return r;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not compose");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T &x = a(i, k);
                if (equi::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!equi::is_zero(b(k, j))) r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const T &c, const Matrix &m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.data_.size(); ++k) r.data_[k] = c * m.data_[k];
        return r;
    }

    bool operator==(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!(data_[k] == o.data_[k])) return false;
        return true;
    }

    template <class F>
    auto map(F &&f) const -> Matrix<decltype(f(std::declval<T>()))> {
        Matrix<decltype(f(std::declval<T>()))> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    void check_same_shape(const Matrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shapes differ");
    }
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using LaurentMatrix = Matrix<LaurentSeries>;

/// Rank over Q by Gaussian elimination.
std::size_t rank(RationalMatrix m);
/// Some x with A x = b, or nothing if the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix &A, const std::vector<Rational> &b);

}  // namespace equi
