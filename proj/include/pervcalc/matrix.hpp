#pragma once

#include "pervcalc/ring.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pervcalc {

/// Dense row-major matrix of exact rationals. Any shape is legal, including
/// 0 x n and n x 0. Arithmetic here is plain rational arithmetic; reduction
/// into a ring or module happens at the call sites that need it.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix scalar(std::size_t n, const Scalar& value);
    static Matrix column(std::span<const Scalar> entries);
    static Matrix block_diagonal(std::span<const Matrix> blocks);
    static Matrix hstack(std::span<const Matrix> parts, std::size_t rows);
    static Matrix vstack(std::span<const Matrix> parts, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const;
    Matrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
    Matrix select_rows(std::span<const std::size_t> indices) const;
    Matrix select_columns(std::span<const std::size_t> indices) const;
    std::vector<Scalar> column_vector(std::size_t c) const;

    bool is_zero() const;
    bool is_integral() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_columns(std::size_t a, std::size_t b);

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Entrywise reduction into the ring (mod p over F_p, integrality check over Z).
Matrix reduce(const Ring& ring, Matrix m);

/// Exact determinant of a square matrix (fraction-free elimination over Q).
Scalar determinant(const Matrix& m);

std::string to_string(const Matrix& m);

}  // namespace pervcalc
