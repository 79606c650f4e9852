#include "pervcalc/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace pervcalc {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw InputError("ragged matrix literal");
        for (long v : row)
            data_.emplace_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, Scalar(1)); }

Matrix Matrix::scalar(std::size_t n, const Scalar& value)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = value;
    return m;
}

Matrix Matrix::column(std::span<const Scalar> entries)
{
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, 0) = entries[i];
    return m;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks)
{
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

Matrix Matrix::hstack(std::span<const Matrix> parts, std::size_t rows)
{
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows)
            throw InputError("hstack: row count mismatch");
        cols += p.cols();
    }
    Matrix m(rows, cols);
    std::size_t c0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                m(i, c0 + j) = p(i, j);
        c0 += p.cols();
    }
    return m;
}

Matrix Matrix::vstack(std::span<const Matrix> parts, std::size_t cols)
{
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols)
            throw InputError("vstack: column count mismatch");
        rows += p.rows();
    }
    Matrix m(rows, cols);
    std::size_t r0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(r0 + i, j) = p(i, j);
        r0 += p.rows();
    }
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const
{
    if (row + rows > rows_ || col + cols > cols_)
        throw std::out_of_range("matrix block out of range");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = (*this)(row + i, col + j);
    return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const
{
    Matrix m(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(indices[i], j);
    return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const
{
    Matrix m(rows_, indices.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            m(i, j) = (*this)(i, indices[j]);
    return m;
}

std::vector<Scalar> Matrix::column_vector(std::size_t c) const
{
    std::vector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, c);
    return v;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool Matrix::is_integral() const
{
    for (const auto& x : data_)
        if (x.get_den() != 1)
            return false;
    return true;
}

void Matrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_columns(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw InputError("matrix product: shape mismatch " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " * " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0)
                    m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InputError("matrix sum: shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i)
        m.data_[i] += b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InputError("matrix difference: shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i)
        m.data_[i] -= b.data_[i];
    return m;
}

Matrix operator*(const Scalar& s, const Matrix& a)
{
    Matrix m = a;
    for (auto& x : m.data_)
        x *= s;
    return m;
}

Matrix reduce(const Ring& ring, Matrix m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            ring.reduce_in_place(m(i, j));
    return m;
}

Scalar determinant(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square matrix");
    Matrix a = m;
    std::size_t n = a.rows();
    Scalar det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k) == 0)
            ++pivot;
        if (pivot == n)
            return Scalar(0);
        if (pivot != k) {
            a.swap_rows(pivot, k);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            Scalar f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::string to_string(const Matrix& m)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << (j ? ", " : "") << to_string(m(i, j));
        out << "]";
    }
    out << "]";
    return out.str();
}

}  // namespace pervcalc
