#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kszl/field.hpp"

namespace kszl {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix of exact scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Builds from row vectors; all rows must have length `cols`.
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const { return Vector(row(r).begin(), row(r).end()); }
    Vector col_vector(std::size_t c) const;

    void append_row(std::span<const FieldElement> values);

    Matrix transpose() const;
    Vector apply(std::span<const FieldElement> v) const;  // M * v

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FieldElement> data_;
};

struct RrefResult {
    std::size_t rank = 0;
    Matrix reduced;  // same shape as the input; zero rows at the bottom
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot rule: leftmost nonzero column, topmost
/// candidate row.
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Nonzero rows of rref(m): the canonical basis of the row space.
Matrix row_basis(const Matrix& m);

/// Basis (as rows) of {v : m * v = 0}, one vector per free column, with a 1
/// in that column.
Matrix nullspace(const Matrix& m);

/// Coefficients c with sum_i c_i * span.row(i) == v, or nullopt.
/// Throws DimensionMismatch when the lengths differ.
std::optional<Vector> solve_membership(const Matrix& span, std::span<const FieldElement> v);

/// Inverse of a square matrix; throws NotInvertible.
Matrix inverse(const Matrix& m);

/// True when the row spaces coincide.
bool same_row_space(const Matrix& a, const Matrix& b);

bool is_zero(std::span<const FieldElement> v);

}  // namespace kszl
