#include "kszl/matrix.hpp"

#include <sstream>

namespace kszl {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vector Matrix::col_vector(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::append_row(std::span<const FieldElement> values) {
    if (values.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch,
                    "row of length " + std::to_string(values.size()) + " in a matrix with " +
                        std::to_string(cols_) + " columns");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(std::span<const FieldElement> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vector out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero()) continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const auto& e = (*this)(r, c);
            if (!e.is_zero()) out[r] += e * v[c];
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product size mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const auto& bkj = b(k, j);
                if (!bkj.is_zero()) out(i, j) += aik * bkj;
            }
        }
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) out << (c ? ", " : "") << (*this)(r, c).to_string();
        out << "]";
    }
    out << "]";
    return out.str();
}

RrefResult rref(Matrix m) {
    RrefResult res;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t lead = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t piv = lead;
        while (piv < rows && m(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != lead)
            for (std::size_t k = c; k < cols; ++k) std::swap(m(piv, k), m(lead, k));

        FieldElement inv = m(lead, c).inverse();
        support.clear();
        for (std::size_t k = c; k < cols; ++k) {
            if (m(lead, k).is_zero()) continue;
            m(lead, k) *= inv;
            support.push_back(k);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || m(r, c).is_zero()) continue;
            FieldElement f = m(r, c);
            for (std::size_t k : support) m(r, k) -= f * m(lead, k);
        }
        res.pivots.push_back(c);
        ++lead;
    }
    res.rank = lead;
    res.reduced = std::move(m);
    return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix row_basis(const Matrix& m) {
    auto r = rref(m);
    Matrix out(0, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i) out.append_row(r.reduced.row(i));
    return out;
}

Matrix nullspace(const Matrix& m) {
    auto r = rref(m);
    std::vector<int> pivot_row(m.cols(), -1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) pivot_row[r.pivots[i]] = static_cast<int>(i);
    Matrix out(0, m.cols());
    Vector v(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (pivot_row[free] >= 0) continue;
        std::fill(v.begin(), v.end(), FieldElement());
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
        out.append_row(v);
    }
    return out;
}

std::optional<Vector> solve_membership(const Matrix& span, std::span<const FieldElement> v) {
    if (span.cols() != v.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "vector of length " + std::to_string(v.size()) + " against span of width " +
                        std::to_string(span.cols()));
    const std::size_t k = span.rows();
    Matrix aug(v.size(), k + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) aug(j, i) = span(i, j);
    for (std::size_t j = 0; j < v.size(); ++j) aug(j, k) = v[j];
    auto r = rref(std::move(aug));
    if (!r.pivots.empty() && r.pivots.back() == k) return std::nullopt;
    Vector coeffs(k);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) coeffs[r.pivots[i]] = r.reduced(i, k);
    return coeffs;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::NotInvertible, "non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto r = rref(std::move(aug));
    if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1))
        throw Error(ErrorCode::NotInvertible, "singular matrix");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = r.reduced(i, n + j);
    return out;
}

bool same_row_space(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return false;
    return row_basis(a) == row_basis(b);
}

bool is_zero(std::span<const FieldElement> v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

}  // namespace kszl
