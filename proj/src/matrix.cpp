#include "cycov/matrix.hpp"

#include "cycov/errors.hpp"

namespace cycov {

Matrix::Matrix(FieldRef field, int n)
    : field_(field), n_(n), a_((std::size_t)n * n, field->zero()) {
    if (n < 1) throw DimensionMismatch("matrix size must be positive");
}

Matrix Matrix::identity(FieldRef field, int n) {
    Matrix m(field, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field->one();
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (n_ != o.n_ || field_ != o.field_) throw DimensionMismatch("matrix size mismatch");
    Matrix r(field_, n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const FieldElement& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < n_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        }
    }
    return r;
}

std::vector<FieldElement> Matrix::apply(std::span<const FieldElement> v) const {
    if ((int)v.size() != n_) throw DimensionMismatch("vector length mismatch");
    std::vector<FieldElement> r(n_, field_->zero());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
    return r;
}

FieldElement Matrix::det() const {
    // Gaussian elimination with exact division, first-nonzero pivoting.
    Matrix w = *this;
    FieldElement d = field_->one();
    for (int col = 0; col < n_; ++col) {
        int pivot = -1;
        for (int row = col; row < n_; ++row) {
            if (!w.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return field_->zero();
        if (pivot != col) {
            for (int j = 0; j < n_; ++j) std::swap(w.at(pivot, j), w.at(col, j));
            d = -d;
        }
        d = d * w.at(col, col);
        FieldElement inv = w.at(col, col).inverse();
        for (int row = col + 1; row < n_; ++row) {
            if (w.at(row, col).is_zero()) continue;
            FieldElement f = w.at(row, col) * inv;
            for (int j = col; j < n_; ++j) w.at(row, j) = w.at(row, j) - f * w.at(col, j);
        }
    }
    return d;
}

std::optional<Matrix> Matrix::inverse() const {
    Matrix w = *this;
    Matrix inv = Matrix::identity(field_, n_);
    for (int col = 0; col < n_; ++col) {
        int pivot = -1;
        for (int row = col; row < n_; ++row) {
            if (!w.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int j = 0; j < n_; ++j) {
                std::swap(w.at(pivot, j), w.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        FieldElement pi = w.at(col, col).inverse();
        for (int j = 0; j < n_; ++j) {
            w.at(col, j) = w.at(col, j) * pi;
            inv.at(col, j) = inv.at(col, j) * pi;
        }
        for (int row = 0; row < n_; ++row) {
            if (row == col || w.at(row, col).is_zero()) continue;
            FieldElement f = w.at(row, col);
            for (int j = 0; j < n_; ++j) {
                w.at(row, j) = w.at(row, j) - f * w.at(col, j);
                inv.at(row, j) = inv.at(row, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool Matrix::operator==(const Matrix& o) const {
    if (n_ != o.n_ || field_ != o.field_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

Matrix Matrix::scaled(const FieldElement& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * c;
    return r;
}

}  // namespace cycov
