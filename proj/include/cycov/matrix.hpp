#ifndef CYCOV_MATRIX_HPP
#define CYCOV_MATRIX_HPP

#include <optional>
#include <span>
#include <vector>

#include "cycov/field.hpp"

namespace cycov {

/// Dense square matrix over an exact field.  Row-major storage.
class Matrix {
public:
    Matrix(FieldRef field, int n);  // zero matrix
    static Matrix identity(FieldRef field, int n);

    int size() const { return n_; }
    FieldRef field() const { return field_; }

    FieldElement& at(int i, int j) { return a_[(std::size_t)i * n_ + j]; }
    const FieldElement& at(int i, int j) const { return a_[(std::size_t)i * n_ + j]; }

    Matrix operator*(const Matrix& o) const;
    std::vector<FieldElement> apply(std::span<const FieldElement> v) const;  // M*v

    /// Exact determinant by fraction-free style Gaussian elimination with
    /// first-nonzero pivoting.
    FieldElement det() const;
    std::optional<Matrix> inverse() const;  // nullopt when singular

    bool operator==(const Matrix& o) const;
    Matrix scaled(const FieldElement& c) const;

private:
    FieldRef field_;
    int n_;
    std::vector<FieldElement> a_;
};

}  // namespace cycov

#endif
