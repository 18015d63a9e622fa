#pragma once

#include "qub/scalar.hpp"

#include <map>
#include <vector>

namespace qub {

/// Square sparse matrix over Scalar. Absent entries are zero; stored
/// entries are never zero.
class SparseMatrix {
public:
    SparseMatrix() = default;
    explicit SparseMatrix(int dim) : rows_(static_cast<std::size_t>(dim)) {}
    static SparseMatrix identity(int dim);

    int dim() const { return static_cast<int>(rows_.size()); }
    Scalar get(int r, int c) const;
    void set(int r, int c, const Scalar& v);
    void add(int r, int c, const Scalar& v);
    const std::map<int, Scalar>& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& s) const;
    SparseMatrix transposed() const;
    Scalar trace() const;
    /// Gauss-Jordan inverse; throws DegenerateError when singular.
    SparseMatrix inverse() const;

    bool operator==(const SparseMatrix& o) const = default;

private:
    std::vector<std::map<int, Scalar>> rows_;
};

} // namespace qub
