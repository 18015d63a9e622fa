#include "qub/matrix.hpp"

#include "qub/error.hpp"

namespace qub {

SparseMatrix SparseMatrix::identity(int dim)
{
    SparseMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, Scalar(1L));
    return m;
}

Scalar SparseMatrix::get(int r, int c) const
{
    const auto& row = rows_[static_cast<std::size_t>(r)];
    auto it = row.find(c);
    return it == row.end() ? Scalar() : it->second;
}

void SparseMatrix::set(int r, int c, const Scalar& v)
{
    auto& row = rows_[static_cast<std::size_t>(r)];
    if (v.is_zero()) row.erase(c);
    else row[c] = v;
}

void SparseMatrix::add(int r, int c, const Scalar& v)
{
    if (v.is_zero()) return;
    auto& row = rows_[static_cast<std::size_t>(r)];
    auto [it, inserted] = row.try_emplace(c, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) row.erase(it);
    }
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const
{
    SparseMatrix out(dim());
    for (int r = 0; r < dim(); ++r) {
        std::map<int, Scalar> acc;
        for (const auto& [k, a] : row(r))
            for (const auto& [c, b] : o.row(k)) acc[c] += a * b;
        for (auto& [c, v] : acc)
            if (!v.is_zero()) out.rows_[static_cast<std::size_t>(r)].emplace(c, std::move(v));
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const
{
    SparseMatrix out = *this;
    for (int r = 0; r < dim(); ++r)
        for (const auto& [c, v] : o.row(r)) out.add(r, c, v);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const
{
    return *this + o.scaled(Scalar(-1L));
}

SparseMatrix SparseMatrix::scaled(const Scalar& s) const
{
    SparseMatrix out(dim());
    if (s.is_zero()) return out;
    for (int r = 0; r < dim(); ++r)
        for (const auto& [c, v] : row(r)) out.set(r, c, v * s);
    return out;
}

SparseMatrix SparseMatrix::transposed() const
{
    SparseMatrix out(dim());
    for (int r = 0; r < dim(); ++r)
        for (const auto& [c, v] : row(r)) out.set(c, r, v);
    return out;
}

Scalar SparseMatrix::trace() const
{
    Scalar t;
    for (int i = 0; i < dim(); ++i) t += get(i, i);
    return t;
}

SparseMatrix SparseMatrix::inverse() const
{
    int n = dim();
    std::vector<std::map<int, Scalar>> a = rows_;
    SparseMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (a[static_cast<std::size_t>(r)].count(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw DegenerateError("singular matrix");
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
        std::swap(inv.rows_[static_cast<std::size_t>(col)], inv.rows_[static_cast<std::size_t>(pivot)]);
        Scalar pinv = a[static_cast<std::size_t>(col)].at(col).inverse();
        for (auto& [c, v] : a[static_cast<std::size_t>(col)]) v *= pinv;
        for (auto& [c, v] : inv.rows_[static_cast<std::size_t>(col)]) v *= pinv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            auto it = a[static_cast<std::size_t>(r)].find(col);
            if (it == a[static_cast<std::size_t>(r)].end()) continue;
            Scalar f = it->second;
            for (const auto& [c, v] : a[static_cast<std::size_t>(col)]) {
                auto& row = a[static_cast<std::size_t>(r)];
                row[c] -= f * v;
                if (row[c].is_zero()) row.erase(c);
            }
            for (const auto& [c, v] : inv.rows_[static_cast<std::size_t>(col)]) inv.add(r, c, -(f * v));
        }
    }
    return inv;
}

} // namespace qub
