#include "katz/linalg.hpp"

#include <cassert>
#include <utility>

namespace katz {

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

namespace {

// Reduced row echelon form in place; returns the pivot count.
std::size_t row_reduce(RationalMatrix& m, std::size_t pivot_cols)
{
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < pivot_cols && pivot_row < m.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && m(sel, c) == 0) {
            ++sel;
        }
        if (sel == m.rows()) {
            continue;
        }
        if (sel != pivot_row) {
            for (std::size_t k = 0; k < m.cols(); ++k) {
                std::swap(m(sel, k), m(pivot_row, k));
            }
        }
        const Rational inv = 1 / m(pivot_row, c);
        for (std::size_t k = 0; k < m.cols(); ++k) {
            m(pivot_row, k) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row || m(r, c) == 0) {
                continue;
            }
            const Rational factor = m(r, c);
            for (std::size_t k = 0; k < m.cols(); ++k) {
                m(r, k) -= factor * m(pivot_row, k);
            }
        }
        ++pivot_row;
    }
    return pivot_row;
}

} // namespace

std::size_t RationalMatrix::rank() const
{
    RationalMatrix copy = *this;
    return row_reduce(copy, cols_);
}

std::optional<RationalMatrix> RationalMatrix::inverse() const
{
    if (rows_ != cols_) {
        return std::nullopt;
    }
    const std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = (*this)(r, c);
        }
        aug(r, n + r) = 1;
    }
    if (row_reduce(aug, n) != n) {
        return std::nullopt;
    }
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv(r, c) = aug(r, n + c);
        }
    }
    return inv;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const
{
    assert(v.size() == cols_);
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out[r] += (*this)(r, c) * v[c];
        }
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    assert(a.cols() == b.rows());
    RationalMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(r, k) == 0) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += a(r, k) * b(k, c);
            }
        }
    }
    return out;
}

} // namespace katz
