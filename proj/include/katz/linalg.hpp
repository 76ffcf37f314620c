#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "katz/rational.hpp"

namespace katz {

/// Dense matrix over the rationals, row-major. Only what the frame
/// bookkeeping needs: products, rank and inversion by Gauss-Jordan.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rank() const;
    /// nullopt if singular or not square.
    std::optional<RationalMatrix> inverse() const;

    std::vector<Rational> operator*(const std::vector<Rational>& v) const;
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

} // namespace katz
