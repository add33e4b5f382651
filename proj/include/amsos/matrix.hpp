#ifndef AMSOS_MATRIX_HPP
#define AMSOS_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "amsos/error.hpp"

namespace amsos {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles. Rows are points, columns are features.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Builds from a row-per-list initializer; all rows must share one arity.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix out;
        for (const auto& r : rows) out.append_row(Vec(r));
        return out;
    }

    static Matrix from_rows(const std::vector<Vec>& rows) {
        Matrix out;
        for (const auto& r : rows) out.append_row(r);
        return out;
    }

    void append_row(const Vec& row) {
        if (rows_ == 0) {
            cols_ = row.size();
        } else if (row.size() != cols_) {
            throw DimensionError("appended row has arity " + std::to_string(row.size()) +
                                 ", expected " + std::to_string(cols_));
        }
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Vec row_copy(std::size_t r) const {
        auto s = row(r);
        return Vec(s.begin(), s.end());
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace amsos

#endif  // AMSOS_MATRIX_HPP
