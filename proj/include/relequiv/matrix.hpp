#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "relequiv/cyclotomic.hpp"

namespace relequiv {

/// Dense matrix over Q(zeta_N), row-major.
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::vector<std::vector<Cyclotomic>> rows) {
        rows_ = rows.size();
        cols_ = rows.empty() ? 0 : rows.front().size();
        data_.reserve(rows_ * cols_);
        for (auto& r : rows) {
            if (r.size() != cols_) throw InvalidInput("ragged matrix rows");
            for (auto& x : r) data_.push_back(std::move(x));
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Cyclotomic& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Cyclotomic trace() const {
        Cyclotomic t;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Largest conductor lcm over all entries.
    int conductor() const {
        int n = 1;
        for (const auto& x : data_) n = std::lcm(n, x.conductor());
        return n;
    }

    Matrix embed(int n) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x.embed(n);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Cyclotomic& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Exact textual key; equal keys iff equal matrices once entries share a conductor.
    std::string key() const {
        std::string k;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (i) k += i % cols_ == 0 ? ';' : ',';
            k += data_[i].to_string();
        }
        return k;
    }

    std::string to_string() const { return "[" + key() + "]"; }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cyclotomic> data_;
};

}  // namespace relequiv
