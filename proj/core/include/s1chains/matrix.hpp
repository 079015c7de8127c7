#pragma once

#include "s1chains/rings.hpp"

#include <cstddef>
#include <vector>

namespace s1chains {

/// Dense row-major matrix over an exact coefficient type. Differentials at
/// desk scale stay well under 100x100, so dense storage is the whole story.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n, T one = T(1)) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat&) const = default;

    Mat operator*(const Mat& o) const {
        Mat r(rows_, o.cols_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == zero_like()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }
    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }
    Mat scaled(const T& c) const {
        Mat r = *this;
        for (auto& x : r.data_) x = x * c;
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == zero_like())) return false;
        return true;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> r(rows_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(((*this)(i, j)) == zero_like())) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    /// Columns of `o` appended on the right.
    Mat hcat(const Mat& o) const {
        Mat r(rows_, cols_ + o.cols_, zero_like());
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    static Mat from_cols(std::size_t rows, const std::vector<std::vector<T>>& cols, T zero = T()) {
        Mat r(rows, cols.size(), zero);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) r(i, j) = cols[j][i];
        return r;
    }

private:
    static T zero_like() { return T(); }  // default-constructed T is 0 for Int, Rat, Fp
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;
using FpMat = Mat<Fp>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using FpVec = std::vector<Fp>;

RatMat to_rat(const IntMat& a);
IntMat to_int(const RatMat& a);  // throws ValidationError on non-integral entry
FpMat to_fp(const RatMat& a, std::int64_t p);

}  // namespace s1chains
