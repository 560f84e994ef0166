#pragma once

// Small dense matrices over exact scalars.  Cohomology blocks are tiny
// (a handful of rows), so a plain row-major container is all we need.

#include <cstddef>
#include <utility>
#include <vector>

#include "dynmix/exact.hpp"

namespace dynmix {

template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat conjugate() const {
        Mat c(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) c(i, j) = conj((*this)(i, j));
        return c;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }

    Mat scaled(const T& s) const {
        Mat c(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] * s;
        return c;
    }

    template <typename U, typename F>
    Mat<U> map(F f) const {
        Mat<U> c(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) c(i, j) = f((*this)(i, j));
        return c;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!(x == T(0))) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;
using GaussMat = Mat<GaussInt>;
using CRatMat = Mat<CRat>;

template <typename T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
    Mat<T> c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return c;
}

inline CRatMat to_crat(const GaussMat& g) {
    return g.template map<CRat>([](const GaussInt& x) { return CRat(x); });
}
inline CRatMat to_crat(const IntMat& m) {
    return m.template map<CRat>([](const Int& x) { return CRat(Rat(x)); });
}
inline CRatMat to_crat(const RatMat& m) {
    return m.template map<CRat>([](const Rat& x) { return CRat(x); });
}

inline bool is_real(const CRatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_real()) return false;
    return true;
}

// Gauss-Jordan inverse over the field Q(i); throws hypothesis_error when singular.
CRatMat invert(const CRatMat& m);

// Exact determinant over Q(i) by fraction-free elimination on the cleared
// Gaussian-integer matrix.
CRat det(const CRatMat& m);

// Fraction-free (Bareiss) determinant over Z[i]; all divisions exact.
GaussInt bareiss_det(GaussMat w);

}  // namespace dynmix
