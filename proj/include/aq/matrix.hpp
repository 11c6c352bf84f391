#ifndef AQ_MATRIX_HPP
#define AQ_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace aq {

/// Dense matrix over an exact field (Rational or a quadratic-field element).
template <class K>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<K> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, K(0)) {}

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    K& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Mat transposed() const
    {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const
    {
        if (cols != o.rows) throw std::invalid_argument("Mat: dimension mismatch");
        Mat r(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const K& x = (*this)(i, k);
                if (x == K(0)) continue;
                for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    std::vector<K> operator*(const std::vector<K>& v) const
    {
        if (cols != v.size()) throw std::invalid_argument("Mat: vector dimension mismatch");
        std::vector<K> r(rows, K(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    /// Exact inverse by Gauss-Jordan; throws on singular input.
    Mat inverse() const
    {
        if (rows != cols) throw std::invalid_argument("Mat::inverse: not square");
        std::size_t n = rows;
        Mat m = *this;
        Mat inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m(piv, col) == K(0)) ++piv;
            if (piv == n) throw std::domain_error("Mat::inverse: singular matrix");
            if (piv != col)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(m(piv, j), m(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            K d = m(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(col, j) = m(col, j) / d;
                inv(col, j) = inv(col, j) / d;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || m(i, col) == K(0)) continue;
                K f = m(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    m(i, j) -= f * m(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }
};

}  // namespace aq

#endif
