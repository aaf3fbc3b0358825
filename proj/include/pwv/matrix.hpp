#pragma once

#include "pwv/scalar.hpp"

#include <cstddef>
#include <vector>

namespace pwv {

using Vec = std::vector<Scalar>;

/// target += c * source (no-op when c == 0)
void add_scaled(Vec& target, const Scalar& c, const Vec& source);
Scalar dot(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, const Scalar& c);
bool is_zero(const Vec& v);

/// Dense matrix over Q(i), row-major. Entry count is rows*cols by construction.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vec& d);
    static Matrix from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    Matrix transpose() const;
    Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;

    /// Matrix-vector product A*x.
    Vec apply(const Vec& x) const;

    Matrix pow(unsigned k) const;

    bool is_zero() const;
    bool is_rational() const;

    /// Row-major flattening, used to treat endomorphisms as vectors.
    Vec flatten() const;
    static Matrix unflatten(const Vec& v, std::size_t rows, std::size_t cols);

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);

private:
    std::size_t rows_, cols_;
    Vec e_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& c, const Matrix& a);
bool operator==(const Matrix& a, const Matrix& b);
bool operator!=(const Matrix& a, const Matrix& b);

/// Lie bracket [a, b] = ab - ba.
Matrix bracket(const Matrix& a, const Matrix& b);

} // namespace pwv
