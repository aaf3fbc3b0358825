#include "pwv/matrix.hpp"

#include "pwv/errors.hpp"

namespace pwv {

void add_scaled(Vec& target, const Scalar& c, const Vec& source) {
    if (c.is_zero()) return;
    if (target.size() != source.size()) throw DimensionError("add_scaled: length mismatch");
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (source[k].is_zero()) continue;
        target[k] += c * source[k];
    }
}

Scalar dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    Scalar acc;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero() || b[k].is_zero()) continue;
        acc += a[k] * b[k];
    }
    return acc;
}

Vec scaled(const Vec& v, const Scalar& c) {
    Vec out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) out[k] = c * v[k];
    return out;
}

bool is_zero(const Vec& v) {
    for (const Scalar& s : v)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::diagonal(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Matrix(0, 0);
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DimensionError("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    return Vec(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionError("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_)
        throw DimensionError("submatrix: block out of range");
    Matrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw DimensionError("apply: length mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& a = (*this)(i, j);
            if (a.is_zero() || x[j].is_zero()) continue;
            acc += a * x[j];
        }
        out[i] = std::move(acc);
    }
    return out;
}

Matrix Matrix::pow(unsigned k) const {
    if (rows_ != cols_) throw DimensionError("pow: matrix not square");
    Matrix acc = Matrix::identity(rows_);
    for (unsigned s = 0; s < k; ++s) acc = acc * *this;
    return acc;
}

bool Matrix::is_zero() const {
    for (const Scalar& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

bool Matrix::is_rational() const {
    for (const Scalar& s : e_)
        if (!s.is_rational()) return false;
    return true;
}

Vec Matrix::flatten() const {
    return e_;
}

Matrix Matrix::unflatten(const Vec& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) throw DimensionError("unflatten: length mismatch");
    Matrix m(rows, cols);
    m.e_ = v;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix add: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sub: shape mismatch");
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    c += b;
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    c -= b;
    return c;
}

Matrix operator-(const Matrix& a) {
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix mul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Scalar& bkj = b(k, j);
                if (bkj.is_zero()) continue;
                c(i, j) += aik * bkj;
            }
        }
    }
    return c;
}

Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    if (c.is_zero()) return out;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) out(i, j) = c * a(i, j);
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

bool operator!=(const Matrix& a, const Matrix& b) {
    return !(a == b);
}

Matrix bracket(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

} // namespace pwv
