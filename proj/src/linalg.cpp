#include "pwv/linalg.hpp"

#include "pwv/errors.hpp"

#include <algorithm>

namespace pwv {

Rref rref(Matrix a) {
    const std::size_t nrows = a.rows(), ncols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t pivot_row = nrows;
        for (std::size_t i = r; i < nrows; ++i) {
            if (!a(i, c).is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == nrows) continue;
        if (pivot_row != r)
            for (std::size_t j = 0; j < ncols; ++j) std::swap(a(r, j), a(pivot_row, j));
        const Scalar inv = a(r, c).inverse();
        a(r, c) = Scalar(1);
        for (std::size_t j = c + 1; j < ncols; ++j)
            if (!a(r, j).is_zero()) a(r, j) = inv * a(r, j);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r) continue;
            const Scalar f = a(i, c);
            if (f.is_zero()) continue;
            a(i, c) = Scalar(0);
            for (std::size_t j = c + 1; j < ncols; ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Rref{std::move(a), std::move(pivots)};
}

bool RowSpan::reduce(Vec& v) const {
    if (v.size() != ambient_) throw DimensionError("RowSpan::reduce: length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Scalar c = v[pivots_[k]];
        if (c.is_zero()) continue;
        v[pivots_[k]] = Scalar(0);
        const Vec& row = rows_[k];
        for (std::size_t j = pivots_[k] + 1; j < ambient_; ++j)
            if (!row[j].is_zero()) v[j] -= c * row[j];
    }
    return !is_zero(v);
}

bool RowSpan::contains(const Vec& v) const {
    Vec copy = v;
    return !reduce(copy);
}

bool RowSpan::insert(Vec v) {
    if (!reduce(v)) return false;
    std::size_t pivot = 0;
    while (v[pivot].is_zero()) ++pivot;
    const Scalar inv = v[pivot].inverse();
    v[pivot] = Scalar(1);
    for (std::size_t j = pivot + 1; j < ambient_; ++j)
        if (!v[j].is_zero()) v[j] = inv * v[j];
    // Back-substitute into existing rows so the basis stays fully reduced.
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        Scalar c = rows_[k][pivot];
        if (c.is_zero()) continue;
        rows_[k][pivot] = Scalar(0);
        for (std::size_t j = pivot + 1; j < ambient_; ++j)
            if (!v[j].is_zero()) rows_[k][j] -= c * v[j];
    }
    const auto where = std::upper_bound(pivots_.begin(), pivots_.end(), pivot);
    const std::size_t pos = static_cast<std::size_t>(where - pivots_.begin());
    pivots_.insert(where, pivot);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
}

std::optional<Vec> RowSpan::coordinates(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionError("RowSpan::coordinates: length mismatch");
    Vec residual = v;
    Vec coords(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Scalar c = residual[pivots_[k]];
        if (c.is_zero()) continue;
        coords[k] = c;
        residual[pivots_[k]] = Scalar(0);
        const Vec& row = rows_[k];
        for (std::size_t j = pivots_[k] + 1; j < ambient_; ++j)
            if (!row[j].is_zero()) residual[j] -= c * row[j];
    }
    if (!is_zero(residual)) return std::nullopt;
    return coords;
}

Matrix RowSpan::basis_matrix() const {
    Matrix m(rows_.size(), ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
    return m;
}

Subspace Subspace::zero(std::size_t ambient) {
    return from_rref(Matrix(0, ambient), ambient);
}

Subspace Subspace::full(std::size_t ambient) {
    return from_rref(Matrix::identity(ambient), ambient);
}

Subspace Subspace::span(const Matrix& generators) {
    RowSpan s(generators.cols());
    for (std::size_t i = 0; i < generators.rows(); ++i) s.insert(generators.row(i));
    return from_rref(s.basis_matrix(), generators.cols());
}

Subspace Subspace::span_rows(const std::vector<Vec>& generators, std::size_t ambient) {
    RowSpan s(ambient);
    for (const Vec& g : generators) {
        if (g.size() != ambient) throw DimensionError("span_rows: length mismatch");
        s.insert(g);
    }
    return from_rref(s.basis_matrix(), ambient);
}

Subspace Subspace::from_rref(Matrix rref_basis, std::size_t ambient) {
    Subspace u;
    u.ambient_ = ambient;
    u.basis_ = std::move(rref_basis);
    return u;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionError("Subspace::contains: length mismatch");
    Vec residual = v;
    for (std::size_t k = 0; k < basis_.rows(); ++k) {
        std::size_t p = 0;
        while (p < ambient_ && basis_(k, p).is_zero()) ++p;
        const Scalar f = residual[p];
        if (f.is_zero()) continue;
        residual[p] = Scalar(0);
        for (std::size_t j = p + 1; j < ambient_; ++j)
            if (!basis_(k, j).is_zero()) residual[j] -= f * basis_(k, j);
    }
    return is_zero(residual);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("contains: ambient dimension mismatch");
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Matrix Subspace::equations() const {
    return kernel(basis_).basis();
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim() == b.ambient_dim() && a.basis() == b.basis();
}

bool operator!=(const Subspace& a, const Subspace& b) {
    return !(a == b);
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
            const Scalar &x = a.basis()(i, j), &y = b.basis()(i, j);
            if (x.re != y.re) return x.re < y.re;
            if (x.im != y.im) return x.im < y.im;
        }
    return false;
}

Subspace kernel(const Matrix& a) {
    const std::size_t n = a.cols();
    Rref r = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;

    std::vector<Vec> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec v(n);
        v[c] = Scalar(1);
        for (std::size_t k = 0; k < r.pivots.size(); ++k)
            v[r.pivots[k]] = -r.mat(k, c);
        basis.push_back(std::move(v));
    }
    return Subspace::span_rows(basis, n);
}

Subspace image(const Matrix& a) {
    return Subspace::span(a.transpose());
}

Subspace apply(const Matrix& a, const Subspace& v) {
    if (a.cols() != v.ambient_dim()) throw DimensionError("apply: shape mismatch");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < v.dim(); ++i) rows.push_back(a.apply(v.basis().row(i)));
    return Subspace::span_rows(rows, a.rows());
}

Subspace preimage(const Matrix& a, const Subspace& u) {
    if (a.rows() != u.ambient_dim()) throw DimensionError("preimage: shape mismatch");
    return kernel(u.equations() * a);
}

LinearSolution solve_linear(const Matrix& a, const Vec& b) {
    if (a.rows() != b.size()) throw DimensionError("solve_linear: rhs length mismatch");
    const std::size_t n = a.cols();
    // Augmented elimination [A | b].
    Matrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    Rref r = rref(std::move(aug));

    LinearSolution out;
    out.kernel = kernel(a);
    // Inconsistent iff some pivot lands in the rhs column.
    if (!r.pivots.empty() && r.pivots.back() == n) return out;
    Vec x(n);
    for (std::size_t k = 0; k < r.pivots.size(); ++k) x[r.pivots[k]] = r.mat(k, n);
    out.particular = std::move(x);
    return out;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw DimensionError("subspace_sum: ambient dimension mismatch");
    RowSpan s(u.ambient_dim());
    for (std::size_t i = 0; i < u.dim(); ++i) s.insert(u.basis().row(i));
    for (std::size_t i = 0; i < v.dim(); ++i) s.insert(v.basis().row(i));
    return Subspace::from_rref(s.basis_matrix(), u.ambient_dim());
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw DimensionError("subspace_intersect: ambient dimension mismatch");
    const std::size_t n = u.ambient_dim(), p = u.dim(), q = v.dim();
    if (p == 0 || q == 0) return Subspace::zero(n);
    // x in U cap V  <=>  x = B_U^T s = B_V^T t: stack [B_U^T | -B_V^T].
    Matrix m(n, p + q);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) m(i, j) = u.basis()(j, i);
        for (std::size_t j = 0; j < q; ++j) m(i, p + j) = -v.basis()(j, i);
    }
    Subspace pairs = kernel(m);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < pairs.dim(); ++i) {
        Vec x(n);
        for (std::size_t j = 0; j < p; ++j)
            add_scaled(x, pairs.basis()(i, j), u.basis().row(j));
        rows.push_back(std::move(x));
    }
    return Subspace::span_rows(rows, n);
}

bool subspace_contains(const Subspace& u, const Subspace& v) {
    return u.contains(v);
}

bool subspace_equal(const Subspace& u, const Subspace& v) {
    return u == v;
}

namespace {

// A is semisimple with spectrum inside `hints` iff prod (A - h) = 0.
// When that product is nonzero, prod (A - h)^n distinguishes a genuinely
// foreign eigenvalue from a nilpotent defect at a hinted one.
void check_semisimple_with_spectrum(const Matrix& a, const std::vector<long>& hints) {
    const std::size_t n = a.rows();
    Matrix prod = Matrix::identity(n);
    for (long h : hints) {
        Matrix shifted = a;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= Scalar(h);
        prod = prod * shifted;
    }
    if (prod.is_zero()) return;
    Matrix high = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) high = high * prod;
    if (high.is_zero()) throw InvariantError("non-semisimple");
    throw InvariantError("unexpected eigenvalue");
}

} // namespace

std::map<std::vector<long>, Subspace>
simultaneous_eigenspaces(const std::vector<Matrix>& ops,
                         const std::vector<std::vector<long>>& expected_spectra) {
    if (ops.empty()) throw PreconditionError("simultaneous_eigenspaces: no operators");
    if (ops.size() != expected_spectra.size())
        throw PreconditionError("simultaneous_eigenspaces: spectra hint count mismatch");
    const std::size_t n = ops[0].rows();
    for (const Matrix& a : ops)
        if (a.rows() != n || a.cols() != n)
            throw DimensionError("simultaneous_eigenspaces: operators must be square of equal size");
    for (std::size_t s = 0; s < ops.size(); ++s)
        for (std::size_t t = s + 1; t < ops.size(); ++t)
            if (!bracket(ops[s], ops[t]).is_zero()) throw InvariantError("not commuting");
    for (std::size_t s = 0; s < ops.size(); ++s)
        check_semisimple_with_spectrum(ops[s], expected_spectra[s]);

    // Refine blocks one operator at a time.
    std::map<std::vector<long>, Subspace> blocks;
    blocks[{}] = Subspace::full(n);
    for (std::size_t s = 0; s < ops.size(); ++s) {
        std::map<std::vector<long>, Subspace> next;
        std::map<long, Subspace> eigen;
        for (long h : expected_spectra[s]) {
            Matrix shifted = ops[s];
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= Scalar(h);
            Subspace e = kernel(shifted);
            if (e.dim() > 0) eigen.emplace(h, std::move(e));
        }
        for (const auto& [key, block] : blocks) {
            for (const auto& [h, e] : eigen) {
                Subspace piece = subspace_intersect(block, e);
                if (piece.dim() == 0) continue;
                std::vector<long> next_key = key;
                next_key.push_back(h);
                next.emplace(std::move(next_key), std::move(piece));
            }
        }
        blocks = std::move(next);
    }
    std::size_t total = 0;
    for (const auto& [key, block] : blocks) total += block.dim();
    if (total != n) throw InvariantError("non-semisimple");
    return blocks;
}

Congruence congruence_diagonalize(const Matrix& g) {
    const std::size_t n = g.rows();
    if (g.cols() != n) throw PreconditionError("congruence_diagonalize: matrix not square");
    if (!g.is_rational()) throw PreconditionError("congruence_diagonalize: non-rational entries");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(i, j) != g(j, i)) throw PreconditionError("congruence_diagonalize: matrix not symmetric");

    Matrix d = g;
    Matrix p = Matrix::identity(n);

    // Symmetric elimination: the column operation is mirrored on rows,
    // and P accumulates the column operations.
    auto add_col = [&](std::size_t dst, std::size_t src, const Scalar& c) {
        for (std::size_t i = 0; i < n; ++i) d(i, dst) += c * d(i, src);
        for (std::size_t i = 0; i < n; ++i) d(dst, i) += c * d(src, i);
        for (std::size_t i = 0; i < n; ++i) p(i, dst) += c * p(i, src);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) std::swap(d(i, a), d(i, b));
        for (std::size_t i = 0; i < n; ++i) std::swap(d(a, i), d(b, i));
        for (std::size_t i = 0; i < n; ++i) std::swap(p(i, a), p(i, b));
    };

    for (std::size_t k = 0; k < n; ++k) {
        if (d(k, k).is_zero()) {
            std::size_t swap_with = n;
            for (std::size_t j = k + 1; j < n; ++j)
                if (!d(j, j).is_zero()) {
                    swap_with = j;
                    break;
                }
            if (swap_with != n) {
                swap_cols(k, swap_with);
            } else {
                std::size_t off = n;
                for (std::size_t j = k + 1; j < n; ++j)
                    if (!d(k, j).is_zero()) {
                        off = j;
                        break;
                    }
                if (off == n) continue; // row and column k already zero
                add_col(k, off, Scalar(1));
            }
        }
        const Scalar pivot = d(k, k);
        for (std::size_t j = k + 1; j < n; ++j) {
            if (d(k, j).is_zero()) continue;
            add_col(j, k, -(d(k, j) / pivot));
        }
    }

    Congruence out;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = sign(d(i, i).re);
        if (s > 0)
            ++out.pos;
        else if (s < 0)
            ++out.neg;
        else
            ++out.zero;
    }
    out.d = std::move(d);
    out.p = std::move(p);
    return out;
}

} // namespace pwv
