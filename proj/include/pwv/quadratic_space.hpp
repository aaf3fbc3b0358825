#pragma once

#include "pwv/linalg.hpp"
#include "pwv/matrix.hpp"

#include <tuple>
#include <vector>

namespace pwv {

/// Quadratic space over Q with symmetric Gram matrix: q(u, v) = u^T G v
/// and q(v) = q(v, v).
class QuadraticSpace {
public:
    QuadraticSpace() = default;
    explicit QuadraticSpace(Matrix gram);

    std::size_t dim() const { return gram_.rows(); }
    const Matrix& gram() const { return gram_; }

    Scalar form(const Vec& u, const Vec& v) const;
    Scalar form(const Vec& v) const { return form(v, v); }

    /// (positive, negative, zero) inertia counts, exact over Q.
    std::tuple<long, long, long> signature() const;

    /// Gram matrix restricted to the span of the given vectors
    /// (in the coordinates of the vectors as given).
    QuadraticSpace restrict_to(const std::vector<Vec>& vectors) const;

private:
    Matrix gram_;
};

/// V + Q^2 with the extra hyperbolic-type block (0 -1; -1 0);
/// shifts the signature by (+1, +1).
QuadraticSpace mukai_extend(const QuadraticSpace& q);

/// The skew-adjoint endomorphism v -> q(a,v)/2 * b - q(b,v)/2 * a.
Matrix wedge_operator(const QuadraticSpace& q, const Vec& a, const Vec& b);

/// Replaces eta0 by eta0 + t*beta with t = -q(eta0) / (2 q(eta0, beta)),
/// so that q(eta) = 0 while q(eta, beta) is preserved.
/// Requires q(beta) = 0 and q(eta0, beta) != 0.
Vec normalize_eta(const QuadraticSpace& q, const Vec& eta0, const Vec& beta);

/// Deterministic rational vector v with q(v) > 0 and q(v, c) = 0 for every
/// constraint c: the first positive-square diagonal basis vector of the
/// congruence-diagonalized orthogonal complement, scaled to a primitive
/// integer vector. Throws PreconditionError("no positive vector") when the
/// complement has no positive part.
Vec find_positive_orthogonal(const QuadraticSpace& q, const std::vector<Vec>& constraints);

/// Clears denominators and common factors; first nonzero entry positive.
Vec primitive_integer_vector(const Vec& v);

} // namespace pwv
