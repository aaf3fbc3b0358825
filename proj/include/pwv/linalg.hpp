#pragma once

#include "pwv/matrix.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pwv {

/// Reduced row echelon form (pivots 1, zeros above and below, pivot
/// columns strictly increasing) together with the pivot columns.
/// The reduction is deterministic: the first nonzero row wins a pivot.
struct Rref {
    Matrix mat;
    std::vector<std::size_t> pivots;
};

Rref rref(Matrix a);

/// Incrementally maintained row span in reduced row echelon form.
/// The basis it exposes is canonical: two equal spans have bit-identical
/// basis matrices, so span equality is plain matrix equality.
class RowSpan {
public:
    explicit RowSpan(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    /// Reduces v against the current basis in place; returns false iff the
    /// residual is zero (v was in the span).
    bool reduce(Vec& v) const;

    bool contains(const Vec& v) const;

    /// Inserts v if independent, keeping full RREF; returns true if dim grew.
    bool insert(Vec v);

    /// Coordinates of v in the current basis, or nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    /// Rows sorted by pivot column (the canonical basis).
    Matrix basis_matrix() const;

private:
    std::size_t ambient_;
    std::vector<Vec> rows_;          // kept in increasing pivot order
    std::vector<std::size_t> pivots_;
};

/// Linear subspace of Q(i)^ambient in canonical reduced form: the basis
/// rows are an RREF basis, so two equal subspaces compare bit-identically.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    /// Row span of an arbitrary generating matrix, canonicalized.
    static Subspace span(const Matrix& generators);
    static Subspace span_rows(const std::vector<Vec>& generators, std::size_t ambient);
    /// Trusted constructor: rows must already be canonical RREF.
    static Subspace from_rref(Matrix rref_basis, std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    /// Rows e with: v in this subspace  <=>  e . v = 0 for all rows e.
    Matrix equations() const;

private:
    std::size_t ambient_;
    Matrix basis_;
};

bool operator==(const Subspace& a, const Subspace& b);
bool operator!=(const Subspace& a, const Subspace& b);
bool operator<(const Subspace& a, const Subspace& b); // arbitrary strict order, for map keys

/// {x : Ax = 0}
Subspace kernel(const Matrix& a);

/// Column span of A.
Subspace image(const Matrix& a);

/// Image of a subspace under an operator: span of A*v over basis vectors v.
Subspace apply(const Matrix& a, const Subspace& v);

/// {x : Ax in u}
Subspace preimage(const Matrix& a, const Subspace& u);

struct LinearSolution {
    std::optional<Vec> particular; // nullopt <=> inconsistent
    Subspace kernel;
};

/// Solves Ax = b for a single right-hand column. The particular solution is
/// deterministic: free variables are 0 under the canonical pivot order.
LinearSolution solve_linear(const Matrix& a, const Vec& b);

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
bool subspace_contains(const Subspace& u, const Subspace& v);
bool subspace_equal(const Subspace& u, const Subspace& v);

/// Joint eigenspace decomposition of pairwise-commuting semisimple
/// operators with integer spectra contained in the given hints.
/// Verifies commutativity, semisimplicity, and spectrum membership;
/// throws InvariantError("not commuting" | "non-semisimple" |
/// "unexpected eigenvalue") when the verification fails.
/// Only nonzero blocks are returned; their dims sum to the ambient dim.
std::map<std::vector<long>, Subspace>
simultaneous_eigenspaces(const std::vector<Matrix>& ops,
                         const std::vector<std::vector<long>>& expected_spectra);

struct Congruence {
    Matrix d; // diagonal
    Matrix p; // p^T g p = d
    long pos = 0, neg = 0, zero = 0;
};

/// Exact congruence diagonalization of a symmetric rational Gram matrix.
/// Throws PreconditionError on non-symmetric or non-rational input.
Congruence congruence_diagonalize(const Matrix& g);

} // namespace pwv
