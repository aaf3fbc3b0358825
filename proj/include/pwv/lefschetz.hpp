#pragma once

#include "pwv/graded_algebra.hpp"
#include "pwv/linalg.hpp"
#include "pwv/matrix.hpp"

#include <array>
#include <vector>

namespace pwv {

/// (raising, semisimple, lowering) with [S,L] = 2L, [S,Lambda] = -2Lambda,
/// [L,Lambda] = S, all exact.
struct Sl2Triple {
    Matrix l;
    Matrix s;
    Matrix lambda;

    bool brackets_hold() const;
};

/// Bracket-closed span of endomorphisms. The basis is canonical: the RREF
/// basis of the span inside the flattened endomorphism space.
struct LieSubalgebra {
    std::size_t matrix_dim = 0;      // endomorphisms of Q(i)^matrix_dim
    std::vector<Matrix> basis;       // unflattened canonical RREF rows
    Subspace flat;                   // the same span, flattened

    std::size_t dim() const { return basis.size(); }
    bool contains(const Matrix& m) const { return flat.contains(m.flatten()); }

    /// Exhaustive pairwise bracket-closure check.
    bool is_closed() const;
};

/// The operator acting on H^d as (d - 2n) * id.
Matrix grading_operator(const GradedAlgebra& a);

/// True iff cup with omega satisfies hard Lefschetz:
/// L^k : H^{2n-k} -> H^{2n+k} is an isomorphism for all 1 <= k <= 2n.
bool hard_lefschetz_test(const GradedAlgebra& a, const CohomologyClass& omega);

/// Completes (L, S) to an sl2-triple by solving the combined linear system
/// {[L,X] = S, [S,X] = -2X}. Throws PreconditionError when [S,L] != 2L,
/// InvariantError("no sl2 completion") when the system is inconsistent and
/// InvariantError("non-unique completion") when its kernel is nonzero.
Matrix complete_sl2(const Matrix& l, const Matrix& s);

/// Smallest bracket-closed span containing the generators, computed by
/// iterated bracketing against the generator span until the dimension
/// stabilizes.
LieSubalgebra lie_closure(const std::vector<Matrix>& generators);

/// Dimensions of the ad(H)-eigenspaces of g at eigenvalues -2, 0, 2.
/// Requires H in g; throws InvariantError("unexpected ad-eigenvalue") if
/// ad(H) has spectrum outside {-2, 0, 2} on g.
std::array<long, 3> ad_grading(const LieSubalgebra& g, const Matrix& h);

/// Spanning family of hard-Lefschetz degree-2 classes: basis vector e_i when
/// q(e_i) != 0, otherwise e_i perturbed by the first e_j with q(e_i + e_j) != 0.
std::vector<CohomologyClass> hard_lefschetz_spanning_family(const GradedAlgebra& a,
                                                            const class QuadraticSpace& q);

/// The full Looijenga-Lunts-Verbitsky algebra: closure of the sl2-triples
/// of a spanning family of hard-Lefschetz classes.
LieSubalgebra llv_algebra(const GradedAlgebra& a, const class QuadraticSpace& q);

} // namespace pwv
