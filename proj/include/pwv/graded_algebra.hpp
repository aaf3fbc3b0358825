#pragma once

#include "pwv/linalg.hpp"
#include "pwv/matrix.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pwv {

/// Homogeneous cohomology class: coordinates in the chosen basis of H^degree.
struct CohomologyClass {
    long degree = 0;
    Vec coords;
};

/// Graded vector space H^0..H^{4n} with cup-product structure constants.
///
/// Structure constants are ingested sparsely (nonzero triples only) and
/// stored densely per degree pair. validate() checks all ring axioms:
/// unit dimensions, unit action, graded commutativity, associativity on
/// basis triples, and Poincare nondegeneracy in every complementary pair.
class GradedAlgebra {
public:
    /// One nonzero structure constant: e_i^(d) cup e_j^(d') has
    /// coefficient c on e_k^(d+d').
    struct CupEntry {
        long d, dprime;
        std::size_t i, j, k;
        Scalar c;
    };

    GradedAlgebra() = default;
    /// Builds the tables without validating; call validate() afterwards.
    GradedAlgebra(long half_dim, std::vector<long> betti, const std::vector<CupEntry>& entries);

    /// n = 1 surface-type algebra: H^* = Q + H^2 + Q with the degree-2
    /// products given by an invertible symmetric Gram matrix.
    static GradedAlgebra surface(const Matrix& gram);
    /// The 22-dimensional H^2 case of surface().
    static GradedAlgebra k3(const Matrix& gram);

    long half_dim() const { return n_; }
    long top_degree() const { return 4 * n_; }
    const std::vector<long>& betti() const { return betti_; }
    std::size_t total_dim() const { return total_; }
    /// Offset of H^d inside the total cohomology coordinate block.
    std::size_t offset(long d) const;

    const Scalar& cup_coeff(long d, long dprime, std::size_t i, std::size_t j, std::size_t k) const;

    CohomologyClass unit() const;
    CohomologyClass point_class() const;
    CohomologyClass basis_class(long degree, std::size_t index) const;

    /// a cup b (zero class of the appropriate degree when out of range).
    CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) const;

    /// The endomorphism v -> a cup v of the total cohomology.
    Matrix cup_operator(const CohomologyClass& a) const;

    /// Poincare pairing matrix H^d x H^{4n-d} -> H^{4n} (coefficient of the
    /// point class).
    Matrix pairing_matrix(long d) const;

    /// True iff the pairing matrix is invertible in every complementary pair.
    bool poincare_check() const;

    /// Embeds a degree-d class into total-cohomology coordinates.
    Vec embed(const CohomologyClass& a) const;
    /// H^d as a coordinate subspace of the total cohomology.
    Subspace degree_subspace(long d) const;

    /// All violated ring axioms, with offending basis indices; empty = valid.
    std::vector<std::string> validate() const;

private:
    long n_ = 0;
    std::vector<long> betti_;
    std::vector<std::size_t> offset_;
    std::size_t total_ = 0;
    // (d, d') -> dense tensor indexed by (i*b' + j)*b_out + k
    std::map<std::pair<long, long>, Vec> cup_;
    Scalar zero_;

    bool degree_ok(long d) const { return d >= 0 && d <= 4 * n_; }
};

} // namespace pwv
