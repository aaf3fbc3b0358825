#pragma once

#include "pwv/graded_algebra.hpp"
#include "pwv/lefschetz.hpp"
#include "pwv/linalg.hpp"
#include "pwv/quadratic_space.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pwv {

/// Outcome of a verification; detail names the first failure when !ok.
struct Verdict {
    bool ok = false;
    std::string detail;
};

/// Increasing exhaustive filtration, one per cohomological degree, stored
/// only at the indices where it jumps.
class FiltrationTable {
public:
    struct Step {
        long k;
        Subspace space;
    };

    void set_degree(long d, Subspace full_space, std::vector<Step> jumps);

    std::vector<long> degrees() const;
    bool has_degree(long d) const;
    /// Zero below the first jump, full above the last.
    Subspace at(long d, long k) const;
    const Subspace& full(long d) const;
    const std::vector<Step>& jumps(long d) const;
    /// k -> dim Gr_k for the degrees where Gr jumps (nonzero graded pieces).
    std::map<long, long> gr_dims(long d) const;

    bool equal_in_degree(const FiltrationTable& other, long d) const;

private:
    std::map<long, std::pair<Subspace, std::vector<Step>>> table_;
};

/// The named operators of the main construction plus the Lie subalgebra
/// they generate. All matrices act on total cohomology and are rational.
struct OperatorSuite {
    Matrix l_eta, l_beta, l_rho;
    Matrix h;
    Matrix lambda_rho, lambda_eta_minus_beta;
    Matrix n_op, h_n, lambda_n;
    LieSubalgebra g_rho;
};

/// Builds L_eta, L_beta, L_rho, H, the lowering operators, the nilpotent
/// N = [L_beta, Lambda_rho], H_N = -[L_eta + L_beta, Lambda_{eta-beta}],
/// Lambda_N = -[L_eta, Lambda_rho], and g_rho.
///
/// Preconditions (PreconditionError): q(eta) = 0, q(beta) = 0,
/// q(eta, beta) != 0, q(rho) > 0, q(eta, rho) = q(beta, rho) = 0.
/// Postconditions (InvariantError): commuting raising operators,
/// [H, L] = 2L, (N, H_N, Lambda_N) an sl2-triple, [H, H_N] = 0,
/// and every matrix rational.
OperatorSuite build_operator_suite(const GradedAlgebra& a, const QuadraticSpace& q,
                                   const Vec& eta, const Vec& beta, const Vec& rho);

/// Checks that N restricted to H^2 is the wedge operator beta ^ rho and
/// that Im N = <beta, rho>, Im N^2 = <beta>, N^3 = 0 there.
Verdict nilpotent_consistency(const GradedAlgebra& a, const QuadraticSpace& q,
                              const OperatorSuite& suite, const Vec& beta, const Vec& rho);

/// Joint weight decomposition of (H, H_N): block (i, j) is the joint
/// eigenspace at (i + j - 2n, j - i).
struct PerverseDecomposition {
    long half_dim = 0;
    std::size_t ambient = 0;
    std::map<std::pair<long, long>, Subspace> blocks;

    long block_dim(long i, long j) const;
};

PerverseDecomposition perverse_decomposition(const GradedAlgebra& a, const OperatorSuite& suite);

/// P_k H^d = direct sum of blocks (i, j) with i + j = d, i <= k.
FiltrationTable perverse_filtration(const GradedAlgebra& a, const PerverseDecomposition& dec);

/// Monodromy weight filtration of a nilpotent operator on V, centered at d,
/// by the closed formula W_{d+k} = sum_j ker N^{k+j+1} cap im N^j (inside V).
/// Both defining properties are verified after construction.
FiltrationTable deligne_filtration(const Matrix& n_op, long d, const Subspace& v);

/// Weight filtration from H_N eigenspaces: W_k H^d = sum of the H_N
/// eigenspaces W_m^d with d - m <= k. Cross-checked degree by degree
/// against deligne_filtration; throws InvariantError("oracle mismatch")
/// if the two constructions ever disagree.
FiltrationTable monodromy_filtration(const GradedAlgebra& a, const OperatorSuite& suite);

/// P_k H^d = W_{2k} H^d = W_{2k+1} H^d as exact subspaces, all d, k.
Verdict verify_pw(const FiltrationTable& p, const FiltrationTable& w);

/// Cup products respect the perverse filtration:
/// P_k H^d cup P_{k'} H^{d'} lands in P_{k+k'} H^{d+d'}.
Verdict multiplicativity_check(const GradedAlgebra& a, const FiltrationTable& p);

/// Hodge numbers h(p, q); input data, never computed.
struct HodgeDiamond {
    std::map<std::pair<long, long>, long> h;

    static HodgeDiamond from_rows(const std::vector<std::vector<long>>& rows);
    long at(long p, long q) const;
    /// Symmetry and Betti-sum consistency; empty result = consistent.
    std::vector<std::string> validate(const std::vector<long>& betti) const;
};

/// dim Gr_i^P H^{i+j} = h(i, j) for all blocks.
Verdict perverse_hodge(const PerverseDecomposition& dec, const HodgeDiamond& hd,
                       const GradedAlgebra& a);

/// The so(5, C) operator dictionary over Q(i): L_1 = L_rho,
/// L_2 = L_eta + L_beta, L_3 = -i (L_eta - L_beta), K_st = [L_s, Lambda_t];
/// verifies the expressions of N, Lambda_N, H_N through the K_st, the
/// antisymmetry K_st = -K_ts, the H_N eigenvalue (j - i) on block (i, j),
/// the Cartan pair (H, -i K_23) reproducing the blocks, and the final
/// filtration chain. Each failed identity is reported by name.
Verdict so5_dictionary_check(const GradedAlgebra& a, const OperatorSuite& suite,
                             const PerverseDecomposition& dec);

/// Type III conditions on H^2: N^2 != 0 and N^3 = 0.
Verdict type_iii_check(const GradedAlgebra& a, const OperatorSuite& suite);

} // namespace pwv
