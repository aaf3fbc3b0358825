#include "pwv/lefschetz.hpp"

#include "pwv/document.hpp"
#include "pwv/errors.hpp"
#include "pwv/quadratic_space.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace pwv;
using pwvtest::mat;
using pwvtest::sc;
using pwvtest::vec;

namespace {

struct K3Fixture {
    ManifoldDocument doc = k3_document();
    GradedAlgebra algebra = doc.build_algebra();
    QuadraticSpace q{doc.bbf_gram};
    Vec beta = doc.beta;
    Vec eta = normalize_eta(q, doc.eta, doc.beta);
    Vec rho = find_positive_orthogonal(q, {eta, beta});
    Matrix h = grading_operator(algebra);
};

const K3Fixture& k3() {
    static const K3Fixture f;
    return f;
}

struct MiniFixture {
    ManifoldDocument doc = pwvtest::mini_document();
    GradedAlgebra algebra = doc.build_algebra();
    QuadraticSpace q{doc.bbf_gram};
    Matrix h = grading_operator(algebra);
};

const MiniFixture& mini() {
    static const MiniFixture f;
    return f;
}

} // namespace

TEST_CASE("grading operator") {
    const Matrix h = k3().h;
    SUBCASE("eigenvalue d - 2n on H^d") {
        CHECK(h(0, 0) == sc(-2));            // H^0
        for (std::size_t k = 1; k <= 22; ++k) CHECK(h(k, k) == sc(0)); // H^2
        CHECK(h(23, 23) == sc(2));           // H^4
    }
    SUBCASE("trace vanishes by Poincare symmetry") {
        Scalar trace;
        for (std::size_t k = 0; k < 24; ++k) trace += h(k, k);
        CHECK(trace.is_zero());
    }
    SUBCASE("[H, L_omega] = 2 L_omega for any degree-2 class") {
        const Matrix l = k3().algebra.cup_operator(k3().algebra.basis_class(2, 9));
        CHECK(bracket(h, l) == sc(2) * l);
    }
}

TEST_CASE("hard Lefschetz test") {
    SUBCASE("positive-square rho passes") {
        CHECK(hard_lefschetz_test(k3().algebra, CohomologyClass{2, k3().rho}));
    }
    SUBCASE("isotropic beta fails") {
        CHECK_FALSE(hard_lefschetz_test(k3().algebra, CohomologyClass{2, k3().beta}));
    }
    SUBCASE("zero class fails") {
        CHECK_FALSE(hard_lefschetz_test(k3().algebra, CohomologyClass{2, Vec(22)}));
    }
    SUBCASE("on a surface-type algebra, hard Lefschetz is equivalent to q != 0") {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            Vec omega(22);
            for (std::size_t k = 0; k < 22; ++k) omega[k] = pwvtest::random_rational(rng, 2);
            const bool hl = hard_lefschetz_test(k3().algebra, CohomologyClass{2, omega});
            CHECK(hl == !k3().q.form(omega).is_zero());
        }
    }
}

TEST_CASE("complete_sl2") {
    SUBCASE("standard 2-dimensional representation") {
        // basis ordered (e_{+1}, e_{-1}); L is the lower shift e_{-1} -> e_{+1}
        const Matrix s = mat({{1, 0}, {0, -1}});
        const Matrix l = mat({{0, 1}, {0, 0}});
        const Matrix lambda = complete_sl2(l, s);
        CHECK(lambda == mat({{0, 0}, {1, 0}}));
    }
    SUBCASE("K3: Lambda_rho exists, is unique, and lowers degree by 2") {
        const Matrix l = k3().algebra.cup_operator(CohomologyClass{2, k3().rho});
        const Matrix lambda = complete_sl2(l, k3().h);
        CHECK(Sl2Triple{l, k3().h, lambda}.brackets_hold());
        CHECK(bracket(k3().h, lambda) == sc(-2) * lambda);
        // block structure: the only nonzero blocks map H^2 -> H^0 and H^4 -> H^2
        CHECK(lambda.submatrix(0, 0, 1, 1).is_zero());
        CHECK_FALSE(lambda.submatrix(0, 1, 1, 22).is_zero());
        CHECK_FALSE(lambda.submatrix(1, 23, 22, 1).is_zero());
        CHECK(lambda.submatrix(23, 0, 1, 24).is_zero());
    }
    SUBCASE("K3: isotropic beta admits no completion") {
        const Matrix l = k3().algebra.cup_operator(CohomologyClass{2, k3().beta});
        CHECK_THROWS_WITH_AS(complete_sl2(l, k3().h), "no sl2 completion", InvariantError);
    }
    SUBCASE("precondition [S, L] = 2L is enforced") {
        CHECK_THROWS_AS(complete_sl2(Matrix::identity(2), mat({{1, 0}, {0, -1}})),
                        PreconditionError);
    }
    SUBCASE("scaling: completing cL yields Lambda / c") {
        const Matrix l = mini().algebra.cup_operator(mini().algebra.basis_class(2, 2));
        const Matrix lambda = complete_sl2(l, mini().h);
        const Matrix lambda_scaled = complete_sl2(sc(5) * l, mini().h);
        CHECK(lambda_scaled == sc(1, 5) * lambda);
    }
}

TEST_CASE("lie_closure") {
    SUBCASE("one sl2-triple closes at dimension 3") {
        const Matrix s = mat({{1, 0}, {0, -1}});
        const Matrix l = mat({{0, 1}, {0, 0}});
        const Matrix lambda = mat({{0, 0}, {1, 0}});
        const LieSubalgebra g = lie_closure({l, s, lambda});
        CHECK(g.dim() == 3);
        CHECK(g.is_closed());
        CHECK(ad_grading(g, s) == std::array<long, 3>{1, 1, 1});
    }
    SUBCASE("closure is idempotent and generator-order independent") {
        const Matrix s = mat({{1, 0}, {0, -1}});
        const Matrix l = mat({{0, 1}, {0, 0}});
        const Matrix lambda = mat({{0, 0}, {1, 0}});
        const LieSubalgebra g1 = lie_closure({l, s, lambda});
        const LieSubalgebra g2 = lie_closure({lambda, l, s});
        CHECK(g1.flat == g2.flat);
        const LieSubalgebra g3 = lie_closure(g1.basis);
        CHECK(g3.flat == g1.flat);
    }
    SUBCASE("mini surface: full LLV algebra is so(6) of dimension 15") {
        const LieSubalgebra g = llv_algebra(mini().algebra, mini().q);
        CHECK(g.dim() == 15);
        CHECK(g.is_closed());
        // g_{-2} and g_2 match H^2, g_0 = so(H^2) + <H>
        CHECK(ad_grading(g, mini().h) == std::array<long, 3>{4, 7, 4});
    }
    SUBCASE("b2 = 5 surface: full LLV algebra is so(7) of dimension 21") {
        Matrix gram(5, 5);
        gram(0, 1) = sc(1);
        gram(1, 0) = sc(1);
        gram(2, 2) = sc(1);
        gram(3, 3) = sc(1);
        gram(4, 4) = sc(-1);
        const GradedAlgebra a = GradedAlgebra::surface(gram);
        const QuadraticSpace q(gram);
        const LieSubalgebra g = llv_algebra(a, q);
        CHECK(g.dim() == 21);
        CHECK(ad_grading(g, grading_operator(a)) == std::array<long, 3>{5, 11, 5});
    }
    SUBCASE("mini surface: g_rho has dimension 10 = dim so(5)") {
        const Vec beta = mini().doc.beta;
        const Vec eta = normalize_eta(mini().q, mini().doc.eta, beta);
        const Vec rho = find_positive_orthogonal(mini().q, {eta, beta});
        const Matrix l_eta = mini().algebra.cup_operator(CohomologyClass{2, eta});
        const Matrix l_beta = mini().algebra.cup_operator(CohomologyClass{2, beta});
        const Matrix l_rho = mini().algebra.cup_operator(CohomologyClass{2, rho});
        const Matrix lambda_rho = complete_sl2(l_rho, mini().h);
        const Matrix lambda_emb = complete_sl2(l_eta - l_beta, mini().h);
        const LieSubalgebra g =
            lie_closure({l_eta, l_beta, l_rho, lambda_rho, lambda_emb, mini().h});
        CHECK(g.dim() == 10);
        CHECK(g.is_closed());
        CHECK(ad_grading(g, mini().h) == std::array<long, 3>{3, 4, 3});
    }
}

TEST_CASE("hard Lefschetz agrees with sl2-completion consistency") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        Vec omega(4);
        for (std::size_t k = 0; k < 4; ++k) omega[k] = pwvtest::random_rational(rng, 2);
        const CohomologyClass c{2, omega};
        const bool hl = hard_lefschetz_test(mini().algebra, c);
        bool completes = true;
        try {
            complete_sl2(mini().algebra.cup_operator(c), mini().h);
        } catch (const InvariantError&) {
            completes = false;
        }
        CHECK(hl == completes);
    }
}
