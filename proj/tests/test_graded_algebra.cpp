#include "pwv/graded_algebra.hpp"

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

const ManifoldDocument& k3doc() {
    static const ManifoldDocument doc = k3_document();
    return doc;
}

const GradedAlgebra& k3() {
    static const GradedAlgebra a = k3doc().build_algebra();
    return a;
}

} // namespace

TEST_CASE("K3 algebra validates with betti (1,0,22,0,1)") {
    CHECK(k3().validate().empty());
    CHECK(k3().betti() == std::vector<long>{1, 0, 22, 0, 1});
    CHECK(k3().total_dim() == 24);
    CHECK(k3().poincare_check());
}

TEST_CASE("K3 Gram matrix has signature (3,19)") {
    const QuadraticSpace q(k3doc().bbf_gram);
    const auto [pos, neg, zero] = q.signature();
    CHECK(pos == 3);
    CHECK(neg == 19);
    CHECK(zero == 0);
    CHECK(pos + neg == 22);
}

TEST_CASE("cup_operator") {
    SUBCASE("unit gives the identity") {
        CHECK(k3().cup_operator(k3().unit()) == Matrix::identity(24));
    }
    SUBCASE("point class is the rank-1 map unit -> point") {
        const Matrix l = k3().cup_operator(k3().point_class());
        CHECK(rref(l).pivots.size() == 1);
        const Vec unit_vec = k3().embed(k3().unit());
        CHECK(l.apply(unit_vec) == k3().embed(k3().point_class()));
    }
    SUBCASE("isotropic beta squares to zero") {
        const QuadraticSpace q(k3doc().bbf_gram);
        REQUIRE(q.form(k3doc().beta).is_zero());
        const Matrix l = k3().cup_operator(CohomologyClass{2, k3doc().beta});
        CHECK((l * l).is_zero());
    }
    SUBCASE("degree-2 cup operators commute and are linear") {
        const CohomologyClass a = k3().basis_class(2, 3);
        const CohomologyClass b = k3().basis_class(2, 7);
        const Matrix la = k3().cup_operator(a);
        const Matrix lb = k3().cup_operator(b);
        CHECK(bracket(la, lb).is_zero());
        CohomologyClass combo{2, Vec(22)};
        combo.coords[3] = sc(2, 3);
        combo.coords[7] = sc(-5);
        CHECK(k3().cup_operator(combo) == sc(2, 3) * la + sc(-5) * lb);
    }
}

TEST_CASE("K3 pairing of degree-2 classes equals the BBF form") {
    const QuadraticSpace q(k3doc().bbf_gram);
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Vec a(22), b(22);
        for (std::size_t k = 0; k < 22; ++k) {
            a[k] = pwvtest::random_rational(rng, 3);
            b[k] = pwvtest::random_rational(rng, 3);
        }
        const CohomologyClass product = k3().cup(CohomologyClass{2, a}, CohomologyClass{2, b});
        CHECK(product.coords[0] == q.form(a, b));
    }
}

TEST_CASE("trivial algebra H^0 + H^4 passes the Poincare check") {
    std::vector<GradedAlgebra::CupEntry> entries;
    entries.push_back({0, 0, 0, 0, 0, sc(1)});
    entries.push_back({0, 4, 0, 0, 0, sc(1)});
    entries.push_back({4, 0, 0, 0, 0, sc(1)});
    const GradedAlgebra a(1, {1, 0, 0, 0, 1}, entries);
    CHECK(a.validate().empty());
    CHECK(a.poincare_check());
}

TEST_CASE("constructed failures are named") {
    SUBCASE("asymmetric cup table breaks graded commutativity") {
        ManifoldDocument doc = k3doc();
        doc.cup.push_back({2, 2, 0, 5, 0, sc(1)}); // e_0 cup e_5 bumped on one side only
        const auto violations = doc.build_algebra().validate();
        REQUIRE_FALSE(violations.empty());
        bool found = false;
        for (const auto& v : violations)
            if (v.find("graded commutativity") != std::string::npos &&
                v.find("(0,5)") != std::string::npos)
                found = true;
        CHECK(found);
    }
    SUBCASE("wrong unit dimension is reported") {
        std::vector<GradedAlgebra::CupEntry> entries;
        const GradedAlgebra a(1, {2, 0, 0, 0, 1}, entries);
        const auto violations = a.validate();
        REQUIRE_FALSE(violations.empty());
        CHECK(violations.front().find("dim H^0 = 2") != std::string::npos);
    }
    SUBCASE("associativity violation is reported") {
        ManifoldDocument doc = k3doc();
        // corrupt 1 cup e_3^(2): now (e_3 cup 1) cup e_4 != e_3 cup (1 cup e_4) fails too
        for (auto& e : doc.cup)
            if (e.d == 0 && e.dprime == 2 && e.j == 3) e.c = sc(2);
        const auto violations = doc.build_algebra().validate();
        bool found = false;
        for (const auto& v : violations)
            if (v.find("associativity") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("cup-orthogonal direction kills Poincare duality") {
        ManifoldDocument doc = k3doc();
        std::vector<GradedAlgebra::CupEntry> kept;
        for (const auto& e : doc.cup) {
            const bool touches = (e.d == 2 && e.i == 21) || (e.dprime == 2 && e.j == 21);
            if (!(touches && e.d + e.dprime == 4)) kept.push_back(e);
        }
        doc.cup = kept;
        const GradedAlgebra a = doc.build_algebra();
        CHECK_FALSE(a.poincare_check());
        bool found = false;
        for (const auto& v : a.validate())
            if (v.find("Poincare") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("surface builder") {
    SUBCASE("hyperbolic plane padded with +-1 diagonal") {
        Matrix gram(22, 22);
        gram(0, 1) = sc(1);
        gram(1, 0) = sc(1);
        for (std::size_t k = 2; k < 22; ++k) gram(k, k) = (k % 2 == 0) ? sc(1) : sc(-1);
        const GradedAlgebra a = GradedAlgebra::k3(gram);
        CHECK(a.validate().empty());
    }
    SUBCASE("singular Gram matrix is rejected") {
        CHECK_THROWS_AS(GradedAlgebra::k3(Matrix(22, 22)), PreconditionError);
    }
    SUBCASE("the k3 builder reproduces the bundled document's algebra") {
        const GradedAlgebra built = GradedAlgebra::k3(k3doc().bbf_gram);
        const GradedAlgebra parsed = k3();
        CHECK(built.cup_operator(built.basis_class(2, 4)) ==
              parsed.cup_operator(parsed.basis_class(2, 4)));
        CHECK(built.pairing_matrix(2) == parsed.pairing_matrix(2));
    }
}
