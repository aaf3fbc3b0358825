#include "pwv/lefschetz.hpp"

#include "pwv/errors.hpp"
#include "pwv/quadratic_space.hpp"

#include <deque>

namespace pwv {

bool Sl2Triple::brackets_hold() const {
    return bracket(s, l) == Scalar(2) * l && bracket(s, lambda) == Scalar(-2) * lambda &&
           bracket(l, lambda) == s;
}

bool LieSubalgebra::is_closed() const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!contains(bracket(basis[i], basis[j]))) return false;
    return true;
}

Matrix grading_operator(const GradedAlgebra& a) {
    Matrix h(a.total_dim(), a.total_dim());
    for (long d = 0; d <= a.top_degree(); ++d) {
        const std::size_t base = a.offset(d);
        const std::size_t bd = static_cast<std::size_t>(a.betti()[static_cast<std::size_t>(d)]);
        for (std::size_t k = 0; k < bd; ++k) h(base + k, base + k) = Scalar(d - 2 * a.half_dim());
    }
    return h;
}

bool hard_lefschetz_test(const GradedAlgebra& a, const CohomologyClass& omega) {
    if (omega.degree != 2) throw PreconditionError("hard_lefschetz_test: class must have degree 2");
    const long n2 = 2 * a.half_dim();
    const Matrix l = a.cup_operator(omega);
    Matrix power = Matrix::identity(a.total_dim());
    for (long k = 1; k <= n2; ++k) {
        power = l * power;
        const long dlow = n2 - k, dhigh = n2 + k;
        const std::size_t blow = static_cast<std::size_t>(a.betti()[static_cast<std::size_t>(dlow)]);
        const std::size_t bhigh = static_cast<std::size_t>(a.betti()[static_cast<std::size_t>(dhigh)]);
        if (blow != bhigh) return false;
        if (blow == 0) continue;
        const Matrix block = power.submatrix(a.offset(dhigh), a.offset(dlow), bhigh, blow);
        if (rref(block).pivots.size() != blow) return false;
    }
    return true;
}

Matrix complete_sl2(const Matrix& l, const Matrix& s) {
    const std::size_t n = l.rows();
    if (l.cols() != n || s.rows() != n || s.cols() != n)
        throw DimensionError("complete_sl2: operators must be square of equal size");
    if (bracket(s, l) != Scalar(2) * l)
        throw PreconditionError("complete_sl2: [S, L] != 2L");

    // Unknown X is flattened row-major; rows list the equations
    // [L,X] = S followed by [S,X] + 2X = 0.
    const std::size_t nn = n * n;
    Matrix sys(2 * nn, nn);
    Vec rhs(2 * nn);
    auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t eq1 = var(i, j), eq2 = nn + var(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (!l(i, k).is_zero()) sys(eq1, var(k, j)) += l(i, k);
                if (!l(k, j).is_zero()) sys(eq1, var(i, k)) -= l(k, j);
                if (!s(i, k).is_zero()) sys(eq2, var(k, j)) += s(i, k);
                if (!s(k, j).is_zero()) sys(eq2, var(i, k)) -= s(k, j);
            }
            sys(eq2, var(i, j)) += Scalar(2);
            rhs[eq1] = s(i, j);
        }

    const LinearSolution sol = solve_linear(sys, rhs);
    if (!sol.particular) throw InvariantError("no sl2 completion");
    if (sol.kernel.dim() != 0) throw InvariantError("non-unique completion");
    Matrix lambda = Matrix::unflatten(*sol.particular, n, n);

    const Sl2Triple triple{l, s, lambda};
    if (!triple.brackets_hold()) throw InvariantError("complete_sl2: bracket identities fail");
    return lambda;
}

LieSubalgebra lie_closure(const std::vector<Matrix>& generators) {
    if (generators.empty()) throw PreconditionError("lie_closure: no generators");
    const std::size_t n = generators[0].rows();
    for (const Matrix& g : generators)
        if (g.rows() != n || g.cols() != n)
            throw DimensionError("lie_closure: generators must be square of equal size");

    RowSpan span(n * n);
    std::deque<Matrix> fresh;
    std::vector<Matrix> gen_basis;
    for (const Matrix& g : generators) {
        Vec v = g.flatten();
        if (span.insert(std::move(v))) {
            // raw generators are usually sparser than their reduced rows
            gen_basis.push_back(g);
            fresh.push_back(g);
        }
    }

    // Left-normed brackets [g, [g', [...]]] span the generated subalgebra,
    // so bracketing fresh elements against the generator span suffices.
    while (!fresh.empty()) {
        const Matrix v = std::move(fresh.front());
        fresh.pop_front();
        for (const Matrix& g : gen_basis) {
            Vec flat = bracket(g, v).flatten();
            if (!span.reduce(flat)) continue;
            fresh.push_back(Matrix::unflatten(flat, n, n));
            span.insert(std::move(flat));
        }
    }

    LieSubalgebra out;
    out.matrix_dim = n;
    const Matrix basis = span.basis_matrix();
    for (std::size_t i = 0; i < basis.rows(); ++i)
        out.basis.push_back(Matrix::unflatten(basis.row(i), n, n));
    out.flat = Subspace::from_rref(basis, n * n);
    return out;
}

std::array<long, 3> ad_grading(const LieSubalgebra& g, const Matrix& h) {
    if (!g.contains(h)) throw PreconditionError("ad_grading: H is not in the subalgebra");
    const std::size_t k = g.dim();
    RowSpan span(g.matrix_dim * g.matrix_dim);
    for (const Matrix& b : g.basis) span.insert(b.flatten());

    Matrix ad(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        const Matrix hb = bracket(h, g.basis[j]);
        const auto coords = span.coordinates(hb.flatten());
        if (!coords) throw InvariantError("ad_grading: subalgebra not ad(H)-stable");
        for (std::size_t i = 0; i < k; ++i) ad(i, j) = (*coords)[i];
    }

    std::map<std::vector<long>, Subspace> blocks;
    try {
        blocks = simultaneous_eigenspaces({ad}, {{-2, 0, 2}});
    } catch (const InvariantError&) {
        throw InvariantError("unexpected ad-eigenvalue");
    }
    std::array<long, 3> dims{0, 0, 0};
    for (const auto& [key, block] : blocks) {
        if (key[0] == -2) dims[0] = static_cast<long>(block.dim());
        if (key[0] == 0) dims[1] = static_cast<long>(block.dim());
        if (key[0] == 2) dims[2] = static_cast<long>(block.dim());
    }
    return dims;
}

std::vector<CohomologyClass> hard_lefschetz_spanning_family(const GradedAlgebra& a,
                                                            const QuadraticSpace& q) {
    const std::size_t b2 = q.dim();
    std::vector<CohomologyClass> family;
    // e_i when non-isotropic, else e_i perturbed by some +-e_j; the greedy
    // independence check keeps the family a basis of H^2.
    RowSpan chosen(b2);
    for (std::size_t i = 0; i < b2; ++i) {
        std::vector<Vec> candidates;
        candidates.push_back(a.basis_class(2, i).coords);
        for (std::size_t j = 0; j < b2; ++j) {
            if (j == i) continue;
            Vec plus = candidates.front(), minus = candidates.front();
            plus[j] += Scalar(1);
            minus[j] -= Scalar(1);
            candidates.push_back(std::move(plus));
            candidates.push_back(std::move(minus));
        }
        bool placed = false;
        for (const Vec& candidate : candidates) {
            if (q.form(candidate).is_zero()) continue;
            Vec residual = candidate;
            if (!chosen.reduce(residual)) continue; // dependent on earlier picks
            chosen.insert(candidate);
            family.push_back(CohomologyClass{2, candidate});
            placed = true;
            break;
        }
        if (!placed)
            throw PreconditionError("hard_lefschetz_spanning_family: no independent perturbation");
    }
    return family;
}

LieSubalgebra llv_algebra(const GradedAlgebra& a, const QuadraticSpace& q) {
    const Matrix h = grading_operator(a);
    std::vector<Matrix> generators;
    generators.push_back(h);
    for (const CohomologyClass& omega : hard_lefschetz_spanning_family(a, q)) {
        Matrix l = a.cup_operator(omega);
        Matrix lambda = complete_sl2(l, h);
        generators.push_back(std::move(l));
        generators.push_back(std::move(lambda));
    }
    return lie_closure(generators);
}

} // namespace pwv
