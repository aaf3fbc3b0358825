#include "pwv/quadratic_space.hpp"

#include "pwv/errors.hpp"

namespace pwv {

QuadraticSpace::QuadraticSpace(Matrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw PreconditionError("QuadraticSpace: Gram matrix not square");
    if (!gram_.is_rational()) throw PreconditionError("QuadraticSpace: Gram matrix not rational");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = i + 1; j < gram_.cols(); ++j)
            if (gram_(i, j) != gram_(j, i))
                throw PreconditionError("QuadraticSpace: Gram matrix not symmetric");
}

Scalar QuadraticSpace::form(const Vec& u, const Vec& v) const {
    if (u.size() != dim() || v.size() != dim())
        throw DimensionError("QuadraticSpace::form: vector length mismatch");
    return dot(u, gram_.apply(v));
}

std::tuple<long, long, long> QuadraticSpace::signature() const {
    const Congruence c = congruence_diagonalize(gram_);
    return {c.pos, c.neg, c.zero};
}

QuadraticSpace QuadraticSpace::restrict_to(const std::vector<Vec>& vectors) const {
    Matrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) g(i, j) = form(vectors[i], vectors[j]);
    return QuadraticSpace(std::move(g));
}

QuadraticSpace mukai_extend(const QuadraticSpace& q) {
    const std::size_t n = q.dim();
    Matrix g(n + 2, n + 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = q.gram()(i, j);
    g(n, n + 1) = Scalar(-1);
    g(n + 1, n) = Scalar(-1);
    return QuadraticSpace(std::move(g));
}

Matrix wedge_operator(const QuadraticSpace& q, const Vec& a, const Vec& b) {
    const std::size_t n = q.dim();
    if (a.size() != n || b.size() != n) throw DimensionError("wedge_operator: vector length mismatch");
    const Vec ga = q.gram().apply(a);
    const Vec gb = q.gram().apply(b);
    const Scalar half = Scalar(rational_of(1, 2));
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w(i, j) = half * (b[i] * ga[j] - a[i] * gb[j]);
    return w;
}

Vec normalize_eta(const QuadraticSpace& q, const Vec& eta0, const Vec& beta) {
    if (!q.form(beta).is_zero())
        throw PreconditionError("normalize_eta: beta is not isotropic");
    const Scalar pairing = q.form(eta0, beta);
    if (pairing.is_zero())
        throw PreconditionError("normalize_eta: q(eta0, beta) = 0, degenerate input");
    const Scalar t = -(q.form(eta0) / (Scalar(2) * pairing));
    Vec eta = eta0;
    add_scaled(eta, t, beta);
    return eta;
}

Vec primitive_integer_vector(const Vec& v) {
    mpz_class den_lcm(1), num_gcd(0);
    for (const Scalar& s : v) {
        if (!s.is_rational()) throw PreconditionError("primitive_integer_vector: non-rational entry");
        if (s.is_zero()) continue;
        mpz_class den = s.re.get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
    }
    Vec out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        Rational r = v[k].re * Rational(den_lcm);
        r.canonicalize();
        out[k] = Scalar(r);
        if (sgn(r) != 0) {
            mpz_class num = r.get_num();
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
        }
    }
    if (num_gcd == 0) return out; // zero vector
    int lead = 0;
    for (const Scalar& s : out)
        if (!s.is_zero()) {
            lead = sign(s.re);
            break;
        }
    if (lead < 0) num_gcd = -num_gcd;
    for (Scalar& s : out) {
        Rational r = s.re / Rational(num_gcd);
        r.canonicalize();
        s = Scalar(r);
    }
    return out;
}

Vec find_positive_orthogonal(const QuadraticSpace& q, const std::vector<Vec>& constraints) {
    const std::size_t n = q.dim();
    // Orthogonal complement: q(c, x) = 0 is the linear condition (Gc) . x = 0.
    Matrix conditions(constraints.size(), n);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].size() != n)
            throw DimensionError("find_positive_orthogonal: constraint length mismatch");
        conditions.set_row(i, q.gram().apply(constraints[i]));
    }
    const Subspace complement = kernel(conditions);

    std::vector<Vec> basis;
    for (std::size_t i = 0; i < complement.dim(); ++i) basis.push_back(complement.basis().row(i));
    const QuadraticSpace restricted = q.restrict_to(basis);
    const Congruence c = congruence_diagonalize(restricted.gram());
    std::size_t positive_col = restricted.dim();
    for (std::size_t i = 0; i < restricted.dim(); ++i)
        if (sign(c.d(i, i).re) > 0) {
            positive_col = i;
            break;
        }
    if (positive_col == restricted.dim())
        throw PreconditionError("no positive vector");

    Vec v(n);
    for (std::size_t k = 0; k < basis.size(); ++k)
        add_scaled(v, c.p(k, positive_col), basis[k]);
    v = primitive_integer_vector(v);

    // The output certifies its own postconditions.
    if (sign(q.form(v).re) <= 0) throw InvariantError("find_positive_orthogonal: q(v) <= 0");
    for (const Vec& cst : constraints)
        if (!q.form(v, cst).is_zero())
            throw InvariantError("find_positive_orthogonal: output not orthogonal to constraints");
    return v;
}

} // namespace pwv
