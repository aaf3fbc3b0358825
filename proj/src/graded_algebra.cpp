#include "pwv/graded_algebra.hpp"

#include "pwv/errors.hpp"

#include <sstream>

namespace pwv {

GradedAlgebra::GradedAlgebra(long half_dim, std::vector<long> betti,
                             const std::vector<CupEntry>& entries)
    : n_(half_dim), betti_(std::move(betti)) {
    if (n_ < 1) throw PreconditionError("GradedAlgebra: half_dim must be positive");
    if (betti_.size() != static_cast<std::size_t>(4 * n_ + 1))
        throw PreconditionError("GradedAlgebra: betti list must cover H^0..H^{4n}");
    offset_.resize(betti_.size() + 1, 0);
    for (std::size_t d = 0; d < betti_.size(); ++d) {
        if (betti_[d] < 0) throw PreconditionError("GradedAlgebra: negative Betti number");
        offset_[d + 1] = offset_[d] + static_cast<std::size_t>(betti_[d]);
    }
    total_ = offset_.back();

    for (const CupEntry& e : entries) {
        if (!degree_ok(e.d) || !degree_ok(e.dprime) || !degree_ok(e.d + e.dprime))
            throw PreconditionError("GradedAlgebra: cup entry degree out of range");
        const std::size_t bi = static_cast<std::size_t>(betti_[e.d]);
        const std::size_t bj = static_cast<std::size_t>(betti_[e.dprime]);
        const std::size_t bk = static_cast<std::size_t>(betti_[e.d + e.dprime]);
        if (e.i >= bi || e.j >= bj || e.k >= bk)
            throw PreconditionError("GradedAlgebra: cup entry basis index out of range");
        auto& table = cup_[{e.d, e.dprime}];
        if (table.empty()) table.resize(bi * bj * bk);
        table[(e.i * bj + e.j) * bk + e.k] += e.c;
    }
}

GradedAlgebra GradedAlgebra::surface(const Matrix& gram) {
    const std::size_t b2 = gram.rows();
    if (gram.cols() != b2) throw PreconditionError("surface: Gram matrix not square");
    if (!gram.is_rational()) throw PreconditionError("surface: Gram matrix not rational");
    for (std::size_t i = 0; i < b2; ++i)
        for (std::size_t j = i + 1; j < b2; ++j)
            if (gram(i, j) != gram(j, i)) throw PreconditionError("surface: Gram matrix not symmetric");
    if (rref(gram).pivots.size() != b2)
        throw PreconditionError("surface: Gram matrix not invertible");

    std::vector<CupEntry> entries;
    entries.push_back({0, 0, 0, 0, 0, Scalar(1)});
    entries.push_back({0, 4, 0, 0, 0, Scalar(1)});
    entries.push_back({4, 0, 0, 0, 0, Scalar(1)});
    for (std::size_t i = 0; i < b2; ++i) {
        entries.push_back({0, 2, 0, i, i, Scalar(1)});
        entries.push_back({2, 0, i, 0, i, Scalar(1)});
        for (std::size_t j = 0; j < b2; ++j)
            if (!gram(i, j).is_zero()) entries.push_back({2, 2, i, j, 0, gram(i, j)});
    }
    return GradedAlgebra(1, {1, 0, static_cast<long>(b2), 0, 1}, entries);
}

GradedAlgebra GradedAlgebra::k3(const Matrix& gram) {
    if (gram.rows() != 22 || gram.cols() != 22)
        throw PreconditionError("k3: Gram matrix must be 22x22");
    return surface(gram);
}

std::size_t GradedAlgebra::offset(long d) const {
    if (!degree_ok(d)) throw DimensionError("offset: degree out of range");
    return offset_[static_cast<std::size_t>(d)];
}

const Scalar& GradedAlgebra::cup_coeff(long d, long dprime, std::size_t i, std::size_t j,
                                       std::size_t k) const {
    auto it = cup_.find({d, dprime});
    if (it == cup_.end()) return zero_;
    const std::size_t bj = static_cast<std::size_t>(betti_[static_cast<std::size_t>(dprime)]);
    const std::size_t bk = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d + dprime)]);
    return it->second[(i * bj + j) * bk + k];
}

CohomologyClass GradedAlgebra::unit() const {
    return basis_class(0, 0);
}

CohomologyClass GradedAlgebra::point_class() const {
    return basis_class(top_degree(), 0);
}

CohomologyClass GradedAlgebra::basis_class(long degree, std::size_t index) const {
    if (!degree_ok(degree)) throw DimensionError("basis_class: degree out of range");
    Vec coords(static_cast<std::size_t>(betti_[static_cast<std::size_t>(degree)]));
    if (index >= coords.size()) throw DimensionError("basis_class: index out of range");
    coords[index] = Scalar(1);
    return CohomologyClass{degree, std::move(coords)};
}

CohomologyClass GradedAlgebra::cup(const CohomologyClass& a, const CohomologyClass& b) const {
    const long d = a.degree, dp = b.degree;
    const long dout = d + dp;
    if (!degree_ok(d) || !degree_ok(dp))
        throw DimensionError("cup: degree out of range");
    if (dout > top_degree()) return CohomologyClass{dout, {}};
    CohomologyClass out{dout, Vec(static_cast<std::size_t>(betti_[static_cast<std::size_t>(dout)]))};
    auto it = cup_.find({d, dp});
    if (it == cup_.end()) return out;
    const std::size_t bj = static_cast<std::size_t>(betti_[static_cast<std::size_t>(dp)]);
    const std::size_t bk = out.coords.size();
    const Vec& table = it->second;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < bj; ++j) {
            if (b.coords[j].is_zero()) continue;
            const Scalar f = a.coords[i] * b.coords[j];
            const std::size_t base = (i * bj + j) * bk;
            for (std::size_t k = 0; k < bk; ++k)
                if (!table[base + k].is_zero()) out.coords[k] += f * table[base + k];
        }
    }
    return out;
}

Matrix GradedAlgebra::cup_operator(const CohomologyClass& a) const {
    Matrix m(total_, total_);
    for (long d = 0; d <= top_degree(); ++d) {
        const long dout = d + a.degree;
        if (dout > top_degree()) continue;
        const std::size_t bd = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d)]);
        for (std::size_t j = 0; j < bd; ++j) {
            CohomologyClass img = cup(a, basis_class(d, j));
            for (std::size_t k = 0; k < img.coords.size(); ++k)
                m(offset(dout) + k, offset(d) + j) = img.coords[k];
        }
    }
    return m;
}

Matrix GradedAlgebra::pairing_matrix(long d) const {
    const long dc = top_degree() - d;
    const std::size_t bd = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d)]);
    const std::size_t bc = static_cast<std::size_t>(betti_[static_cast<std::size_t>(dc)]);
    Matrix m(bd, bc);
    for (std::size_t i = 0; i < bd; ++i)
        for (std::size_t j = 0; j < bc; ++j) m(i, j) = cup_coeff(d, dc, i, j, 0);
    return m;
}

bool GradedAlgebra::poincare_check() const {
    for (long d = 0; d <= top_degree(); ++d) {
        const long dc = top_degree() - d;
        if (betti_[static_cast<std::size_t>(d)] != betti_[static_cast<std::size_t>(dc)]) return false;
        const Matrix m = pairing_matrix(d);
        if (rref(m).pivots.size() != m.rows()) return false;
    }
    return true;
}

Vec GradedAlgebra::embed(const CohomologyClass& a) const {
    Vec v(total_);
    const std::size_t base = offset(a.degree);
    for (std::size_t k = 0; k < a.coords.size(); ++k) v[base + k] = a.coords[k];
    return v;
}

Subspace GradedAlgebra::degree_subspace(long d) const {
    const std::size_t bd = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d)]);
    Matrix rows(bd, total_);
    for (std::size_t k = 0; k < bd; ++k) rows(k, offset(d) + k) = Scalar(1);
    return Subspace::from_rref(std::move(rows), total_);
}

std::vector<std::string> GradedAlgebra::validate() const {
    std::vector<std::string> violations;
    auto complain = [&](const std::string& msg) { violations.push_back(msg); };

    if (betti_.front() != 1) complain("dim H^0 = " + std::to_string(betti_.front()) + ", expected 1");
    if (betti_.back() != 1)
        complain("dim H^" + std::to_string(top_degree()) + " = " + std::to_string(betti_.back()) +
                 ", expected 1");
    if (!violations.empty()) return violations;

    // Unit acts as the identity on both sides.
    for (long d = 0; d <= top_degree(); ++d) {
        const std::size_t bd = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d)]);
        for (std::size_t j = 0; j < bd; ++j) {
            const CohomologyClass e = basis_class(d, j);
            if (cup(unit(), e).coords != e.coords)
                complain("unit does not act as identity on H^" + std::to_string(d) + " basis " +
                         std::to_string(j));
            if (cup(e, unit()).coords != e.coords)
                complain("unit does not act as identity (right) on H^" + std::to_string(d) +
                         " basis " + std::to_string(j));
        }
    }

    // Graded commutativity on all basis pairs.
    for (const auto& [degs, table] : cup_) {
        const auto [d, dp] = degs;
        if (d + dp > top_degree()) continue;
        const std::size_t bi = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d)]);
        const std::size_t bj = static_cast<std::size_t>(betti_[static_cast<std::size_t>(dp)]);
        const std::size_t bk = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d + dp)]);
        const Scalar sgn_factor = (d % 2 != 0 && dp % 2 != 0) ? Scalar(-1) : Scalar(1);
        for (std::size_t i = 0; i < bi; ++i)
            for (std::size_t j = 0; j < bj; ++j)
                for (std::size_t k = 0; k < bk; ++k) {
                    const Scalar& lhs = table[(i * bj + j) * bk + k];
                    const Scalar rhs = sgn_factor * cup_coeff(dp, d, j, i, k);
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "graded commutativity fails at degrees (" << d << "," << dp
                           << ") basis pair (" << i << "," << j << ") output " << k;
                        complain(os.str());
                    }
                }
    }

    // Associativity on all basis triples whose total degree is in range.
    for (long d1 = 0; d1 <= top_degree(); ++d1)
        for (long d2 = 0; d2 + d1 <= top_degree(); ++d2)
            for (long d3 = 0; d1 + d2 + d3 <= top_degree(); ++d3) {
                const std::size_t b1 = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d1)]);
                const std::size_t b2 = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d2)]);
                const std::size_t b3 = static_cast<std::size_t>(betti_[static_cast<std::size_t>(d3)]);
                for (std::size_t i = 0; i < b1; ++i)
                    for (std::size_t j = 0; j < b2; ++j) {
                        const CohomologyClass ab = cup(basis_class(d1, i), basis_class(d2, j));
                        for (std::size_t k = 0; k < b3; ++k) {
                            const CohomologyClass lhs = cup(ab, basis_class(d3, k));
                            const CohomologyClass rhs =
                                cup(basis_class(d1, i), cup(basis_class(d2, j), basis_class(d3, k)));
                            if (lhs.coords != rhs.coords) {
                                std::ostringstream os;
                                os << "associativity fails at degrees (" << d1 << "," << d2 << ","
                                   << d3 << ") basis triple (" << i << "," << j << "," << k << ")";
                                complain(os.str());
                            }
                        }
                    }
            }

    // Poincare nondegeneracy in every complementary degree pair.
    for (long d = 0; d <= top_degree(); ++d) {
        const long dc = top_degree() - d;
        if (betti_[static_cast<std::size_t>(d)] != betti_[static_cast<std::size_t>(dc)]) {
            complain("Poincare pairing degenerate: dim H^" + std::to_string(d) +
                     " != dim H^" + std::to_string(dc));
            continue;
        }
        const Matrix m = pairing_matrix(d);
        if (rref(m).pivots.size() != m.rows())
            complain("Poincare pairing degenerate in degree " + std::to_string(d));
    }

    return violations;
}

} // namespace pwv
