#pragma once

#include "pwv/document.hpp"
#include "pwv/matrix.hpp"

#include <random>
#include <vector>

namespace pwvtest {

inline pwv::Scalar sc(long num, long den = 1) {
    return pwv::Scalar(pwv::rational_of(num, den));
}

inline pwv::Scalar im(long num, long den = 1) {
    return pwv::Scalar(pwv::rational_of(0), pwv::rational_of(num, den));
}

inline pwv::Vec vec(const std::vector<long>& entries) {
    pwv::Vec out;
    for (long e : entries) out.push_back(sc(e));
    return out;
}

inline pwv::Matrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<pwv::Vec> converted;
    for (const auto& r : rows) converted.push_back(vec(r));
    return pwv::Matrix::from_rows(converted);
}

inline pwv::Scalar random_rational(std::mt19937& rng, long bound = 4) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 3);
    return pwv::Scalar(pwv::rational_of(num(rng), den(rng)));
}

inline pwv::Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                                 long bound = 4) {
    pwv::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, bound);
    return m;
}

/// Invertible by construction: product of elementary operations on I.
inline pwv::Matrix random_invertible(std::mt19937& rng, std::size_t n) {
    pwv::Matrix m = pwv::Matrix::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coeff(-3, 3);
    for (std::size_t step = 0; step < 4 * n; ++step) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const pwv::Scalar c = sc(coeff(rng));
        for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    return m;
}

inline pwv::Matrix random_permutation(std::mt19937& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng);
    pwv::Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(perm[k], k) = sc(1);
    return m;
}

/// Small surface-type document with b_2 = 4 and Gram U + <1> + <1>:
/// signature (3, 1), beta the first isotropic vector, eta the second.
/// Cheap enough for every pipeline path.
inline pwv::ManifoldDocument mini_document() {
    pwv::ManifoldDocument doc;
    doc.name = "mini-surface";
    doc.n = 1;
    doc.betti = {1, 0, 4, 0, 1};
    doc.bbf_gram = mat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    doc.cup.push_back({0, 0, 0, 0, 0, sc(1)});
    doc.cup.push_back({0, 4, 0, 0, 0, sc(1)});
    doc.cup.push_back({4, 0, 0, 0, 0, sc(1)});
    for (std::size_t i = 0; i < 4; ++i) {
        doc.cup.push_back({0, 2, 0, i, i, sc(1)});
        doc.cup.push_back({2, 0, i, 0, i, sc(1)});
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (!doc.bbf_gram(i, j).is_zero()) doc.cup.push_back({2, 2, i, j, 0, doc.bbf_gram(i, j)});
    doc.beta = vec({1, 0, 0, 0});
    doc.eta = vec({0, 1, 0, 0});
    // q(rho) = 2 q(eta, beta), the normalization of the so(5) dictionary
    doc.rho = vec({0, 0, 1, 1});
    doc.hodge_rows = {{1}, {0, 0}, {1, 2, 1}, {0, 0, 0, 0}, {0, 0, 1, 0, 0}};
    return doc;
}

} // namespace pwvtest
