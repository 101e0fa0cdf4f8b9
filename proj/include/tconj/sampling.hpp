// Seeded random ring elements and matrices for property checks. Everything
// here is a pure function of the Rng state, so identical seeds reproduce
// identical samples on every platform.
#pragma once

#include <type_traits>

#include "tconj/matrix.hpp"
#include "tconj/rings.hpp"
#include "tconj/rng.hpp"

namespace tconj {

template <typename R>
struct is_polynomial_ring : std::false_type {};
template <typename B>
struct is_polynomial_ring<PolynomialRing<B>> : std::true_type {};

// Uniform-ish element with height <= bound (coefficients for polynomials,
// both components for Gaussian integers, the residue itself over F_p).
template <Ring R>
typename R::Element random_element(const R& ring, Rng& rng, long long bound,
                                   long max_poly_degree = 3) {
    if constexpr (std::is_same_v<R, PrimeField>) {
        return ring.element_at(rng.below(ring.size()));
    } else if constexpr (std::is_same_v<R, GaussianRing>) {
        return ring.make(Integer(rng.range(-bound, bound)), Integer(rng.range(-bound, bound)));
    } else if constexpr (is_polynomial_ring<R>::value) {
        typename R::Element f;
        long deg = static_cast<long>(rng.below(static_cast<uint64_t>(max_poly_degree) + 1));
        for (long k = 0; k <= deg; ++k)
            f.c.push_back(random_element(ring.base(), rng, bound, 0));
        return poly_trim(ring.base(), std::move(f));
    } else {
        return ring.from_int(rng.range(-bound, bound));
    }
}

template <Ring R>
Matrix<R> random_matrix(const R& ring, size_t rows, size_t cols, Rng& rng, long long bound,
                        long max_poly_degree = 3) {
    Matrix<R> m(ring, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            m.at(i, j) = random_element(ring, rng, bound, max_poly_degree);
    return m;
}

// Over a finite field: rejection-sample until the determinant is nonzero.
template <FiniteRing R>
Matrix<R> random_invertible(const R& ring, size_t n, Rng& rng) {
    while (true) {
        Matrix<R> m = random_matrix(ring, n, n, rng, 0);
        if (ring.is_unit(m.det())) return m;
    }
}

// Over any ring: a product of elementary transvections and a unit diagonal,
// so the determinant is a unit by construction.
template <Ring R>
Matrix<R> random_unimodular(const R& ring, size_t n, Rng& rng, int factors = 6,
                            long long entry_bound = 2) {
    Matrix<R> m = Matrix<R>::identity(ring, n);
    for (int f = 0; f < factors; ++f) {
        size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        Matrix<R> e = Matrix<R>::identity(ring, n);
        e.at(i, j) = random_element(ring, rng, entry_bound, 1);
        m = m * e;
    }
    // a unit diagonal so sampled determinants cover more than det = 1
    Matrix<R> units = Matrix<R>::identity(ring, n);
    for (size_t k = 0; k < n; ++k) {
        if constexpr (std::is_same_v<R, GaussianRing>) {
            const GaussianInt table[4] = {{Integer(1), Integer(0)},
                                          {Integer(-1), Integer(0)},
                                          {Integer(0), Integer(1)},
                                          {Integer(0), Integer(-1)}};
            units.at(k, k) = table[rng.below(4)];
        } else {
            units.at(k, k) = ring.from_int(rng.coin() ? 1 : -1);
        }
    }
    return m * units;
}

// Largest |component| over all entries; the rejection bound used when a
// sampled unimodular matrix must stay within a coefficient box.
inline Integer gaussian_matrix_height(const Matrix<GaussianRing>& m) {
    Integer h(0);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const auto& e = m.at(i, j);
            if (e.re.abs() > h) h = e.re.abs();
            if (e.im.abs() > h) h = e.im.abs();
        }
    return h;
}

inline Matrix<GaussianRing> random_gaussian_unimodular_bounded(const GaussianRing& ring, size_t n,
                                                               Rng& rng, long long height) {
    while (true) {
        Matrix<GaussianRing> m = random_unimodular(ring, n, rng, 4, 1);
        if (gaussian_matrix_height(m) <= Integer(height)) return m;
    }
}

// Integer-entried unimodular matrices (delta-fixed cores for the orbit
// identities).
inline Matrix<GaussianRing> random_integer_unimodular_bounded(const GaussianRing& ring, size_t n,
                                                              Rng& rng, long long height) {
    while (true) {
        Matrix<GaussianRing> m = Matrix<GaussianRing>::identity(ring, n);
        for (int f = 0; f < 4; ++f) {
            size_t i = rng.below(n), j = rng.below(n);
            if (i == j) continue;
            Matrix<GaussianRing> e = Matrix<GaussianRing>::identity(ring, n);
            e.at(i, j) = ring.from_int(rng.range(-1, 1));
            m = m * e;
        }
        if (gaussian_matrix_height(m) <= Integer(height)) return m;
    }
}

} // namespace tconj
