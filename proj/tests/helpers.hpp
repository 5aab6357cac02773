#pragma once

#include <random>

#include "qplof/oracle.hpp"

namespace qplof::testing {

inline long draw_int(std::mt19937_64& rng, long lo, long hi) {
    return detail::rand_range(rng, lo, hi);
}

template <class S>
S draw_scalar(std::mt19937_64& rng, long lo, long hi) {
    return scalar_from_int<S>(draw_int(rng, lo, hi));
}

template <class S>
VecX<S> draw_vector(std::mt19937_64& rng, Index n, long bound) {
    VecX<S> v(n);
    for (Index i = 0; i < n; ++i) v(i) = draw_scalar<S>(rng, -bound, bound);
    return v;
}

template <class S>
MatX<S> draw_matrix(std::mt19937_64& rng, Index rows, Index cols, long bound) {
    MatX<S> M(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) M(i, j) = draw_scalar<S>(rng, -bound, bound);
    return M;
}

template <class S>
MatX<S> draw_symmetric(std::mt19937_64& rng, Index n, long bound) {
    MatX<S> Q(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) Q(i, j) = Q(j, i) = draw_scalar<S>(rng, -bound, bound);
    return Q;
}

/// Random unimodular matrix as a product of integer shears, so the inverse
/// stays exact and small.
template <class S>
MatX<S> draw_unimodular(std::mt19937_64& rng, Index n, int shears) {
    MatX<S> T = MatX<S>::Identity(n, n);
    for (int t = 0; t < shears; ++t) {
        Index i = static_cast<Index>(draw_int(rng, 0, n - 1));
        Index j = static_cast<Index>(draw_int(rng, 0, n - 1));
        if (i == j) continue;
        MatX<S> Sh = MatX<S>::Identity(n, n);
        Sh(i, j) = draw_scalar<S>(rng, -2, 2);
        T = T * Sh;
    }
    return T;
}

} // namespace qplof::testing
