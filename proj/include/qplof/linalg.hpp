#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qplof/errors.hpp"
#include "qplof/scalar.hpp"

namespace qplof {

using Index = Eigen::Index;

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
bool is_zero_vector(const VecX<S>& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (sign(v(i)) != 0) return false;
    return true;
}

template <class S>
bool lex_less(const VecX<S>& a, const VecX<S>& b) {
    for (Index i = 0; i < a.size() && i < b.size(); ++i) {
        int s = sign(a(i) - b(i));
        if (s != 0) return s < 0;
    }
    return a.size() < b.size();
}

/// Exact description of {x : Ax = b}. If consistent, `particular` solves the
/// system and `nullspace` is a basis of ker A.
template <class S>
struct LinearSolutionSet {
    bool consistent = false;
    VecX<S> particular;
    std::vector<VecX<S>> nullspace;
};

/// Reduced row echelon form via exact elimination. Pivots are chosen as the
/// first nonzero entry in column order, so results are deterministic.
template <class S>
LinearSolutionSet<S> gaussian_solve(const MatX<S>& A, const VecX<S>& b) {
    const Index m = A.rows();
    const Index n = A.cols();
    if (b.size() != m) throw DimensionMismatch("gaussian_solve rhs length");

    MatX<S> R(m, n + 1);
    if (n > 0) R.leftCols(n) = A;
    R.col(n) = b;

    std::vector<std::pair<Index, Index>> pivots; // (row, col)
    Index rank = 0;
    for (Index col = 0; col < n && rank < m; ++col) {
        Index pr = -1;
        for (Index r = rank; r < m; ++r)
            if (sign(R(r, col)) != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != rank) R.row(rank).swap(R.row(pr));
        S inv = S(1) / R(rank, col);
        for (Index j = col; j <= n; ++j) R(rank, j) = R(rank, j) * inv;
        for (Index r = 0; r < m; ++r) {
            if (r == rank || sign(R(r, col)) == 0) continue;
            S f = R(r, col);
            for (Index j = col; j <= n; ++j) R(r, j) = R(r, j) - f * R(rank, j);
        }
        pivots.emplace_back(rank, col);
        ++rank;
    }

    LinearSolutionSet<S> out;
    for (Index r = rank; r < m; ++r)
        if (sign(R(r, n)) != 0) return out; // inconsistent

    out.consistent = true;
    out.particular = VecX<S>::Zero(n);
    for (auto [r, c] : pivots) out.particular(c) = R(r, n);

    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto [r, c] : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        VecX<S> w = VecX<S>::Zero(n);
        w(f) = S(1);
        for (auto [r, c] : pivots) w(c) = -R(r, f);
        out.nullspace.push_back(std::move(w));
    }
    return out;
}

template <class S>
MatX<S> invert(const MatX<S>& M) {
    const Index n = M.rows();
    if (M.cols() != n) throw DimensionMismatch("invert expects a square matrix");
    MatX<S> R(n, 2 * n);
    R.leftCols(n) = M;
    R.rightCols(n) = MatX<S>::Identity(n, n);
    for (Index col = 0; col < n; ++col) {
        Index pr = -1;
        for (Index r = col; r < n; ++r)
            if (sign(R(r, col)) != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw SingularMatrix();
        if (pr != col) R.row(col).swap(R.row(pr));
        S inv = S(1) / R(col, col);
        for (Index j = col; j < 2 * n; ++j) R(col, j) = R(col, j) * inv;
        for (Index r = 0; r < n; ++r) {
            if (r == col || sign(R(r, col)) == 0) continue;
            S f = R(r, col);
            for (Index j = col; j < 2 * n; ++j) R(r, j) = R(r, j) - f * R(col, j);
        }
    }
    return R.rightCols(n);
}

/// Congruence diagonalization Q = S^T diag(lambda) S over any field of
/// characteristic != 2 (Lagrange reduction; no eigenvalues involved).
template <class S>
struct Diagonalization {
    MatX<S> transform;         // S
    MatX<S> transform_inverse; // S^{-1}
    VecX<S> lambda;            // diagonal entries
};

template <class S>
Diagonalization<S> lagrange_diagonalize(const MatX<S>& Q) {
    const Index n = Q.rows();
    if (Q.cols() != n) throw NonSymmetric();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (Q(i, j) != Q(j, i)) throw NonSymmetric();

    // Maintain W = L Q L^T with row/column operations mirrored; then
    // S^{-1} = L^T gives Q = S^T diag(W) S.
    MatX<S> W = Q;
    MatX<S> L = MatX<S>::Identity(n, n);
    auto add_row_col = [&](Index dst, Index src, const S& f) {
        W.row(dst) += f * W.row(src);
        W.col(dst) += f * W.col(src);
        L.row(dst) += f * L.row(src);
    };
    for (Index k = 0; k < n; ++k) {
        if (sign(W(k, k)) == 0) {
            Index j = -1;
            for (Index cand = k + 1; cand < n; ++cand)
                if (sign(W(k, cand)) != 0) {
                    j = cand;
                    break;
                }
            if (j < 0) continue; // whole trailing row is zero
            // One of the two symmetric combinations must give a nonzero pivot.
            S pivot_plus = W(k, k) + S(2) * W(k, j) + W(j, j);
            add_row_col(k, j, sign(pivot_plus) != 0 ? S(1) : S(-1));
        }
        for (Index i = k + 1; i < n; ++i) {
            if (sign(W(i, k)) == 0) continue;
            add_row_col(i, k, -(W(i, k) / W(k, k)));
        }
    }

    Diagonalization<S> out;
    out.lambda = W.diagonal();
    out.transform_inverse = L.transpose();
    out.transform = invert(out.transform_inverse);
    return out;
}

} // namespace qplof
