#pragma once

#include <optional>
#include <vector>

#include "qplof/linalg.hpp"

namespace qplof {

/// P = {x : Ax <= b}. A `raw` system may still contain zero rows; the
/// zero-row preprocessing pass establishes the nonzero-row convention.
template <class S>
struct Polyhedron {
    MatX<S> A;
    VecX<S> b;
    bool raw = true;

    Polyhedron() = default;
    Polyhedron(MatX<S> A_, VecX<S> b_, bool raw_ = true)
        : A(std::move(A_)), b(std::move(b_)), raw(raw_) {
        if (b.size() != A.rows()) throw DimensionMismatch("polyhedron rhs length");
    }

    static Polyhedron whole_space(Index n) {
        return Polyhedron(MatX<S>(0, n), VecX<S>(0), false);
    }

    Index num_rows() const { return A.rows(); }
    Index dim() const { return A.cols(); }

    bool contains(const VecX<S>& x) const {
        if (x.size() != dim()) throw DimensionMismatch("point dimension");
        for (Index i = 0; i < A.rows(); ++i) {
            S lhs = S(0);
            for (Index j = 0; j < A.cols(); ++j) lhs += A(i, j) * x(j);
            if (sign(lhs - b(i)) > 0) return false;
        }
        return true;
    }
};

/// Affine parameterization y = Mz + p.
template <class S>
struct AffineMap {
    MatX<S> M;
    VecX<S> p;

    VecX<S> apply(const VecX<S>& z) const { return M * z + p; }
};

/// Entries restricted to +-1; orthant h is {y : h_i y_i <= 0}.
struct OrthantSign {
    std::vector<int> h;

    explicit OrthantSign(std::vector<int> signs) : h(std::move(signs)) {
        for (int s : h)
            if (s != 1 && s != -1) throw Error("orthant sign entries must be +-1");
    }

    /// Orthants in lexicographic order with -1 before +1.
    static OrthantSign from_ordinal(Index n, std::uint64_t ordinal) {
        std::vector<int> signs(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i)
            signs[static_cast<std::size_t>(i)] =
                (ordinal >> (n - 1 - i)) & 1 ? 1 : -1;
        return OrthantSign(std::move(signs));
    }
};

/// Step-0 pass: a zero row with negative rhs proves emptiness, all other
/// zero rows are trivially true and dropped. Empty result means infeasible.
template <class S>
std::optional<Polyhedron<S>> preprocess_zero_rows(const Polyhedron<S>& P) {
    std::vector<Index> keep;
    for (Index i = 0; i < P.num_rows(); ++i) {
        bool zero = true;
        for (Index j = 0; j < P.dim(); ++j)
            if (sign(P.A(i, j)) != 0) {
                zero = false;
                break;
            }
        if (!zero) {
            keep.push_back(i);
        } else if (sign(P.b(i)) < 0) {
            return std::nullopt;
        }
    }
    Polyhedron<S> out;
    out.A.resize(static_cast<Index>(keep.size()), P.dim());
    out.b.resize(static_cast<Index>(keep.size()));
    for (Index r = 0; r < static_cast<Index>(keep.size()); ++r) {
        out.A.row(r) = P.A.row(keep[static_cast<std::size_t>(r)]);
        out.b(r) = P.b(keep[static_cast<std::size_t>(r)]);
    }
    out.raw = false;
    return out;
}

/// Appends the rows h_i y_i <= 0; the union over all 2^n signs covers P.
template <class S>
Polyhedron<S> orthant_restrict(const Polyhedron<S>& P, const OrthantSign& h) {
    const Index n = P.dim();
    if (static_cast<Index>(h.h.size()) != n)
        throw DimensionMismatch("orthant sign length");
    Polyhedron<S> out;
    out.A = MatX<S>::Zero(P.num_rows() + n, n);
    out.b = VecX<S>::Zero(P.num_rows() + n);
    out.A.topRows(P.num_rows()) = P.A;
    out.b.head(P.num_rows()) = P.b;
    for (Index i = 0; i < n; ++i)
        out.A(P.num_rows() + i, i) = S(h.h[static_cast<std::size_t>(i)]);
    out.raw = false;
    return out;
}

/// Deterministic parameterization of {y : a^T y = beta}: with j the first
/// nonzero index of a, p = (beta/a_j) e_j and the columns of M are
/// e_i - (a_i/a_j) e_j for i != j in increasing order.
template <class S>
AffineMap<S> hyperplane_parameterize(const VecX<S>& a, const S& beta) {
    const Index n = a.size();
    Index j = -1;
    for (Index i = 0; i < n; ++i)
        if (sign(a(i)) != 0) {
            j = i;
            break;
        }
    if (j < 0) throw ZeroNormalVector();
    AffineMap<S> map;
    map.p = VecX<S>::Zero(n);
    map.p(j) = beta / a(j);
    map.M = MatX<S>::Zero(n, n - 1);
    Index col = 0;
    for (Index i = 0; i < n; ++i) {
        if (i == j) continue;
        map.M(i, col) = S(1);
        map.M(j, col) = -(a(i) / a(j));
        ++col;
    }
    return map;
}

/// Substitute y = Mz + p into all constraints except `drop_row`, the row
/// whose equality defines the hyperplane. The result is raw: zero rows may
/// appear and are handled by the recursive call's preprocessing.
template <class S>
Polyhedron<S> substitute_into_polyhedron(const Polyhedron<S>& P, const AffineMap<S>& map,
                                         Index drop_row) {
    if (drop_row < 0 || drop_row >= P.num_rows()) throw Error("drop_row out of range");
    if (map.M.rows() != P.dim()) throw DimensionMismatch("affine map dimension");
    MatX<S> AM = P.A * map.M;
    VecX<S> rhs = P.b - P.A * map.p;
    Polyhedron<S> out;
    out.A.resize(P.num_rows() - 1, AM.cols());
    out.b.resize(P.num_rows() - 1);
    Index r = 0;
    for (Index i = 0; i < P.num_rows(); ++i) {
        if (i == drop_row) continue;
        out.A.row(r) = AM.row(i);
        out.b(r) = rhs(i);
        ++r;
    }
    out.raw = true;
    return out;
}

/// Row i is an implicit equality iff min a_i^T x over P equals b_i. The
/// check drives the supplied solver on a degenerate (Q = 0) instance per
/// row. Throws InfeasibleRegion when P is empty.
template <class S, class SolveFn>
std::vector<Index> detect_implicit_equalities(const Polyhedron<S>& P, SolveFn&& solve) {
    std::vector<Index> out;
    for (Index i = 0; i < P.num_rows(); ++i) {
        VecX<S> c = P.A.row(i).transpose();
        auto result = solve(P, MatX<S>::Zero(P.dim(), P.dim()).eval(), c, S(0));
        if (result.status == decltype(result.status)::Infeasible) throw InfeasibleRegion();
        if (result.status == decltype(result.status)::Optimal &&
            sign(result.value - P.b(i)) == 0)
            out.push_back(i);
    }
    return out;
}

} // namespace qplof
