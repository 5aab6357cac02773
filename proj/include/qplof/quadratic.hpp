#pragma once

#include <utility>
#include <vector>

#include "qplof/linalg.hpp"
#include "qplof/polyhedron.hpp"

namespace qplof {

/// f(x) = x^T Q x + c^T x + gamma, with Q symmetrized on construction.
template <class S>
struct QuadraticFunction {
    MatX<S> Q;
    VecX<S> c;
    S gamma;

    QuadraticFunction() : gamma(S(0)) {}
    QuadraticFunction(MatX<S> Q_, VecX<S> c_, S gamma_)
        : Q(std::move(Q_)), c(std::move(c_)), gamma(std::move(gamma_)) {
        if (Q.rows() != Q.cols()) throw DimensionMismatch("Q must be square");
        if (c.size() != Q.rows()) throw DimensionMismatch("c length vs Q");
        MatX<S> sym = Q + MatX<S>(Q.transpose());
        S half = S(1) / S(2);
        for (Index i = 0; i < Q.rows(); ++i)
            for (Index j = 0; j < Q.cols(); ++j) Q(i, j) = sym(i, j) * half;
    }

    Index dim() const { return Q.rows(); }

    static QuadraticFunction zero(Index n) {
        return QuadraticFunction(MatX<S>::Zero(n, n), VecX<S>::Zero(n), S(0));
    }
};

template <class S>
S evaluate(const QuadraticFunction<S>& f, const VecX<S>& x) {
    if (x.size() != f.dim()) throw DimensionMismatch("evaluate point dimension");
    S out = f.gamma;
    for (Index i = 0; i < f.dim(); ++i) {
        S row = S(0);
        for (Index j = 0; j < f.dim(); ++j) row += f.Q(i, j) * x(j);
        out += x(i) * row + f.c(i) * x(i);
    }
    return out;
}

/// f(x) = (x-v)^T S^T diag(lambda) S (x-v) + u^T S (x-v) + gamma', with the
/// decoupling condition lambda_i * u_i = 0 for every i.
template <class S>
struct DecoupledForm {
    MatX<S> transform;         // S
    MatX<S> transform_inverse; // S^{-1}
    VecX<S> lambda;
    VecX<S> v;
    VecX<S> u;
    S gamma_p;

    Index dim() const { return lambda.size(); }

    S evaluate_at(const VecX<S>& x) const {
        VecX<S> y = transform * (x - v);
        S out = gamma_p;
        for (Index i = 0; i < dim(); ++i) out += lambda(i) * y(i) * y(i) + u(i) * y(i);
        return out;
    }
};

/// Diagonalize Q and complete the square on the nonzero diagonal entries;
/// kernel components of the center are fixed to zero (minimal support).
template <class S>
DecoupledForm<S> decouple(const QuadraticFunction<S>& f) {
    auto diag = lagrange_diagonalize(f.Q);
    const Index n = f.dim();
    VecX<S> c_hat = diag.transform_inverse.transpose() * f.c;

    DecoupledForm<S> d;
    d.transform = std::move(diag.transform);
    d.transform_inverse = std::move(diag.transform_inverse);
    d.lambda = std::move(diag.lambda);
    d.u = VecX<S>::Zero(n);
    VecX<S> v_prime = VecX<S>::Zero(n);
    d.gamma_p = f.gamma;
    S quarter = S(1) / S(4);
    for (Index i = 0; i < n; ++i) {
        if (sign(d.lambda(i)) != 0) {
            v_prime(i) = -(c_hat(i) / (S(2) * d.lambda(i)));
            d.gamma_p -= quarter * c_hat(i) * c_hat(i) / d.lambda(i);
        } else {
            d.u(i) = c_hat(i);
        }
    }
    d.v = d.transform_inverse * v_prime;
    return d;
}

/// Compose the transform with a change of basis on ker(lambda) so that u
/// keeps at most one nonzero entry (at the first kernel index). lambda, v
/// and gamma' are untouched; the reconstruction identity is preserved.
template <class S>
DecoupledForm<S> align_linear_term(const DecoupledForm<S>& d) {
    const Index n = d.dim();
    std::vector<Index> kernel;
    Index support = 0;
    for (Index i = 0; i < n; ++i) {
        if (sign(d.lambda(i)) == 0) kernel.push_back(i);
        if (sign(d.u(i)) != 0) ++support;
    }
    if (support <= 1) return d;

    const Index k = static_cast<Index>(kernel.size());
    VecX<S> u_k(k);
    for (Index i = 0; i < k; ++i) u_k(i) = d.u(kernel[static_cast<std::size_t>(i)]);

    // Greedily extend u restricted to the kernel to a kernel basis; the
    // columns become B with u_k in the leading slot.
    MatX<S> B(k, k);
    B.col(0) = u_k;
    Index cols = 1;
    for (Index cand = 0; cand < k && cols < k; ++cand) {
        MatX<S> trial(k, cols + 1);
        trial.leftCols(cols) = B.leftCols(cols);
        trial.col(cols) = VecX<S>::Zero(k);
        trial(cand, cols) = S(1);
        if (gaussian_solve(trial, VecX<S>::Zero(k).eval()).nullspace.empty()) {
            B.col(cols) = trial.col(cols);
            ++cols;
        }
    }

    // R is the identity off the kernel block and B^T on it, so R^T Lambda R
    // = Lambda and R^{-T} u = e_{k0}.
    MatX<S> R = MatX<S>::Identity(n, n);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            R(kernel[static_cast<std::size_t>(i)], kernel[static_cast<std::size_t>(j)]) =
                B(j, i);

    DecoupledForm<S> out = d;
    out.transform = R * d.transform;
    out.transform_inverse = d.transform_inverse * invert(R);
    out.u = VecX<S>::Zero(n);
    out.u(kernel.front()) = S(1);
    return out;
}

/// f'(z) = f(Mz + p), exactly.
template <class S>
QuadraticFunction<S> substitute_into_function(const QuadraticFunction<S>& f,
                                              const AffineMap<S>& map) {
    if (map.M.rows() != f.dim()) throw DimensionMismatch("affine map vs function");
    MatX<S> Qp = map.M.transpose() * f.Q * map.M;
    VecX<S> cp = S(2) * (map.M.transpose() * (f.Q * map.p)) + map.M.transpose() * f.c;
    S gp = (map.p.transpose() * (f.Q * map.p))(0, 0) + (f.c.transpose() * map.p)(0, 0) +
           f.gamma;
    return QuadraticFunction<S>(std::move(Qp), std::move(cp), std::move(gp));
}

/// The pair (P, f) re-expressed in the coordinates y = S(x - v): the
/// objective becomes y^T diag(lambda) y + u^T y + gamma' and the polyhedron
/// (A S^{-1}, b - A v). Objective values are preserved pointwise.
template <class S>
struct DecoupledProblem {
    Polyhedron<S> P;
    QuadraticFunction<S> f;
};

template <class S>
DecoupledProblem<S> change_coordinates(const Polyhedron<S>& P, const DecoupledForm<S>& d) {
    if (P.dim() != d.dim()) throw DimensionMismatch("polyhedron vs decoupled form");
    DecoupledProblem<S> out;
    out.P = Polyhedron<S>(P.A * d.transform_inverse, P.b - P.A * d.v, P.raw);
    MatX<S> Q = MatX<S>::Zero(d.dim(), d.dim());
    Q.diagonal() = d.lambda;
    out.f = QuadraticFunction<S>(std::move(Q), d.u, d.gamma_p);
    return out;
}

} // namespace qplof
