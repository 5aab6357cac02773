#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qplof/polyhedron.hpp"
#include "qplof/quadratic.hpp"

namespace qplof {

enum class Status { Infeasible, Unbounded, Optimal };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Infeasible: return "Infeasible";
        case Status::Unbounded: return "Unbounded";
        case Status::Optimal: return "Optimal";
    }
    return "?";
}

/// Witness for unboundedness: x0 feasible, A d <= 0, and f strictly
/// decreasing along x0 + t d (negative quadratic coefficient, or zero
/// quadratic and negative linear coefficient).
template <class S>
struct RayCertificate {
    VecX<S> x0;
    VecX<S> d;
};

struct SolveStats {
    std::uint64_t subproblems = 0;
    Index max_depth = 0;
};

template <class S>
struct SolveResult {
    Status status = Status::Infeasible;
    S value{};      // meaningful for Optimal only
    VecX<S> point;  // Optimal only
    std::optional<RayCertificate<S>> ray; // Unbounded only
    SolveStats stats;

    static SolveResult infeasible() { return SolveResult{}; }
    static SolveResult unbounded(RayCertificate<S> cert) {
        SolveResult r;
        r.status = Status::Unbounded;
        r.ray = std::move(cert);
        return r;
    }
    static SolveResult optimal(S value, VecX<S> point) {
        SolveResult r;
        r.status = Status::Optimal;
        r.value = std::move(value);
        r.point = std::move(point);
        return r;
    }
};

/// Coefficients of phi(t) = f(x0 + t d) = alpha t^2 + beta t + phi0.
template <class S>
std::pair<S, S> ray_coefficients(const QuadraticFunction<S>& f, const VecX<S>& x0,
                                 const VecX<S>& d) {
    S alpha = S(0), beta = S(0);
    for (Index i = 0; i < f.dim(); ++i) {
        S qd = S(0);
        for (Index j = 0; j < f.dim(); ++j) qd += f.Q(i, j) * d(j);
        alpha += d(i) * qd;
        beta += S(2) * x0(i) * qd + f.c(i) * d(i);
    }
    return {alpha, beta};
}

template <class S>
bool verify_ray(const Polyhedron<S>& P, const QuadraticFunction<S>& f,
                const RayCertificate<S>& cert) {
    if (cert.x0.size() != P.dim() || cert.d.size() != P.dim()) return false;
    if (!P.contains(cert.x0)) return false;
    for (Index i = 0; i < P.num_rows(); ++i) {
        S ad = S(0);
        for (Index j = 0; j < P.dim(); ++j) ad += P.A(i, j) * cert.d(j);
        if (sign(ad) > 0) return false;
    }
    auto [alpha, beta] = ray_coefficients(f, cert.x0, cert.d);
    return sign(alpha) < 0 || (sign(alpha) == 0 && sign(beta) < 0);
}

template <class S>
bool verify_optimal(const Polyhedron<S>& P, const QuadraticFunction<S>& f,
                    const SolveResult<S>& result) {
    if (result.status != Status::Optimal) return false;
    if (result.point.size() != P.dim()) return false;
    if (!P.contains(result.point)) return false;
    return sign(evaluate(f, result.point) - result.value) == 0;
}

/// Base case: minimize a x^2 + l x + gamma over the interval described by a
/// preprocessed one-variable system.
template <class S>
SolveResult<S> solve_univariate(const Polyhedron<S>& P, const QuadraticFunction<S>& f) {
    if (P.dim() != 1 || f.dim() != 1) throw DimensionMismatch("univariate solver");
    const S a = f.Q(0, 0);
    const S l = f.c(0);

    std::optional<S> lower, upper;
    for (Index i = 0; i < P.num_rows(); ++i) {
        S ratio = P.b(i) / P.A(i, 0);
        if (sign(P.A(i, 0)) > 0) {
            if (!upper || ratio < *upper) upper = ratio;
        } else {
            if (!lower || ratio > *lower) lower = ratio;
        }
    }
    if (lower && upper && *lower > *upper) return SolveResult<S>::infeasible();

    auto point = [](const S& x) {
        VecX<S> p(1);
        p(0) = x;
        return p;
    };
    auto at = [&](const S& x) { return SolveResult<S>::optimal(evaluate(f, point(x)), point(x)); };
    S anchor = lower ? *lower : (upper ? *upper : S(0));
    auto ray = [&](int dir) {
        RayCertificate<S> cert;
        cert.x0 = point(anchor);
        cert.d = point(S(dir));
        return SolveResult<S>::unbounded(std::move(cert));
    };

    if (sign(a) > 0) {
        S vertex = -(l / (S(2) * a));
        if (lower && vertex < *lower) vertex = *lower;
        if (upper && vertex > *upper) vertex = *upper;
        return at(vertex);
    }
    if (sign(a) < 0) {
        if (!lower) return ray(-1);
        if (!upper) return ray(+1);
        S fl = evaluate(f, point(*lower));
        S fu = evaluate(f, point(*upper));
        return fu < fl ? at(*upper) : at(*lower);
    }
    if (sign(l) > 0) return lower ? at(*lower) : ray(-1);
    if (sign(l) < 0) return upper ? at(*upper) : ray(+1);
    return at(anchor);
}

/// Step-3 shortcut: with the problem in decoupled y-coordinates, the origin
/// is the unconstrained minimizer when the form is convex with no linear
/// term, and it is feasible when the transformed rhs is nonnegative.
template <class S>
bool global_check(const VecX<S>& lambda, const VecX<S>& u, const VecX<S>& b_y) {
    for (Index i = 0; i < lambda.size(); ++i)
        if (sign(lambda(i)) < 0) return false;
    for (Index i = 0; i < u.size(); ++i)
        if (sign(u(i)) != 0) return false;
    for (Index i = 0; i < b_y.size(); ++i)
        if (sign(b_y(i)) < 0) return false;
    return true;
}

namespace detail {

template <class S>
SolveResult<S> min_qp_lof_impl(const Polyhedron<S>& P_in, const QuadraticFunction<S>& f,
                               Index depth, SolveStats& stats) {
    ++stats.subproblems;
    if (depth > stats.max_depth) stats.max_depth = depth;

    // Step 0
    auto pre = preprocess_zero_rows(P_in);
    if (!pre) return SolveResult<S>::infeasible();
    const Polyhedron<S>& P = *pre;
    const Index n = P.dim();

    // Step 1
    if (n == 1) return solve_univariate(P, f);

    // Step 2
    DecoupledForm<S> d = align_linear_term(decouple(f));
    DecoupledProblem<S> yp = change_coordinates(P, d);

    // Step 3
    if (global_check(d.lambda, d.u, yp.P.b))
        return SolveResult<S>::optimal(d.gamma_p, d.v);

    // Step 4
    struct Candidate {
        S value;
        VecX<S> point; // original x-coordinates
    };
    std::vector<Candidate> candidates;
    const std::uint64_t orthant_count = std::uint64_t{1} << n;
    for (std::uint64_t ord = 0; ord < orthant_count; ++ord) {
        Polyhedron<S> Ph = orthant_restrict(yp.P, OrthantSign::from_ordinal(n, ord));
        for (Index k = 0; k < Ph.num_rows(); ++k) {
            VecX<S> normal = Ph.A.row(k).transpose();
            AffineMap<S> map = hyperplane_parameterize(normal, Ph.b(k));
            QuadraticFunction<S> f_sub = substitute_into_function(yp.f, map);
            Polyhedron<S> P_sub = substitute_into_polyhedron(Ph, map, k);
            SolveResult<S> sub = min_qp_lof_impl(P_sub, f_sub, depth + 1, stats);
            if (sub.status == Status::Unbounded) {
                VecX<S> y0 = map.apply(sub.ray->x0);
                VecX<S> dy = map.M * sub.ray->d;
                RayCertificate<S> cert;
                cert.x0 = d.transform_inverse * y0 + d.v;
                cert.d = d.transform_inverse * dy;
                return SolveResult<S>::unbounded(std::move(cert));
            }
            if (sub.status == Status::Optimal) {
                VecX<S> y_star = map.apply(sub.point);
                candidates.push_back(
                    Candidate{sub.value, d.transform_inverse * y_star + d.v});
            }
        }
    }

    // Step 5
    if (candidates.empty()) return SolveResult<S>::infeasible();
    const Candidate* best = &candidates.front();
    for (const Candidate& cand : candidates) {
        int cmp = sign(cand.value - best->value);
        if (cmp < 0 || (cmp == 0 && lex_less(cand.point, best->point))) best = &cand;
    }
    return SolveResult<S>::optimal(best->value, best->point);
}

} // namespace detail

/// The full decision procedure: Infeasible, Unbounded (with a verifiable
/// ray), or Optimal with an exact minimizer. Deterministic: orthants in
/// lexicographic order, rows by index, ties broken by the lexicographically
/// smallest point.
template <class S>
SolveResult<S> min_qp_lof(const Polyhedron<S>& P, const QuadraticFunction<S>& f) {
    if (P.dim() != f.dim()) throw DimensionMismatch("polyhedron vs objective");

    SolveStats stats;
    if (P.dim() == 0) {
        // Degenerate zero-variable input: a pure feasibility check on 0 <= b.
        ++stats.subproblems;
        stats.max_depth = 1;
        SolveResult<S> r;
        for (Index i = 0; i < P.num_rows(); ++i)
            if (sign(P.b(i)) < 0) {
                r.stats = stats;
                return r;
            }
        r = SolveResult<S>::optimal(f.gamma, VecX<S>(0));
        r.stats = stats;
        return r;
    }

    SolveResult<S> result = detail::min_qp_lof_impl(P, f, 1, stats);
    result.stats = stats;
    return result;
}

} // namespace qplof
