#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qplof/instance.hpp"
#include "qplof/solver.hpp"

namespace qplof {

/// Desk-scale bounds for the exhaustive oracles. Fourier-Motzkin and subset
/// enumeration double with every variable or row, so the defaults are small.
struct ScaleLimits {
    Index max_vars = 5;
    Index max_rows = 12;
    std::size_t max_working_rows = 100000;
};

template <class S>
struct Feasibility {
    bool feasible = false;
    VecX<S> witness;
};

namespace detail {

template <class S>
struct FmRow {
    VecX<S> a;
    S b;
};

template <class S>
void normalize_row(FmRow<S>& row) {
    for (Index j = 0; j < row.a.size(); ++j) {
        int s = sign(row.a(j));
        if (s == 0) continue;
        S scale = s > 0 ? row.a(j) : -row.a(j);
        for (Index t = j; t < row.a.size(); ++t) row.a(t) = row.a(t) / scale;
        row.b = row.b / scale;
        return;
    }
}

template <class S>
bool row_less(const FmRow<S>& x, const FmRow<S>& y) {
    for (Index j = 0; j < x.a.size(); ++j) {
        int s = sign(x.a(j) - y.a(j));
        if (s != 0) return s < 0;
    }
    return sign(x.b - y.b) < 0;
}

template <class S>
bool row_equal(const FmRow<S>& x, const FmRow<S>& y) {
    return !row_less(x, y) && !row_less(y, x);
}

} // namespace detail

/// Exact emptiness decision by Fourier-Motzkin elimination in variable index
/// order, with a witness recovered by back-substitution when feasible. Rows
/// are deduplicated after each elimination step to curb blowup.
template <class S>
Feasibility<S> fm_feasible(const Polyhedron<S>& P, const ScaleLimits& limits = {}) {
    const Index n = P.dim();
    if (n > limits.max_vars)
        throw ScaleLimitExceeded("fm_feasible over " + std::to_string(n) + " variables");
    if (P.num_rows() > limits.max_rows)
        throw ScaleLimitExceeded("fm_feasible over " + std::to_string(P.num_rows()) + " rows");

    using Row = detail::FmRow<S>;
    std::vector<std::vector<Row>> systems(static_cast<std::size_t>(n) + 1);
    for (Index i = 0; i < P.num_rows(); ++i)
        systems[0].push_back(Row{P.A.row(i).transpose(), P.b(i)});

    for (Index var = 0; var < n; ++var) {
        std::vector<const Row*> pos, neg;
        std::vector<Row> next;
        for (const Row& row : systems[static_cast<std::size_t>(var)]) {
            int s = sign(row.a(var));
            if (s > 0)
                pos.push_back(&row);
            else if (s < 0)
                neg.push_back(&row);
            else
                next.push_back(row);
        }
        for (const Row* p : pos)
            for (const Row* q : neg) {
                Row r;
                r.a = p->a / p->a(var) - q->a / q->a(var);
                r.b = p->b / p->a(var) - q->b / q->a(var);
                next.push_back(std::move(r));
                if (next.size() > limits.max_working_rows)
                    throw ScaleLimitExceeded("fm_feasible working set");
            }
        // Var-free rows decide immediately; everything else is deduplicated.
        std::vector<Row> kept;
        for (Row& row : next) {
            bool allzero = true;
            for (Index j = 0; j < n; ++j)
                if (sign(row.a(j)) != 0) {
                    allzero = false;
                    break;
                }
            if (allzero) {
                if (sign(row.b) < 0) return {};
                continue;
            }
            detail::normalize_row(row);
            kept.push_back(std::move(row));
        }
        std::sort(kept.begin(), kept.end(), detail::row_less<S>);
        kept.erase(std::unique(kept.begin(), kept.end(), detail::row_equal<S>), kept.end());
        systems[static_cast<std::size_t>(var) + 1] = std::move(kept);
    }

    Feasibility<S> out;
    out.feasible = true;
    out.witness = VecX<S>::Zero(n);
    for (Index var = n - 1; var >= 0; --var) {
        std::optional<S> lower, upper;
        for (const auto& row : systems[static_cast<std::size_t>(var)]) {
            int s = sign(row.a(var));
            if (s == 0) continue;
            S residual = row.b;
            for (Index j = var + 1; j < n; ++j) residual -= row.a(j) * out.witness(j);
            S ratio = residual / row.a(var);
            if (s > 0) {
                if (!upper || ratio < *upper) upper = ratio;
            } else {
                if (!lower || ratio > *lower) lower = ratio;
            }
        }
        out.witness(var) = lower ? *lower : (upper ? *upper : S(0));
    }
    return out;
}

/// Generators of the recession cone {d : Ad <= 0} by maximal-rank row-subset
/// enumeration: nullspace basis vectors of every row subset, filtered to the
/// cone, normalized and deduplicated. Sound and complete for checking the
/// sign of a linear functional on the cone at desk scale.
template <class S>
std::vector<VecX<S>> recession_cone_generators(const MatX<S>& A,
                                               const ScaleLimits& limits = {}) {
    const Index m = A.rows();
    const Index n = A.cols();
    if (m > limits.max_rows)
        throw ScaleLimitExceeded("recession cone over " + std::to_string(m) + " rows");

    auto in_cone = [&](const VecX<S>& d) {
        for (Index i = 0; i < m; ++i) {
            S ad = S(0);
            for (Index j = 0; j < n; ++j) ad += A(i, j) * d(j);
            if (sign(ad) > 0) return false;
        }
        return true;
    };

    std::vector<VecX<S>> gens;
    auto push_unique = [&](VecX<S> d) {
        detail::FmRow<S> norm{std::move(d), S(0)};
        detail::normalize_row(norm);
        for (const auto& g : gens)
            if (g == norm.a) return;
        gens.push_back(std::move(norm.a));
    };

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<Index> rows;
        for (Index i = 0; i < m; ++i)
            if (mask >> i & 1) rows.push_back(i);
        MatX<S> sub(static_cast<Index>(rows.size()), n);
        for (Index r = 0; r < sub.rows(); ++r) sub.row(r) = A.row(rows[static_cast<std::size_t>(r)]);
        auto ls = gaussian_solve(sub, VecX<S>::Zero(sub.rows()).eval());
        for (const VecX<S>& w : ls.nullspace) {
            if (in_cone(w)) push_unique(w);
            VecX<S> neg = -w;
            if (in_cone(neg)) push_unique(std::move(neg));
        }
    }
    return gens;
}

/// One face-stationary candidate: a feasible witness in the stationary set
/// of f restricted to the affine hull of the active rows E.
template <class S>
struct Candidate {
    S value;
    VecX<S> witness;
    std::vector<Index> active;
};

template <class S>
struct CandidateSet {
    std::vector<Candidate<S>> items;

    const Candidate<S>* best() const {
        const Candidate<S>* out = nullptr;
        for (const auto& cand : items)
            if (!out || cand.value < out->value ||
                (sign(cand.value - out->value) == 0 && lex_less(cand.witness, out->witness)))
                out = &cand;
        return out;
    }
};

/// Enumerate every subset E of rows, parameterize {A_E x = b_E}, solve the
/// reduced stationarity system, and record the value wherever the stationary
/// set meets P. Every attained minimum of f on P appears among the values.
template <class S>
CandidateSet<S> candidate_enumerate(const Polyhedron<S>& P_in, const QuadraticFunction<S>& f,
                                    const ScaleLimits& limits = {}) {
    CandidateSet<S> out;
    auto pre = preprocess_zero_rows(P_in);
    if (!pre) return out;
    const Polyhedron<S>& P = *pre;
    const Index m = P.num_rows();
    const Index n = P.dim();
    if (n > limits.max_vars || m > limits.max_rows)
        throw ScaleLimitExceeded("candidate enumeration");

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<Index> active;
        for (Index i = 0; i < m; ++i)
            if (mask >> i & 1) active.push_back(i);
        MatX<S> Ae(static_cast<Index>(active.size()), n);
        VecX<S> be(static_cast<Index>(active.size()));
        for (Index r = 0; r < Ae.rows(); ++r) {
            Ae.row(r) = P.A.row(active[static_cast<std::size_t>(r)]);
            be(r) = P.b(active[static_cast<std::size_t>(r)]);
        }
        auto hull = gaussian_solve(Ae, be);
        if (!hull.consistent) continue;

        MatX<S> N(n, static_cast<Index>(hull.nullspace.size()));
        for (Index cidx = 0; cidx < N.cols(); ++cidx)
            N.col(cidx) = hull.nullspace[static_cast<std::size_t>(cidx)];

        // f restricted to x_p + N t; stationarity 2 Q~ t = -c~.
        MatX<S> Qt = N.transpose() * f.Q * N;
        VecX<S> ct = S(2) * (N.transpose() * (f.Q * hull.particular)) + N.transpose() * f.c;
        auto st = gaussian_solve(MatX<S>(S(2) * Qt), VecX<S>(-ct));
        if (!st.consistent) continue;

        VecX<S> x0 = hull.particular + N * st.particular;
        MatX<S> D(n, static_cast<Index>(st.nullspace.size()));
        for (Index cidx = 0; cidx < D.cols(); ++cidx)
            D.col(cidx) = N * st.nullspace[static_cast<std::size_t>(cidx)];

        VecX<S> witness;
        if (D.cols() == 0) {
            if (!P.contains(x0)) continue;
            witness = std::move(x0);
        } else {
            Polyhedron<S> slice(P.A * D, P.b - P.A * x0);
            auto feas = fm_feasible(slice, limits);
            if (!feas.feasible) continue;
            witness = x0 + D * feas.witness;
        }
        out.items.push_back(Candidate<S>{evaluate(f, witness), std::move(witness), active});
    }
    return out;
}

/// Exact status oracle for the degenerate Q = 0 case: feasibility by
/// Fourier-Motzkin, unboundedness by a negative objective generator of the
/// recession cone, otherwise the candidate minimum.
template <class S>
SolveResult<S> lp_status_oracle(const Polyhedron<S>& P_in, const VecX<S>& c,
                                const ScaleLimits& limits = {}) {
    auto pre = preprocess_zero_rows(P_in);
    if (!pre) return SolveResult<S>::infeasible();
    const Polyhedron<S>& P = *pre;
    auto feas = fm_feasible(P, limits);
    if (!feas.feasible) return SolveResult<S>::infeasible();

    for (const VecX<S>& d : recession_cone_generators(P.A, limits)) {
        S cd = S(0);
        for (Index j = 0; j < P.dim(); ++j) cd += c(j) * d(j);
        if (sign(cd) < 0)
            return SolveResult<S>::unbounded(RayCertificate<S>{feas.witness, d});
    }

    QuadraticFunction<S> f(MatX<S>::Zero(P.dim(), P.dim()), c, S(0));
    auto cands = candidate_enumerate(P, f, limits);
    const Candidate<S>* best = cands.best();
    if (!best) throw Error("lp oracle: bounded feasible instance without candidates");
    return SolveResult<S>::optimal(best->value, best->witness);
}

/// Status oracle for convex objectives (all diagonal entries nonnegative
/// after diagonalization): unbounded iff some recession direction lies in
/// ker Q with negative linear objective, otherwise the candidate minimum.
template <class S>
SolveResult<S> convex_status_oracle(const Polyhedron<S>& P_in, const QuadraticFunction<S>& f,
                                    const ScaleLimits& limits = {}) {
    auto diag = lagrange_diagonalize(f.Q);
    for (Index i = 0; i < diag.lambda.size(); ++i)
        if (sign(diag.lambda(i)) < 0) throw NotConvex();

    auto pre = preprocess_zero_rows(P_in);
    if (!pre) return SolveResult<S>::infeasible();
    const Polyhedron<S>& P = *pre;
    auto feas = fm_feasible(P, limits);
    if (!feas.feasible) return SolveResult<S>::infeasible();

    auto ker = gaussian_solve(f.Q, VecX<S>::Zero(f.dim()).eval());
    if (!ker.nullspace.empty()) {
        MatX<S> K(f.dim(), static_cast<Index>(ker.nullspace.size()));
        for (Index cidx = 0; cidx < K.cols(); ++cidx)
            K.col(cidx) = ker.nullspace[static_cast<std::size_t>(cidx)];
        for (const VecX<S>& s : recession_cone_generators(MatX<S>(P.A * K), limits)) {
            VecX<S> d = K * s;
            S cd = S(0);
            for (Index j = 0; j < f.dim(); ++j) cd += f.c(j) * d(j);
            if (sign(cd) < 0)
                return SolveResult<S>::unbounded(RayCertificate<S>{feas.witness, d});
        }
    }

    auto cands = candidate_enumerate(P, f, limits);
    const Candidate<S>* best = cands.best();
    if (!best) throw Error("convex oracle: bounded feasible instance without candidates");
    return SolveResult<S>::optimal(best->value, best->witness);
}

namespace detail {

inline long rand_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace detail

/// Probabilistic falsifier for Optimal claims: samples feasible points as
/// convex combinations of known feasible witnesses pushed far along
/// recession generators, and reports any point strictly below the claimed
/// value. Deterministic under a fixed seed.
template <class S>
std::optional<VecX<S>> falsify_by_sampling(const Polyhedron<S>& P,
                                           const QuadraticFunction<S>& f,
                                           const SolveResult<S>& claimed, int trials,
                                           std::uint64_t seed,
                                           const ScaleLimits& limits = {}) {
    if (claimed.status != Status::Optimal) return std::nullopt;

    std::vector<VecX<S>> pool;
    auto feas = fm_feasible(P, limits);
    if (!feas.feasible) return std::nullopt;
    pool.push_back(feas.witness);
    for (const auto& cand : candidate_enumerate(P, f, limits).items)
        pool.push_back(cand.witness);
    auto pre = preprocess_zero_rows(P);
    std::vector<VecX<S>> gens =
        pre ? recession_cone_generators(pre->A, limits) : std::vector<VecX<S>>{};

    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        VecX<S> x;
        if (trial % 4 == 0) {
            x = pool[static_cast<std::size_t>(detail::rand_range(
                rng, 0, static_cast<long>(pool.size()) - 1))];
        } else {
            VecX<S> acc = VecX<S>::Zero(P.dim());
            S total = S(0);
            for (const auto& pt : pool) {
                long w = detail::rand_range(rng, 0, 4);
                if (w == 0) continue;
                acc += scalar_from_int<S>(w) * pt;
                total += scalar_from_int<S>(w);
            }
            if (sign(total) == 0) continue;
            x = acc / total;
        }
        if (!gens.empty() && trial % 2 == 1) {
            long picks = detail::rand_range(rng, 1, 2);
            for (long i = 0; i < picks; ++i) {
                const VecX<S>& g = gens[static_cast<std::size_t>(detail::rand_range(
                    rng, 0, static_cast<long>(gens.size()) - 1))];
                long k = detail::rand_range(rng, 0, 40);
                long lam = detail::rand_range(rng, 1, 3);
                x += scalar_from_int<S>(lam * (1L << k)) * g;
            }
        }
        if (!P.contains(x)) continue;
        if (evaluate(f, x) < claimed.value) return x;
    }
    return std::nullopt;
}

/// Deterministic instance generator; integer coefficients in
/// [-bound, bound] mapped into the field.
template <class S>
Instance<S> generate_instance(const InstanceSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const Index n = spec.n;
    const long bound = spec.bound;
    auto draw = [&](long lo, long hi) { return scalar_from_int<S>(detail::rand_range(rng, lo, hi)); };

    Instance<S> inst;
    inst.name = std::string(to_string(spec.shape)) + "_n" + std::to_string(n) + "_m" +
                std::to_string(spec.m) + "_s" + std::to_string(spec.seed);

    MatX<S> Q = MatX<S>::Zero(n, n);
    VecX<S> c = VecX<S>::Zero(n);
    S gamma = S(0);
    Index m = spec.m;
    MatX<S> A;
    VecX<S> b;

    auto random_rows = [&](Index rows) {
        A = MatX<S>::Zero(rows, n);
        b = VecX<S>::Zero(rows);
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < n; ++j) A(i, j) = draw(-bound, bound);
            b(i) = draw(-bound, bound);
        }
    };

    switch (spec.shape) {
        case Shape::Generic: {
            for (Index i = 0; i < n; ++i)
                for (Index j = i; j < n; ++j) Q(i, j) = Q(j, i) = draw(-bound, bound);
            for (Index j = 0; j < n; ++j) c(j) = draw(-bound, bound);
            gamma = draw(-bound, bound);
            random_rows(m);
            break;
        }
        case Shape::Convex: {
            VecX<S> d(n);
            for (Index i = 0; i < n; ++i) d(i) = draw(0, bound);
            MatX<S> R(n, n);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) R(i, j) = draw(-1, 1);
            Q = R.transpose() * MatX<S>(d.asDiagonal()) * R;
            for (Index j = 0; j < n; ++j) c(j) = draw(-bound, bound);
            gamma = draw(-bound, bound);
            random_rows(m);
            break;
        }
        case Shape::Lp: {
            for (Index j = 0; j < n; ++j) c(j) = draw(-bound, bound);
            gamma = draw(-bound, bound);
            random_rows(m);
            break;
        }
        case Shape::Infeasible: {
            m = std::max<Index>(m, 2);
            random_rows(m);
            VecX<S> planted(n);
            bool nonzero = false;
            while (!nonzero) {
                for (Index j = 0; j < n; ++j) {
                    planted(j) = draw(-bound, bound);
                    if (sign(planted(j)) != 0) nonzero = true;
                }
            }
            S beta = draw(-bound, bound);
            A.row(m - 2) = planted.transpose();
            b(m - 2) = beta;
            A.row(m - 1) = -planted.transpose();
            b(m - 1) = -beta - S(1);
            for (Index i = 0; i < n; ++i)
                for (Index j = i; j < n; ++j) Q(i, j) = Q(j, i) = draw(-bound, bound);
            for (Index j = 0; j < n; ++j) c(j) = draw(-bound, bound);
            gamma = draw(-bound, bound);
            break;
        }
        case Shape::UnboundedBiased: {
            // Concave diagonal direction left unconstrained: the generated
            // system has a zero column in pre-transform coordinates and a
            // nonnegative rhs, so the origin is feasible and the instance is
            // unbounded by construction.
            VecX<S> lambda(n);
            lambda(0) = -draw(1, bound);
            for (Index i = 1; i < n; ++i) lambda(i) = draw(0, bound);
            MatX<S> T = MatX<S>::Identity(n, n);
            long shears = detail::rand_range(rng, 1, 2);
            for (long t = 0; t < shears && n > 1; ++t) {
                Index i = detail::rand_range(rng, 0, n - 1);
                Index j = detail::rand_range(rng, 0, n - 1);
                if (i == j) continue;
                MatX<S> Sh = MatX<S>::Identity(n, n);
                Sh(i, j) = scalar_from_int<S>(detail::rand_range(rng, 0, 1) == 0 ? -1 : 1);
                T = T * Sh;
            }
            Q = T.transpose() * MatX<S>(lambda.asDiagonal()) * T;
            gamma = draw(-bound, bound);
            MatX<S> Aw = MatX<S>::Zero(m, n);
            b = VecX<S>::Zero(m);
            for (Index i = 0; i < m; ++i) {
                for (Index j = 1; j < n; ++j) Aw(i, j) = draw(-bound, bound);
                b(i) = draw(0, bound);
            }
            A = Aw * T;
            break;
        }
    }

    inst.P = Polyhedron<S>(std::move(A), std::move(b));
    inst.f = QuadraticFunction<S>(std::move(Q), std::move(c), std::move(gamma));
    return inst;
}

} // namespace qplof
