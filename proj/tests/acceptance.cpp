// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "qplof/io.hpp"
#include "qplof/oracle.hpp"

using namespace qplof;

namespace {

int failures = 0;

void report(int number, const char* title, bool pass) {
    std::printf("[%s] %d. %s\n", pass ? "PASS" : "FAIL", number, title);
    if (!pass) ++failures;
}

long draw(std::mt19937_64& rng, long lo, long hi) {
    return qplof::detail::rand_range(rng, lo, hi);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criterion 1: decomposition suite.
bool decomposition_suite() {
    std::mt19937_64 rng(1001);
    for (int t = 0; t < 300; ++t) {
        Index n = 1 + static_cast<Index>(draw(rng, 0, 4));
        MatX<Rational> Q(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = i; j < n; ++j) Q(i, j) = Q(j, i) = Rational(draw(rng, -5, 5));
        VecX<Rational> c(n);
        for (Index i = 0; i < n; ++i) c(i) = Rational(draw(rng, -5, 5));
        QuadraticFunction<Rational> f(Q, c, Rational(draw(rng, -5, 5)));

        auto diag = lagrange_diagonalize(f.Q);
        MatX<Rational> L = MatX<Rational>::Zero(n, n);
        L.diagonal() = diag.lambda;
        if (MatX<Rational>(diag.transform.transpose() * L * diag.transform) != f.Q)
            return false;

        auto d = align_linear_term(decouple(f));
        Index support = 0;
        for (Index i = 0; i < n; ++i) {
            if (sign(d.lambda(i) * d.u(i)) != 0) return false;
            if (sign(d.u(i)) != 0) ++support;
        }
        if (support > 1) return false;
        for (int p = 0; p < 20; ++p) {
            VecX<Rational> x(n);
            for (Index i = 0; i < n; ++i) x(i) = Rational(draw(rng, -6, 6), draw(rng, 1, 4));
            if (sign(d.evaluate_at(x) - evaluate(f, x)) != 0) return false;
        }
    }
    return true;
}

// Shared pass over 500 generated instances for criteria 2, 3 and part of 6.
struct BatchOutcome {
    bool feasibility_agrees = true;
    bool optimal_agrees = true;
    bool rays_verify = true;
    int unbounded_seen = 0;
};

BatchOutcome batch;
bool batch_done = false;

void run_batch() {
    if (batch_done) return;
    batch_done = true;
    const Shape shapes[] = {Shape::Generic, Shape::Convex, Shape::Lp, Shape::Infeasible};
    std::mt19937_64 rng(2002);
    for (int t = 0; t < 500; ++t) {
        InstanceSpec spec;
        spec.n = 1 + static_cast<Index>(draw(rng, 0, 2));
        spec.m = static_cast<Index>(draw(rng, 0, 5));
        spec.bound = 3;
        spec.seed = 20000 + static_cast<std::uint64_t>(t);
        spec.shape = shapes[t % 4];
        if (spec.shape == Shape::Infeasible && spec.m < 2) spec.m = 2;
        auto inst = generate_instance<Rational>(spec);
        auto r = min_qp_lof(inst.P, inst.f);

        auto feas = fm_feasible(inst.P);
        if (feas.feasible != (r.status != Status::Infeasible))
            batch.feasibility_agrees = false;

        if (r.status == Status::Optimal) {
            if (!verify_optimal(inst.P, inst.f, r)) batch.optimal_agrees = false;
            auto cands = candidate_enumerate(inst.P, inst.f);
            const Candidate<Rational>* best = cands.best();
            if (!best || sign(best->value - r.value) != 0) batch.optimal_agrees = false;
        }
        if (r.status == Status::Unbounded) {
            ++batch.unbounded_seen;
            if (!verify_ray(inst.P, inst.f, *r.ray)) batch.rays_verify = false;
        }
    }
}

// Criterion 4: LP degenerate case.
bool lp_agreement() {
    std::mt19937_64 rng(3003);
    for (int t = 0; t < 200; ++t) {
        InstanceSpec spec;
        spec.n = 1 + static_cast<Index>(draw(rng, 0, 2));
        spec.m = static_cast<Index>(draw(rng, 0, 5));
        spec.bound = 3;
        spec.seed = 30000 + static_cast<std::uint64_t>(t);
        spec.shape = Shape::Lp;
        auto inst = generate_instance<Rational>(spec);
        auto r = min_qp_lof(inst.P, inst.f);
        auto oracle = lp_status_oracle(inst.P, inst.f.c);
        if (r.status != oracle.status) return false;
        // The generator leaves gamma in f but the oracle works on c alone.
        if (r.status == Status::Optimal &&
            sign((r.value - inst.f.gamma) - oracle.value) != 0)
            return false;
        if (r.status == Status::Unbounded && !verify_ray(inst.P, inst.f, *r.ray)) return false;
    }
    return true;
}

// Criterion 5: convex case.
bool convex_agreement() {
    std::mt19937_64 rng(4004);
    for (int t = 0; t < 200; ++t) {
        InstanceSpec spec;
        spec.n = 1 + static_cast<Index>(draw(rng, 0, 2));
        spec.m = static_cast<Index>(draw(rng, 0, 5));
        spec.bound = 3;
        spec.seed = 40000 + static_cast<std::uint64_t>(t);
        spec.shape = Shape::Convex;
        auto inst = generate_instance<Rational>(spec);
        auto r = min_qp_lof(inst.P, inst.f);
        auto oracle = convex_status_oracle(inst.P, inst.f);
        if (r.status != oracle.status) return false;
        if (r.status == Status::Optimal && sign(r.value - oracle.value) != 0) return false;
        if (r.status == Status::Unbounded && !verify_ray(inst.P, inst.f, *r.ray)) return false;
    }
    return true;
}

// Criterion 6: unbounded soundness.
bool unbounded_soundness() {
    run_batch();
    if (!batch.rays_verify) return false;
    for (int t = 0; t < 50; ++t) {
        InstanceSpec spec{2 + static_cast<Index>(t % 2), 3, 3,
                          60000 + static_cast<std::uint64_t>(t), Shape::UnboundedBiased};
        auto inst = generate_instance<Rational>(spec);
        auto r = min_qp_lof(inst.P, inst.f);
        if (r.status != Status::Unbounded) return false;
        if (!verify_ray(inst.P, inst.f, *r.ray)) return false;
    }
    return true;
}

// Criterion 7: metamorphic affine invariance.
bool affine_invariance() {
    std::mt19937_64 rng(7007);
    for (int t = 0; t < 100; ++t) {
        InstanceSpec spec{2, 3, 2, 70000 + static_cast<std::uint64_t>(t), Shape::Generic};
        auto inst = generate_instance<Rational>(spec);
        auto r = min_qp_lof(inst.P, inst.f);
        for (int rep = 0; rep < 3; ++rep) {
            MatX<Rational> T = MatX<Rational>::Identity(2, 2);
            for (int s = 0; s < 3; ++s) {
                Index i = static_cast<Index>(draw(rng, 0, 1));
                MatX<Rational> Sh = MatX<Rational>::Identity(2, 2);
                Sh(i, 1 - i) = Rational(draw(rng, -2, 2));
                T = T * Sh;
            }
            VecX<Rational> shift(2);
            shift << Rational(draw(rng, -2, 2)), Rational(draw(rng, -2, 2));
            AffineMap<Rational> map{T, shift};
            auto g = substitute_into_function(inst.f, map);
            Polyhedron<Rational> Pz(inst.P.A * T, inst.P.b - inst.P.A * shift);
            auto rz = min_qp_lof(Pz, g);
            if (rz.status != r.status) return false;
            if (r.status == Status::Optimal) {
                if (sign(rz.value - r.value) != 0) return false;
                VecX<Rational> mapped = map.apply(rz.point);
                if (!inst.P.contains(mapped)) return false;
                if (sign(evaluate(inst.f, mapped) - r.value) != 0) return false;
            }
        }
    }
    return true;
}

// Criterion 8: non-Archimedean suite.
bool non_archimedean_suite() {
    RatFunc eps = RatFunc::epsilon();
    auto scalar_mat = [](const RatFunc& v) {
        MatX<RatFunc> M(1, 1);
        M(0, 0) = v;
        return M;
    };
    auto scalar_vec = [](const RatFunc& v) {
        VecX<RatFunc> x(1);
        x(0) = v;
        return x;
    };

    // eps x^2 - x, unconstrained.
    {
        QuadraticFunction<RatFunc> f(scalar_mat(eps), scalar_vec(RatFunc(-1)), RatFunc(0));
        auto r = min_qp_lof(Polyhedron<RatFunc>::whole_space(1), f);
        if (r.status != Status::Optimal) return false;
        if (render(r.value) != "(-1/4)/(1*e)") return false;
        if (render(r.point(0)) != "(1/2)/(1*e)") return false;
    }
    // x^2 with x >= 1 + eps.
    {
        QuadraticFunction<RatFunc> f(scalar_mat(RatFunc(1)), scalar_vec(RatFunc(0)), RatFunc(0));
        Polyhedron<RatFunc> P(scalar_mat(RatFunc(-1)), scalar_vec(-(RatFunc(1) + eps)));
        auto r = min_qp_lof(P, f);
        if (r.status != Status::Optimal) return false;
        if (render(r.value) != "1+2*e+1*e^2") return false;
        if (render(r.point(0)) != "1+1*e") return false;
    }
    // Linear objective attaining an infinitesimal value: min x over {x >= eps}.
    {
        QuadraticFunction<RatFunc> f(scalar_mat(RatFunc(0)), scalar_vec(RatFunc(1)), RatFunc(0));
        Polyhedron<RatFunc> P(scalar_mat(RatFunc(-1)), scalar_vec(-eps));
        auto r = min_qp_lof(P, f);
        if (r.status != Status::Optimal || render(r.value) != "1*e") return false;
    }
    // Concave on an infinitesimal interval: min -x^2 over [0, eps].
    {
        QuadraticFunction<RatFunc> f(scalar_mat(RatFunc(-1)), scalar_vec(RatFunc(0)), RatFunc(0));
        MatX<RatFunc> A(2, 1);
        A(0, 0) = RatFunc(-1);
        A(1, 0) = RatFunc(1);
        VecX<RatFunc> b(2);
        b(0) = RatFunc(0);
        b(1) = eps;
        auto r = min_qp_lof(Polyhedron<RatFunc>(A, b), f);
        if (r.status != Status::Optimal || render(r.value) != "-1*e^2") return false;
        if (render(r.point(0)) != "1*e") return false;
    }
    // Infinitesimally conflicting bounds: x <= -eps and x >= 0.
    {
        QuadraticFunction<RatFunc> f(scalar_mat(RatFunc(0)), scalar_vec(RatFunc(0)), RatFunc(0));
        MatX<RatFunc> A(2, 1);
        A(0, 0) = RatFunc(1);
        A(1, 0) = RatFunc(-1);
        VecX<RatFunc> b(2);
        b(0) = -eps;
        b(1) = RatFunc(0);
        if (min_qp_lof(Polyhedron<RatFunc>(A, b), f).status != Status::Infeasible) return false;
    }
    return true;
}

// Criterion 9: termination and scale.
bool stress_scale() {
    for (int t = 0; t < 25; ++t) {
        InstanceSpec spec{4, 6, 3, 90000 + static_cast<std::uint64_t>(t), Shape::Generic};
        auto inst = generate_instance<Rational>(spec);
        auto t0 = std::chrono::steady_clock::now();
        auto r = min_qp_lof(inst.P, inst.f);
        double elapsed = seconds_since(t0);
        if (elapsed > 120.0) return false;
        if (r.stats.max_depth > 4) return false;
        if (r.status == Status::Optimal && !verify_optimal(inst.P, inst.f, r)) return false;
        if (r.status == Status::Unbounded && !verify_ray(inst.P, inst.f, *r.ray)) return false;
    }
    return true;
}

// Criterion 10: falsification robustness.
bool falsification_robustness() {
    int indefinite_optimal = 0;
    int corrupted_caught = 0;
    int corrupted_total = 0;
    for (std::uint64_t seed = 100000; indefinite_optimal < 100; ++seed) {
        InstanceSpec spec{2, 4, 3, seed, Shape::Generic};
        auto inst = generate_instance<Rational>(spec);
        auto diag = lagrange_diagonalize(inst.f.Q);
        bool has_neg = false, has_pos = false;
        for (Index i = 0; i < diag.lambda.size(); ++i) {
            if (sign(diag.lambda(i)) < 0) has_neg = true;
            if (sign(diag.lambda(i)) > 0) has_pos = true;
        }
        if (!has_neg || !has_pos) continue;
        auto r = min_qp_lof(inst.P, inst.f);
        if (r.status != Status::Optimal) continue;
        ++indefinite_optimal;

        if (falsify_by_sampling(inst.P, inst.f, r, 1000, seed).has_value()) return false;

        if (corrupted_total < 20) {
            ++corrupted_total;
            auto corrupted = r;
            corrupted.value = r.value + Rational(1);
            if (falsify_by_sampling(inst.P, inst.f, corrupted, 1000, seed).has_value())
                ++corrupted_caught;
        }
    }
    return corrupted_total == 20 && corrupted_caught >= 19;
}

} // namespace

int main() {
    report(1, "decomposition: congruence, reconstruction, aligned support",
           decomposition_suite());
    run_batch();
    report(2, "status trichotomy vs Fourier-Motzkin on 500 instances",
           batch.feasibility_agrees);
    report(3, "optimal values match candidate enumeration on 500 instances",
           batch.optimal_agrees);
    report(4, "LP degenerate case matches lp_status_oracle", lp_agreement());
    report(5, "convex case matches convex_status_oracle", convex_agreement());
    report(6, "every Unbounded verdict carries a verifying ray", unbounded_soundness());
    report(7, "affine reparameterization invariance", affine_invariance());
    report(8, "non-Archimedean instances solve to exact literals", non_archimedean_suite());
    report(9, "n=4 stress set completes in bounds with depth <= n", stress_scale());
    report(10, "falsifier passes true optima, catches corrupted values",
           falsification_robustness());
    return failures == 0 ? 0 : 1;
}
