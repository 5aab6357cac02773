#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qplof/io.hpp"
#include "qplof/oracle.hpp"

namespace qplof::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitMismatch = 3;

/// Desk-scale bounds, optionally overridden by QPLOF_SCALE_LIMIT
/// ("<vars>" or "<vars>:<rows>").
inline ScaleLimits scale_limits_from_env() {
    ScaleLimits limits;
    if (const char* env = std::getenv("QPLOF_SCALE_LIMIT")) {
        std::string s(env);
        auto colon = s.find(':');
        try {
            limits.max_vars = std::stol(s.substr(0, colon));
            limits.max_rows = colon == std::string::npos ? 2 * limits.max_vars + 2
                                                         : std::stol(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw Error("invalid QPLOF_SCALE_LIMIT value '" + s + "'");
        }
    }
    return limits;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

template <class Fn>
auto dispatch_field(const std::string& tag, Fn&& fn) {
    if (tag == FieldTraits<Rational>::name) return fn(Rational());
    return fn(RatFunc());
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
    std::string path;
    bool check = false;
    bool stats = false;
    std::uint64_t seed = 0;
};

namespace detail {

template <class S>
int run_solve(const Json& doc, const SolveOptions& opts, std::ostream& out,
              std::ostream& err) {
    Instance<S> inst = parse_instance<S>(doc);
    auto t0 = std::chrono::steady_clock::now();
    SolveResult<S> result = min_qp_lof(inst.P, inst.f);
    auto t1 = std::chrono::steady_clock::now();

    Json rdoc = result_to_json(result);
    if (opts.stats)
        rdoc["stats"]["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    bool all_passed = true;
    if (opts.check) {
        ScaleLimits limits = scale_limits_from_env();
        Json checks = Json::object();
        auto record = [&](const char* name, bool pass) {
            checks[name] = pass ? "pass" : "fail";
            all_passed = all_passed && pass;
        };
        if (result.status == Status::Optimal)
            record("certificate", verify_optimal(inst.P, inst.f, result));
        if (result.status == Status::Unbounded)
            record("ray", verify_ray(inst.P, inst.f, *result.ray));
        try {
            auto feas = fm_feasible(inst.P, limits);
            record("feasibility-agreement",
                   feas.feasible == (result.status != Status::Infeasible));
            if (result.status == Status::Optimal) {
                auto cands = candidate_enumerate(inst.P, inst.f, limits);
                const Candidate<S>* best = cands.best();
                record("candidate-minimum",
                       best != nullptr && sign(best->value - result.value) == 0);
            }
        } catch (const ScaleLimitExceeded& e) {
            checks["oracle"] = "skipped";
            err << "note: " << e.what() << "; oracle checks skipped\n";
        }
        rdoc["verification"] = Json{{"checks", checks}, {"all_passed", all_passed}};
    }

    out << rdoc.dump(2) << "\n";
    return all_passed ? kExitOk : kExitMismatch;
}

} // namespace detail

inline int cmd_solve(const SolveOptions& opts, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    try {
        Json doc = load_json(opts.path);
        std::string tag = document_field_tag(doc);
        return dispatch_field(tag, [&](auto zero) {
            using S = decltype(zero);
            return detail::run_solve<S>(doc, opts, out, err);
        });
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitError;
    }
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
    Index n = 2;
    Index m = 3;
    long bound = 3;
    std::string shape = "generic";
    std::uint64_t seed = 0;
    int count = 1;
    std::string out_dir = ".";
    std::string field = "rational";
};

inline int cmd_gen(const GenOptions& opts, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    try {
        Shape shape = parse_shape(opts.shape);
        if (opts.field != FieldTraits<Rational>::name &&
            opts.field != FieldTraits<RatFunc>::name)
            throw Error("unknown field tag '" + opts.field + "'");
        std::filesystem::create_directories(opts.out_dir);
        for (int i = 0; i < opts.count; ++i) {
            InstanceSpec spec{opts.n, opts.m, opts.bound, opts.seed + static_cast<std::uint64_t>(i),
                              shape};
            Json doc = dispatch_field(opts.field, [&](auto zero) {
                using S = decltype(zero);
                return instance_to_json(generate_instance<S>(spec));
            });
            std::filesystem::path path =
                std::filesystem::path(opts.out_dir) /
                (opts.shape + "_s" + std::to_string(spec.seed) + ".json");
            std::ofstream file(path);
            if (!file) throw Error("cannot write '" + path.string() + "'");
            file << doc.dump(2) << "\n";
            out << path.string() << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitError;
    }
}

// ---------------------------------------------------------------------------
// verify: re-check a stored result document without re-solving.
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string instance_path;
    std::string result_path;
};

namespace detail {

template <class S>
int run_verify(const Json& idoc, const Json& rdoc, std::ostream& err) {
    Instance<S> inst = parse_instance<S>(idoc);
    SolveResult<S> claimed = parse_result<S>(rdoc, inst.P.dim());
    ScaleLimits limits = scale_limits_from_env();

    bool ok = true;
    auto fail = [&](const std::string& what) {
        err << "mismatch: " << what << "\n";
        ok = false;
    };

    std::optional<Feasibility<S>> feas;
    try {
        feas = fm_feasible(inst.P, limits);
    } catch (const ScaleLimitExceeded& e) {
        err << "note: " << e.what() << "; oracle checks skipped\n";
    }

    switch (claimed.status) {
        case Status::Infeasible:
            if (feas && feas->feasible) fail("claimed Infeasible but a feasible point exists");
            break;
        case Status::Unbounded: {
            const auto& cert = *claimed.ray;
            if (!inst.P.contains(cert.x0)) fail("ray infeasible: base point violates A x <= b");
            bool recession = true;
            for (Index i = 0; i < inst.P.num_rows() && recession; ++i) {
                S ad = S(0);
                for (Index j = 0; j < inst.P.dim(); ++j) ad += inst.P.A(i, j) * cert.d(j);
                if (sign(ad) > 0) recession = false;
            }
            if (!recession) fail("ray infeasible: direction violates A d <= 0");
            auto [alpha, beta] = ray_coefficients(inst.f, cert.x0, cert.d);
            if (!(sign(alpha) < 0 || (sign(alpha) == 0 && sign(beta) < 0)))
                fail("ray not strictly descending");
            break;
        }
        case Status::Optimal: {
            if (!inst.P.contains(claimed.point)) fail("claimed point violates A x <= b");
            else if (sign(evaluate(inst.f, claimed.point) - claimed.value) != 0)
                fail("value mismatch: f(point) != value");
            if (feas) {
                try {
                    auto cands = candidate_enumerate(inst.P, inst.f, limits);
                    const Candidate<S>* best = cands.best();
                    if (!best || sign(best->value - claimed.value) != 0)
                        fail("value mismatch: candidate minimum disagrees");
                } catch (const ScaleLimitExceeded& e) {
                    err << "note: " << e.what() << "\n";
                }
            }
            break;
        }
    }
    return ok ? kExitOk : kExitError;
}

} // namespace detail

inline int cmd_verify(const VerifyOptions& opts, std::ostream& err = std::cerr) {
    try {
        Json idoc = load_json(opts.instance_path);
        Json rdoc = load_json(opts.result_path);
        std::string tag = document_field_tag(idoc);
        return dispatch_field(tag, [&](auto zero) {
            using S = decltype(zero);
            return detail::run_verify<S>(idoc, rdoc, err);
        });
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitError;
    }
}

// ---------------------------------------------------------------------------
// oracle: generate, solve and cross-check a batch in one go.
// ---------------------------------------------------------------------------

struct OracleOptions {
    Index n = 2;
    Index m = 3;
    long bound = 3;
    std::string shape = "generic";
    std::uint64_t seed = 0;
    int count = 20;
    std::string field = "rational";
};

namespace detail {

template <class S>
int run_oracle(const OracleOptions& opts, Shape shape, std::ostream& out,
               std::ostream& err) {
    ScaleLimits limits = scale_limits_from_env();
    int mismatches = 0;
    int statuses[3] = {0, 0, 0};
    for (int i = 0; i < opts.count; ++i) {
        InstanceSpec spec{opts.n, opts.m, opts.bound,
                          opts.seed + static_cast<std::uint64_t>(i), shape};
        Instance<S> inst = generate_instance<S>(spec);
        SolveResult<S> result = min_qp_lof(inst.P, inst.f);
        ++statuses[static_cast<int>(result.status)];

        auto fail = [&](const std::string& what) {
            err << inst.name << ": " << what << "\n";
            ++mismatches;
        };
        auto feas = fm_feasible(inst.P, limits);
        if (feas.feasible == (result.status == Status::Infeasible))
            fail("feasibility disagreement");
        if (result.status == Status::Unbounded && !verify_ray(inst.P, inst.f, *result.ray))
            fail("ray certificate rejected");
        if (result.status == Status::Optimal) {
            if (!verify_optimal(inst.P, inst.f, result)) fail("optimal certificate rejected");
            auto cands = candidate_enumerate(inst.P, inst.f, limits);
            const Candidate<S>* best = cands.best();
            if (!best || sign(best->value - result.value) != 0)
                fail("candidate minimum disagreement");
        }
    }
    out << "checked " << opts.count << " " << to_string(shape) << " instances over "
        << FieldTraits<S>::name << ": " << statuses[2] << " optimal, " << statuses[1]
        << " unbounded, " << statuses[0] << " infeasible, " << mismatches
        << " mismatches\n";
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

} // namespace detail

inline int cmd_oracle(const OracleOptions& opts, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        Shape shape = parse_shape(opts.shape);
        return dispatch_field(opts.field, [&](auto zero) {
            using S = decltype(zero);
            return detail::run_oracle<S>(opts, shape, out, err);
        });
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitError;
    }
}

} // namespace qplof::cli
