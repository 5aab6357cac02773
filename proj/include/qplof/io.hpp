#pragma once

#include <json.hpp>

#include <string>

#include "qplof/instance.hpp"
#include "qplof/solver.hpp"

namespace qplof {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Instance documents. Scalars are serialized as literal strings, never as
// binary floating point: exactness is the entire point.
// ---------------------------------------------------------------------------

inline std::string document_field_tag(const Json& doc) {
    if (!doc.is_object() || !doc.contains("field") || !doc.at("field").is_string())
        throw ParseError("instance document requires a string 'field' tag");
    std::string tag = doc.at("field").get<std::string>();
    if (tag != FieldTraits<Rational>::name && tag != FieldTraits<RatFunc>::name)
        throw ParseError("unknown field tag '" + tag + "'");
    return tag;
}

namespace detail {

template <class S>
VecX<S> parse_vector(const Json& arr, Index expect, const std::string& what) {
    if (!arr.is_array() || static_cast<Index>(arr.size()) != expect)
        throw ParseError(what + " must be an array of length " + std::to_string(expect));
    VecX<S> out(expect);
    for (Index i = 0; i < expect; ++i) {
        if (!arr[static_cast<std::size_t>(i)].is_string())
            throw ParseError(what + " entries must be scalar literal strings");
        out(i) = FieldTraits<S>::parse(arr[static_cast<std::size_t>(i)].get<std::string>());
    }
    return out;
}

template <class S>
MatX<S> parse_matrix(const Json& arr, Index rows, Index cols, const std::string& what) {
    if (!arr.is_array() || static_cast<Index>(arr.size()) != rows)
        throw ParseError(what + " must be an array of " + std::to_string(rows) + " rows");
    MatX<S> out(rows, cols);
    for (Index i = 0; i < rows; ++i)
        out.row(i) =
            parse_vector<S>(arr[static_cast<std::size_t>(i)], cols, what + " row").transpose();
    return out;
}

template <class S>
Json render_vector(const VecX<S>& v) {
    Json arr = Json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(render(v(i)));
    return arr;
}

template <class S>
Json render_matrix(const MatX<S>& M) {
    Json arr = Json::array();
    for (Index i = 0; i < M.rows(); ++i) arr.push_back(render_vector<S>(M.row(i).transpose()));
    return arr;
}

} // namespace detail

template <class S>
Instance<S> parse_instance(const Json& doc) {
    if (document_field_tag(doc) != FieldTraits<S>::name)
        throw ParseError("document field tag does not match the requested backend");
    if (!doc.contains("n") || !doc.at("n").is_number_integer())
        throw ParseError("instance document requires an integer 'n'");
    Index n = doc.at("n").get<Index>();
    if (n < 0) throw ParseError("'n' must be nonnegative");
    for (const char* key : {"Q", "c", "gamma", "A", "b"})
        if (!doc.contains(key)) throw ParseError(std::string("missing '") + key + "'");

    Index m = static_cast<Index>(doc.at("A").is_array() ? doc.at("A").size() : 0);
    Instance<S> inst;
    inst.f = QuadraticFunction<S>(detail::parse_matrix<S>(doc.at("Q"), n, n, "Q"),
                                  detail::parse_vector<S>(doc.at("c"), n, "c"),
                                  FieldTraits<S>::parse(doc.at("gamma").get<std::string>()));
    inst.P = Polyhedron<S>(detail::parse_matrix<S>(doc.at("A"), m, n, "A"),
                           detail::parse_vector<S>(doc.at("b"), m, "b"));
    if (doc.contains("metadata") && doc.at("metadata").contains("name"))
        inst.name = doc.at("metadata").at("name").get<std::string>();
    return inst;
}

template <class S>
Json instance_to_json(const Instance<S>& inst) {
    Json doc;
    doc["field"] = FieldTraits<S>::name;
    doc["n"] = inst.P.dim();
    doc["Q"] = detail::render_matrix<S>(inst.f.Q);
    doc["c"] = detail::render_vector<S>(inst.f.c);
    doc["gamma"] = render(inst.f.gamma);
    doc["A"] = detail::render_matrix<S>(inst.P.A);
    doc["b"] = detail::render_vector<S>(inst.P.b);
    if (!inst.name.empty()) doc["metadata"] = Json{{"name", inst.name}};
    return doc;
}

// ---------------------------------------------------------------------------
// Result documents.
// ---------------------------------------------------------------------------

template <class S>
Json result_to_json(const SolveResult<S>& result) {
    Json doc;
    doc["status"] = to_string(result.status);
    switch (result.status) {
        case Status::Infeasible:
            doc["value"] = "+inf";
            break;
        case Status::Unbounded:
            doc["value"] = "-inf";
            doc["ray"] = Json{{"x0", detail::render_vector<S>(result.ray->x0)},
                              {"d", detail::render_vector<S>(result.ray->d)}};
            break;
        case Status::Optimal:
            doc["value"] = render(result.value);
            doc["point"] = detail::render_vector<S>(result.point);
            break;
    }
    doc["stats"] = Json{{"subproblems", result.stats.subproblems},
                        {"depth", result.stats.max_depth}};
    return doc;
}

template <class S>
SolveResult<S> parse_result(const Json& doc, Index n) {
    if (!doc.contains("status") || !doc.at("status").is_string())
        throw ParseError("result document requires a 'status' string");
    std::string status = doc.at("status").get<std::string>();
    if (status == "Infeasible") return SolveResult<S>::infeasible();
    if (status == "Unbounded") {
        if (!doc.contains("ray")) throw ParseError("Unbounded result requires a 'ray'");
        RayCertificate<S> cert;
        cert.x0 = detail::parse_vector<S>(doc.at("ray").at("x0"), n, "ray.x0");
        cert.d = detail::parse_vector<S>(doc.at("ray").at("d"), n, "ray.d");
        return SolveResult<S>::unbounded(std::move(cert));
    }
    if (status == "Optimal") {
        if (!doc.contains("value") || !doc.contains("point"))
            throw ParseError("Optimal result requires 'value' and 'point'");
        return SolveResult<S>::optimal(
            FieldTraits<S>::parse(doc.at("value").get<std::string>()),
            detail::parse_vector<S>(doc.at("point"), n, "point"));
    }
    throw ParseError("unknown status '" + status + "'");
}

} // namespace qplof
