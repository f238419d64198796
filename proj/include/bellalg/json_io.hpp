#pragma once

#include <json.hpp>

#include "bellalg/nc_text.hpp"
#include "bellalg/reptheory.hpp"

namespace bellalg {

using Json = nlohmann::json;

// ---- matrices: { "rows", "cols", "params", "entries" } with entries in the
// scalar text grammar; round-trips bit-exactly through the canonical printer.

inline Json matrix_to_json(const SymMatrix &m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["params"] = m.params().names();
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(m.at(i, k).str());
    j["entries"] = std::move(entries);
    return j;
}

inline SymMatrix matrix_from_json(const Json &j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix JSON: missing rows/cols/entries");
    ParamSet ps(j.value("params", std::vector<std::string>{}));
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    const Json &entries = j["entries"];
    if (entries.size() != rows * cols)
        throw ParseError("matrix JSON: entries length != rows*cols");
    SymMatrix m(ps, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = parse_scalar(entries[i * cols + k].get<std::string>(), ps);
    return m;
}

inline Json vector_to_json(const SymVector &v) {
    Json j;
    j["dim"] = v.dim();
    j["params"] = v.params().names();
    Json entries = Json::array();
    for (std::size_t k = 0; k < v.dim(); ++k) entries.push_back(v[k].str());
    j["entries"] = std::move(entries);
    return j;
}

// ---- field matrices / subspaces (scalar strings, parameter-free) ----

inline Json fmatrix_to_json(const FMatrix &m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(m.at(i, k).str());
    j["entries"] = std::move(entries);
    return j;
}

inline FMatrix fmatrix_from_json(const Json &j) {
    std::size_t rows = j["rows"].get<std::size_t>();
    std::size_t cols = j["cols"].get<std::size_t>();
    const Json &entries = j["entries"];
    if (entries.size() != rows * cols) throw ParseError("matrix JSON: entries length != rows*cols");
    FMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m.at(i, k) = parse_field_element(entries[i * cols + k].get<std::string>());
    return m;
}

inline Json subspace_to_json(const Subspace &s) {
    Json basis = Json::array();
    for (const auto &v : s.basis()) {
        Json row = Json::array();
        for (const auto &x : v) row.push_back(x.str());
        basis.push_back(std::move(row));
    }
    return Json{{"dim", s.dim()}, {"ambient", s.ambient()}, {"basis", std::move(basis)}};
}

// ---- representations: { "dim", "params", "images": {a,b,c,d} } ----

inline Json representation_to_json(const Representation &rep) {
    Json params = Json::object();
    for (const auto &[k, v] : rep.bindings) params[k] = v.str();
    Json images = Json::object();
    const char *names = "abcd";
    for (std::size_t g = 0; g < 4; ++g)
        images[std::string(1, names[g])] = fmatrix_to_json(rep.images[g]);
    return Json{{"dim", rep.dim},
                {"family", rep.family},
                {"params", std::move(params)},
                {"verified", rep.verified},
                {"images", std::move(images)}};
}

inline Representation representation_from_json(const Json &j) {
    Representation rep;
    rep.dim = j["dim"].get<std::size_t>();
    rep.family = j.value("family", std::string("custom"));
    if (j.contains("params"))
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            rep.bindings[it.key()] = parse_field_element(it.value().get<std::string>());
    const char *names = "abcd";
    for (std::size_t g = 0; g < 4; ++g) {
        const std::string key(1, names[g]);
        if (!j["images"].contains(key)) throw ParseError("representation JSON: missing image " + key);
        rep.images[g] = fmatrix_from_json(j["images"][key]);
        if (rep.images[g].rows() != rep.dim || rep.images[g].cols() != rep.dim)
            throw ParseError("representation JSON: image " + key + " has wrong shape");
    }
    return rep;
}

// ---- relation sets and certificates ----

inline Json relation_set_to_json(const RelationSet &rels) {
    Json list = Json::array();
    for (std::size_t k = 0; k < rels.size(); ++k)
        list.push_back(Json{{"label", rels.label(k)}, {"relation", rels.relation(k).str()}});
    return Json{{"params", rels.params().names()}, {"relations", std::move(list)}};
}

inline RelationSet relation_set_from_json(const Json &j) {
    ParamSet ps(j.value("params", std::vector<std::string>{"q"}));
    RelationSet out(ps);
    for (const auto &item : j["relations"])
        out.add(parse_ncpoly(item["relation"].get<std::string>(), ps),
                item.value("label", std::string()));
    return out;
}

inline Json certificate_to_json(const IdealCertificate &cert) {
    Json terms = Json::array();
    for (const CertTerm &t : cert.combination)
        terms.push_back(Json{{"left", word_str(t.left)},
                             {"relation", t.relation_index},
                             {"right", word_str(t.right)},
                             {"coeff", t.coeff.str()}});
    return terms;
}

// ---- evolution results ----

inline Json evolution_to_json(BellSign s, const EvolutionPoint &pt, std::size_t ket, const C4 &out) {
    static const char *kets[4] = {"00", "01", "10", "11"};
    Json ov = Json::array();
    for (const auto &z : out) ov.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"theta", pt.theta},
                {"phi", pt.phi},
                {"sign", to_string(s)},
                {"in", kets[ket]},
                {"out", std::move(ov)}};
}

} // namespace bellalg
