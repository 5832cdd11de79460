/**
 * @file report.hpp
 * @brief JSON serialization of presentations, resolutions, comultiplication tables,
 * bimodule resolutions and verdicts.
 *
 * nlohmann::json keeps object keys in a std::map, so every object is written
 * with sorted keys and the output of `dump` depends on the data alone.
 * Scalars are strings: "p/q" over Q, a residue in [0, p) over GF(p).
 */
#pragma once

#include "bimodule.hpp"
#include "comult.hpp"
#include "presentation.hpp"
#include "resolution.hpp"

#include <json.hpp>

#include <string>

namespace koszul {

using json = nlohmann::json;

template <Field K>
json to_json(const K& field, const Quiver& q, const PathVector<K>& v) {
    json out = json::object();
    for (const auto& [path, c] : v.terms()) out[q.to_string(path)] = field.to_string(c);
    return out;
}

template <Field K>
json to_json(const K& field, const Quiver& q, const TensorElement<K>& t) {
    json out = json::object();
    for (const auto& [lr, c] : t.terms()) out[q.to_string(lr.first) + "|" + q.to_string(lr.second)] = field.to_string(c);
    return out;
}

template <Field K>
json to_json(const Presentation<K>& p) {
    json vertices = json::array(), arrows = json::array(), relations = json::array();
    for (VertexId v = 0; v < p.quiver.num_vertices(); ++v) vertices.push_back(p.quiver.vertex_name(v));
    for (ArrowId a = 0; a < p.quiver.num_arrows(); ++a) {
        const auto& arrow = p.quiver.arrow(a);
        arrows.push_back({{"name", arrow.name},
                          {"origin", p.quiver.vertex_name(arrow.origin)},
                          {"terminus", p.quiver.vertex_name(arrow.terminus)}});
    }
    for (const auto& r : p.relations) relations.push_back(to_json(p.field, p.quiver, r));
    return {{"field", p.field.spec().to_string()}, {"vertices", vertices}, {"arrows", arrows}, {"relations", relations}};
}

template <Field K>
json levels_to_json(const ResolutionData<K>& data) {
    const K& field = data.presentation.field;
    const Quiver& q = data.presentation.quiver;
    json levels = json::array();
    for (const auto& level : data.levels) {
        json f = json::array(), blocks = json::array(), h = json::array();
        for (const auto& x : level.f) {
            f.push_back(to_json(field, q, x.vector));
            blocks.push_back({q.vertex_name(x.origin), q.vertex_name(x.terminus)});
        }
        for (const auto& row : level.h) {
            json r = json::array();
            for (const auto& e : row) r.push_back(to_json(field, q, e));
            h.push_back(std::move(r));
        }
        levels.push_back({{"n", level.n}, {"f", f}, {"blocks", blocks}, {"h", h}});
    }
    return levels;
}

template <Field K>
json to_json(const ResolutionData<K>& data) {
    return {{"levels", levels_to_json(data)}, {"betti", data.betti()}};
}

template <Field K>
json comult_entries_to_json(const K& field, const ComultTable<K>& table) {
    json out = json::array();
    for (const auto& [key, entry] : table.entries) {
        json coefficients = json::array();
        for (const auto& [pq, c] : entry.coefficients) coefficients.push_back({pq.first, pq.second, field.to_string(c)});
        out.push_back({{"n", key.n},
                       {"i", key.i},
                       {"r", key.r},
                       {"coefficients", coefficients},
                       {"nullity", entry.nullity},
                       {"candidates", entry.candidates}});
    }
    return out;
}

template <Field K>
json to_json(const K& field, const ComultTable<K>& table) {
    return {{"c", comult_entries_to_json(field, table)}};
}

template <Field K>
json to_json(const BimoduleResolution<K>& res) {
    const K& field = res.presentation.field;
    const Quiver& q = res.presentation.quiver;
    json generators = json::array(), delta = json::array();
    for (const auto& level : res.generators) {
        json gens = json::array();
        for (const auto& g : level)
            gens.push_back({{"origin", q.vertex_name(g.origin)}, {"terminus", q.vertex_name(g.terminus)}, {"degree", g.degree}});
        generators.push_back(std::move(gens));
    }
    for (std::size_t n = 1; n < res.delta.size(); ++n) {
        json matrix = json::array();
        for (const auto& row : res.delta[n]) {
            json r = json::array();
            for (const auto& e : row) r.push_back(to_json(field, q, e));
            matrix.push_back(std::move(r));
        }
        delta.push_back({{"n", n}, {"matrix", matrix}});
    }
    return {{"generators", generators}, {"delta", delta}};
}

inline json to_json(const KoszulVerdict& v) {
    json out = {{"status", v.koszul() ? "koszul_up_to" : "not_koszul"},
                {"max_level", v.max_level},
                {"max_degree", v.max_degree},
                {"summary", v.describe()}};
    if (v.witness)
        out["witness"] = {{"kind", v.witness->kind},
                          {"level", v.witness->level},
                          {"degree", v.witness->degree},
                          {"dimension", v.witness->dimension},
                          {"detail", v.witness->detail}};
    return out;
}

inline json to_json(const HomologyTable& t) {
    json entries = json::array();
    for (const auto& [nd, dim] : t.entries)
        if (dim != 0) entries.push_back({nd.first, nd.second, dim});
    return {{"max_level", t.max_level}, {"max_degree", t.max_degree}, {"all_zero", t.all_zero()}, {"nonzero", entries}};
}

/// A named pass/fail check with an optional witness string.
inline json check_json(bool pass, const std::string& witness) {
    json out = {{"pass", pass}};
    if (!pass) out["witness"] = witness;
    return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace koszul
