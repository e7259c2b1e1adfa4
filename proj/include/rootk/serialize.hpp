#pragma once

#include <json.hpp>

#include <string>

#include "rootk/classify.hpp"
#include "rootk/gkm.hpp"
#include "rootk/signed_graph.hpp"

namespace rootk {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";

namespace detail {

inline void require_schema(const Json& j) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != schema_version)
        throw std::invalid_argument("unsupported or missing schema version, want \"" +
                                    std::string(schema_version) + "\"");
}

}  // namespace detail

inline Json verdict_to_json(const PairVerdict& v) {
    Json j;
    j["ambient"] = to_string(v.ambient);
    j["spec"] = steps_string(v.spec);
    Json comps = Json::array();
    for (const LieType& c : v.components) comps.push_back(to_string(c));
    j["components"] = std::move(comps);
    j["torus_rank"] = v.torus_rank;
    j["complement_size"] = v.complement_size;
    j["computed_k"] = v.computed_k;
    j["symmetric"] = v.symmetric;
    if (v.cartan_label)
        j["cartan_label"] = *v.cartan_label;
    else
        j["cartan_label"] = nullptr;
    j["expected_k"] = v.expected_k;
    j["matches"] = v.matches;
    return j;
}

inline PairVerdict verdict_from_json(const Json& j) {
    PairVerdict v;
    v.ambient = parse_type(j.at("ambient").get<std::string>());
    v.spec = parse_spec(to_string(v.ambient) + " " + j.at("spec").get<std::string>());
    for (const Json& c : j.at("components")) v.components.push_back(parse_type(c.get<std::string>()));
    v.torus_rank = j.at("torus_rank").get<int>();
    v.complement_size = j.at("complement_size").get<int>();
    v.computed_k = j.at("computed_k").get<int>();
    v.symmetric = j.at("symmetric").get<bool>();
    if (!j.at("cartan_label").is_null()) v.cartan_label = j.at("cartan_label").get<std::string>();
    v.expected_k = j.at("expected_k").get<int>();
    v.matches = j.at("matches").get<bool>();
    return v;
}

/// Everything except the elapsed time, which is measurement, not result.
inline Json report_to_json(const VerificationReport& r) {
    Json j;
    j["schema"] = schema_version;
    j["mismatches"] = r.mismatch_count;
    Json pairs = Json::array();
    for (const PairVerdict& v : r.pairs) pairs.push_back(verdict_to_json(v));
    j["pairs"] = std::move(pairs);
    return j;
}

inline VerificationReport report_from_json(const Json& j) {
    detail::require_schema(j);
    VerificationReport r;
    r.mismatch_count = j.at("mismatches").get<int>();
    for (const Json& p : j.at("pairs")) r.pairs.push_back(verdict_from_json(p));
    return r;
}

inline Json roots_to_json(const RootSystem& sys) {
    Json j;
    j["schema"] = schema_version;
    j["type"] = to_string(sys.type);
    j["rank"] = sys.rank();
    j["count"] = sys.positive.size();
    j["weyl_order"] = weyl_order(sys.type).str();
    j["highest"] = sys.highest;
    j["highest_text"] = format_root(sys.highest);
    j["marks"] = sys.marks;
    Json roots = Json::array();
    for (const Root& r : sys.positive) {
        Json entry;
        entry["coefficients"] = r;
        entry["text"] = format_root(r);
        entry["height"] = height(r);
        roots.push_back(std::move(entry));
    }
    j["roots"] = std::move(roots);
    return j;
}

inline Json subsystem_to_json(const RootSystem& sys, const Subsystem& sub) {
    Json j;
    j["schema"] = schema_version;
    j["ambient"] = to_string(sys.type);
    j["spec"] = steps_string(sub.spec);
    Json comps = Json::array();
    for (const LieType& c : sub.components) comps.push_back(to_string(c));
    j["components"] = std::move(comps);
    j["torus_rank"] = sub.torus_rank;
    Json nodes = Json::array();
    for (const Root& r : sub.nodes) nodes.push_back(format_root(r));
    j["nodes"] = std::move(nodes);
    j["positive_count"] = sub.roots.size();
    Json trace = Json::array();
    for (const StepTrace& t : sub.trace) {
        Json entry;
        entry["step"] = to_string(t.step);
        entry["removed"] = format_root(t.removed);
        if (t.added)
            entry["added"] = format_root(*t.added);
        else
            entry["added"] = nullptr;
        trace.push_back(std::move(entry));
    }
    j["trace"] = std::move(trace);
    return j;
}

inline Json indep_to_json(const RootSystem& sys, const Subsystem& sub, const WeightSet& weights,
                          const IndependenceReport& rep, bool witness) {
    Json j;
    j["schema"] = schema_version;
    j["ambient"] = to_string(sys.type);
    j["spec"] = steps_string(sub.spec);
    j["complement_size"] = weights.vectors.size();
    j["k"] = rep.k;
    j["rank"] = rep.rank;
    if (witness && rep.circuit) {
        Json circuit = Json::array();
        for (int idx : *rep.circuit) circuit.push_back(weights.labels[idx]);
        j["circuit"] = std::move(circuit);
        Json rel = Json::array();
        if (rep.witness_relation)
            for (const BigInt& c : *rep.witness_relation) rel.push_back(c.str());
        j["relation"] = std::move(rel);
    }
    return j;
}

inline Json signed_graph_to_json(const SignedGraph& g, const GraphVerdict& verdict) {
    Json j;
    j["schema"] = schema_version;
    j["type"] = to_string(g.type);
    j["vertices"] = g.vertex_count();
    Json edges = Json::array();
    for (const SignedEdge& e : g.edges) {
        Json entry;
        entry["u"] = e.u;
        entry["v"] = e.v;
        entry["sign"] = std::string(1, char(e.sign));
        edges.push_back(std::move(entry));
    }
    j["edges"] = std::move(edges);
    Json loops = Json::array();
    for (const SignedLoop& l : g.loops) loops.push_back(l.vertex);
    j["loops"] = std::move(loops);
    j["k"] = verdict.k;
    if (verdict.witness) {
        Json w;
        w["pattern"] = to_string(verdict.witness->kind);
        Json support = Json::array();
        for (const ElementRef& ref : verdict.witness->support) {
            Json entry;
            entry["kind"] = ref.is_loop ? "loop" : "edge";
            entry["index"] = ref.index;
            support.push_back(std::move(entry));
        }
        w["support"] = std::move(support);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json gkm_to_json(const RootSystem& sys, const GkmGraph& g) {
    Json j;
    j["schema"] = schema_version;
    j["ambient"] = to_string(g.ambient);
    j["spec"] = steps_string(g.spec);
    j["weyl_order"] = g.order_g.str();
    j["subgroup_order"] = g.order_h.str();
    j["degree"] = g.degree;
    j["identity_vertex"] = g.identity_coset;
    Json vertices = Json::array();
    for (int v = 0; v < g.vertices; ++v) {
        Json entry;
        entry["id"] = v;
        entry["representative"] = g.representatives[v].action;
        vertices.push_back(std::move(entry));
    }
    j["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const GkmEdge& e : g.edges) {
        Json entry;
        entry["u"] = e.u;
        entry["v"] = e.v;
        entry["label"] = presentation_label(sys, e.label);
        edges.push_back(std::move(entry));
    }
    j["edges"] = std::move(edges);
    return j;
}

/// DOT form of the GKM graph with weight annotations on every edge.
inline std::string gkm_to_dot(const RootSystem& sys, const GkmGraph& g) {
    std::string out = "graph gkm {\n";
    out += "  // " + to_string(g.ambient) + " " + steps_string(g.spec) + "\n";
    for (int v = 0; v < g.vertices; ++v) out += "  " + std::to_string(v) + ";\n";
    for (const GkmEdge& e : g.edges)
        out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [label=\"" +
               format_root(presentation_label(sys, e.label)) + "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace rootk
