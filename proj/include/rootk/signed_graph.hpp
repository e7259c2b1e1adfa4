#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootk/matroid.hpp"
#include "rootk/subsystem.hpp"

// Weighted signed graphs for the classical families.  A '+' edge realizes the
// difference of the endpoint weights, a '-' edge the sum, and a loop the
// weight of its vertex; drawing conventions elsewhere disagree on which style
// means which sign, so the algebraic rule here is the contract.

namespace rootk {

enum class EdgeSign : char { plus = '+', minus = '-' };

struct SignedEdge {
    int u = 0, v = 0;  // 1-based endpoints, u < v
    EdgeSign sign = EdgeSign::plus;
};

struct SignedLoop {
    int vertex = 0;  // 1-based
};

struct SignedGraph {
    LieType type;                          // classical family being modeled
    std::vector<std::vector<int>> weight;  // weight[i] = w(i+1) in ambient ints
    std::vector<SignedEdge> edges;
    std::vector<SignedLoop> loops;
    int scale_den = 1;  // edge scalars r+ = r- = 1/scale_den

    int vertex_count() const { return int(weight.size()); }

    /// Realized edge weight r(w(u) -+ w(v)); integral by construction.
    std::vector<int> edge_weight(const SignedEdge& e) const {
        const std::vector<int>& a = weight[e.u - 1];
        const std::vector<int>& b = weight[e.v - 1];
        std::vector<int> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = e.sign == EdgeSign::plus ? a[i] - b[i] : a[i] + b[i];
            if (c % scale_den != 0)
                throw internal_error("edge scalar does not keep weights integral");
            out[i] = c / scale_den;
        }
        return out;
    }

    std::vector<int> loop_weight(const SignedLoop& l) const { return weight[l.vertex - 1]; }

    /// All realized weights, edges first, then loops.
    WeightSet realized() const {
        WeightSet s;
        s.dimension = weight.empty() ? 0 : int(weight[0].size());
        for (const SignedEdge& e : edges) {
            s.vectors.push_back(edge_weight(e));
            std::ostringstream name;
            name << "edge " << e.u << char(e.sign) << e.v;
            s.labels.push_back(name.str());
        }
        for (const SignedLoop& l : loops) {
            s.vectors.push_back(loop_weight(l));
            s.labels.push_back("loop " + std::to_string(l.vertex));
        }
        return s;
    }
};

enum class PatternKind {
    two_loops_edge,
    digon_plus_loop,
    balanced_triangle,
    double_digon,
    balanced_quadrilateral,
};

inline std::string to_string(PatternKind k) {
    switch (k) {
        case PatternKind::two_loops_edge: return "two_loops_edge";
        case PatternKind::digon_plus_loop: return "digon_plus_loop";
        case PatternKind::balanced_triangle: return "balanced_triangle";
        case PatternKind::double_digon: return "double_digon";
        case PatternKind::balanced_quadrilateral: return "balanced_quadrilateral";
    }
    return "?";
}

struct ElementRef {
    bool is_loop = false;
    int index = 0;  // into edges or loops
};

struct CircuitWitness {
    PatternKind kind;
    std::vector<ElementRef> support;
};

inline std::vector<std::vector<int>> realized_support(const SignedGraph& g,
                                                      const CircuitWitness& w) {
    std::vector<std::vector<int>> out;
    for (const ElementRef& r : w.support)
        out.push_back(r.is_loop ? g.loop_weight(g.loops[r.index])
                                : g.edge_weight(g.edges[r.index]));
    return out;
}

struct GraphVerdict {
    int k = 0;
    std::optional<CircuitWitness> witness;
};

/// The ambient graph of a classical system: K_{n+1} of difference edges for
/// A_n, the doubled complete graph +-K_n for D_n, and +-K_n with one loop per
/// vertex for B_n (weights e_i) and C_n (weights 2e_i, edge scalars 1/2).
inline SignedGraph build_ambient_graph(LieType t,
                                       int max_classical_rank = default_max_classical_rank) {
    validate_type(t, max_classical_rank);
    if (!is_classical(t.family))
        throw std::invalid_argument("signed graphs model classical types only, not " +
                                    to_string(t));
    const int n = t.rank;
    SignedGraph g;
    g.type = t;
    const int vertices = t.family == Family::A ? n + 1 : n;
    const int unit = t.family == Family::C ? 2 : 1;
    g.scale_den = t.family == Family::C ? 2 : 1;
    for (int i = 0; i < vertices; ++i) {
        std::vector<int> w(vertices, 0);
        w[i] = unit;
        g.weight.push_back(w);
    }
    for (int i = 1; i <= vertices; ++i)
        for (int j = i + 1; j <= vertices; ++j) {
            g.edges.push_back({i, j, EdgeSign::plus});
            if (t.family != Family::A) g.edges.push_back({i, j, EdgeSign::minus});
        }
    if (t.family == Family::B || t.family == Family::C)
        for (int i = 1; i <= vertices; ++i) g.loops.push_back({i});
    return g;
}

/// The ambient graph with the subsystem's edges and loops deleted; what
/// remains realizes exactly the complement roots, in ambient coordinates.
inline SignedGraph complement_graph(const RootSystem& sys, const SubsystemSpec& spec) {
    SignedGraph full = build_ambient_graph(sys.type);
    Subsystem sub = subsystem_roots(sys, spec);
    std::set<std::vector<int>> wanted;
    for (const Root& rho : complement(sys, sub)) wanted.insert(sys.ambient(rho));

    SignedGraph g;
    g.type = full.type;
    g.weight = full.weight;
    g.scale_den = full.scale_den;
    std::size_t matched = 0;
    for (const SignedEdge& e : full.edges)
        if (wanted.count(full.edge_weight(e))) { g.edges.push_back(e); ++matched; }
    for (const SignedLoop& l : full.loops)
        if (wanted.count(full.loop_weight(l))) { g.loops.push_back(l); ++matched; }
    if (matched != wanted.size())
        throw internal_error("complement graph does not biject with the complement roots of " +
                             to_string(spec));
    return g;
}

namespace detail {

struct GraphIndex {
    std::vector<int> loop_at;                             // vertex -> loop index or -1
    std::map<std::pair<int, int>, std::vector<int>> adj;  // (u < v) -> edge indices

    explicit GraphIndex(const SignedGraph& g) : loop_at(g.vertex_count() + 1, -1) {
        for (std::size_t i = 0; i < g.loops.size(); ++i) loop_at[g.loops[i].vertex] = int(i);
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            adj[{g.edges[i].u, g.edges[i].v}].push_back(int(i));
    }

    const std::vector<int>* between(int u, int v) const {
        auto it = adj.find({std::min(u, v), std::max(u, v)});
        return it == adj.end() ? nullptr : &it->second;
    }

    /// First +/- pair of parallel edges between u and v, if any.
    std::optional<std::pair<int, int>> digon(const SignedGraph& g, int u, int v) const {
        const std::vector<int>* ids = between(u, v);
        if (!ids) return std::nullopt;
        int plus = -1, minus = -1;
        for (int id : *ids) {
            if (g.edges[id].sign == EdgeSign::plus && plus < 0) plus = id;
            if (g.edges[id].sign == EdgeSign::minus && minus < 0) minus = id;
        }
        if (plus < 0 || minus < 0) return std::nullopt;
        return std::make_pair(plus, minus);
    }
};

/// First choice of one edge per listed pair with an even number of '-' signs.
inline std::optional<std::vector<int>> balanced_cycle_choice(
    const SignedGraph& g, const GraphIndex& ix, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<const std::vector<int>*> lists;
    for (auto [u, v] : pairs) {
        const std::vector<int>* ids = ix.between(u, v);
        if (!ids) return std::nullopt;
        lists.push_back(ids);
    }
    std::vector<std::size_t> pick(lists.size(), 0);
    while (true) {
        int minus = 0;
        std::vector<int> chosen;
        for (std::size_t i = 0; i < lists.size(); ++i) {
            int id = (*lists[i])[pick[i]];
            chosen.push_back(id);
            if (g.edges[id].sign == EdgeSign::minus) ++minus;
        }
        if (minus % 2 == 0) return chosen;
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < lists[i]->size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) return std::nullopt;
    }
}

}  // namespace detail

/// Pattern-based independence number: a size-3 circuit pattern caps k at 2, a
/// size-4 pattern at 3, and a graph with neither is wholly independent.
/// Patterns are searched loops first, then digons, triangles and
/// quadrilaterals, scanning vertices in increasing order.
inline GraphVerdict graph_k(const SignedGraph& g) {
    const detail::GraphIndex ix(g);
    const int n = g.vertex_count();
    auto edge_ref = [](int id) { return ElementRef{false, id}; };
    auto loop_ref = [](int id) { return ElementRef{true, id}; };

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (ix.loop_at[i] < 0 || ix.loop_at[j] < 0) continue;
            const std::vector<int>* ids = ix.between(i, j);
            if (!ids) continue;
            CircuitWitness w{PatternKind::two_loops_edge,
                             {loop_ref(ix.loop_at[i]), loop_ref(ix.loop_at[j]),
                              edge_ref(ids->front())}};
            return {2, w};
        }

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (ix.loop_at[i] < 0 && ix.loop_at[j] < 0) continue;
            auto d = ix.digon(g, i, j);
            if (!d) continue;
            int at = ix.loop_at[i] >= 0 ? ix.loop_at[i] : ix.loop_at[j];
            CircuitWitness w{PatternKind::digon_plus_loop,
                             {edge_ref(d->first), edge_ref(d->second), loop_ref(at)}};
            return {2, w};
        }

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                auto pick = detail::balanced_cycle_choice(g, ix, {{i, j}, {j, k}, {i, k}});
                if (!pick) continue;
                CircuitWitness w{PatternKind::balanced_triangle,
                                 {edge_ref((*pick)[0]), edge_ref((*pick)[1]),
                                  edge_ref((*pick)[2])}};
                return {2, w};
            }

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                const std::array<std::array<int, 3>, 3> sharings = {
                    {{i, j, k}, {j, i, k}, {k, i, j}}};
                for (const auto& s : sharings) {
                    auto d1 = ix.digon(g, s[0], s[1]);
                    auto d2 = ix.digon(g, s[0], s[2]);
                    if (!d1 || !d2) continue;
                    CircuitWitness w{PatternKind::double_digon,
                                     {edge_ref(d1->first), edge_ref(d1->second),
                                      edge_ref(d2->first), edge_ref(d2->second)}};
                    return {3, w};
                }
            }

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l) {
                    const std::array<std::array<std::pair<int, int>, 4>, 3> cycles = {{
                        {{{i, j}, {j, k}, {k, l}, {i, l}}},
                        {{{i, j}, {j, l}, {k, l}, {i, k}}},
                        {{{i, k}, {j, k}, {j, l}, {i, l}}},
                    }};
                    for (const auto& cyc : cycles) {
                        auto pick = detail::balanced_cycle_choice(
                            g, ix, std::vector<std::pair<int, int>>(cyc.begin(), cyc.end()));
                        if (!pick) continue;
                        CircuitWitness w{PatternKind::balanced_quadrilateral,
                                         {edge_ref((*pick)[0]), edge_ref((*pick)[1]),
                                          edge_ref((*pick)[2]), edge_ref((*pick)[3])}};
                        return {3, w};
                    }
                }

    return {int(g.edges.size() + g.loops.size()), std::nullopt};
}

/// Graphviz rendering; sum edges solid, difference edges dashed.
inline std::string to_dot(const SignedGraph& g) {
    std::ostringstream out;
    out << "graph {\n";
    for (int i = 1; i <= g.vertex_count(); ++i) {
        out << "  " << i << " [label=\"" << i << ": (";
        const std::vector<int>& w = g.weight[i - 1];
        for (std::size_t j = 0; j < w.size(); ++j) out << (j ? "," : "") << w[j];
        out << ")\"];\n";
    }
    for (const SignedEdge& e : g.edges)
        out << "  " << e.u << " -- " << e.v << " [style="
            << (e.sign == EdgeSign::minus ? "solid" : "dashed") << "];\n";
    for (const SignedLoop& l : g.loops)
        out << "  " << l.vertex << " -- " << l.vertex << " [style=solid];\n";
    out << "}\n";
    return out.str();
}

}  // namespace rootk
