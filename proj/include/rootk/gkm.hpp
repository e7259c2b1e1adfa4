#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "rootk/matroid.hpp"
#include "rootk/subsystem.hpp"

namespace rootk {

/// A Weyl group element as its integer action matrix on simple-root
/// coordinates: w(v) = action * v with v a coefficient column.  This is the
/// reflection representation written in the root basis, so it is exact for
/// every type; classical signed-permutation form is recovered by changing to
/// ambient coordinates.
struct WeylElement {
    IntMatrix action;

    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.action == b.action;
    }
};

namespace detail {

inline std::vector<int> flatten(const IntMatrix& m) {
    std::vector<int> out;
    out.reserve(m.size() * m.size());
    for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
    return out;
}

inline IntMatrix identity_matrix(int n) {
    IntMatrix m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const int n = int(a.size());
    IntMatrix out(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const int aik = a[i][k];
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) out[i][j] += aik * b[k][j];
        }
    return out;
}

inline Root mat_apply(const IntMatrix& m, const Root& v) {
    const int n = int(m.size());
    Root out(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += m[i][j] * v[j];
    return out;
}

}  // namespace detail

/// Action matrix of the reflection in an arbitrary root, column by column.
inline IntMatrix reflection_matrix(const RootSystem& sys, const Root& gamma) {
    const int n = sys.rank();
    IntMatrix m(n, std::vector<int>(n, 0));
    for (int j = 0; j < n; ++j) {
        Root basis(n, 0);
        basis[j] = 1;
        Root image = sys.reflect(basis, gamma);
        for (int i = 0; i < n; ++i) m[i][j] = image[i];
    }
    return m;
}

/// Group-size guard: 10^6 elements unless GKM_WEYL_CAP says otherwise.
inline long long default_weyl_cap() {
    if (const char* env = std::getenv("GKM_WEYL_CAP")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw std::invalid_argument("GKM_WEYL_CAP must be a positive integer, got \"" +
                                        std::string(env) + "\"");
        return v;
    }
    return 1'000'000;
}

struct WeylGroup {
    LieType type;
    BigInt order;  // closed-form order; always equals elements.size()
    std::vector<WeylElement> elements;  // breadth-first from the identity
    std::map<std::vector<int>, int> index;  // flattened action -> position

    int element_index(const IntMatrix& m) const {
        auto it = index.find(detail::flatten(m));
        if (it == index.end())
            throw internal_error("matrix outside the generated Weyl group of " + to_string(type));
        return it->second;
    }
};

/// Closure of the simple reflections.  The order is known in advance from
/// the exponent formula, so oversized groups are refused before any work,
/// and the closure must land exactly on that order.
inline WeylGroup weyl_group(const RootSystem& sys, long long cap = -1) {
    if (cap < 0) cap = default_weyl_cap();
    WeylGroup g;
    g.type = sys.type;
    g.order = weyl_order(sys.type);
    if (g.order > cap)
        throw std::invalid_argument("Weyl group of " + to_string(sys.type) + " has order " +
                                    g.order.str() + ", beyond the cap " + std::to_string(cap));
    const int n = sys.rank();
    std::vector<IntMatrix> gens;
    for (int i = 0; i < n; ++i) {
        Root alpha(n, 0);
        alpha[i] = 1;
        gens.push_back(reflection_matrix(sys, alpha));
    }
    g.elements.push_back({detail::identity_matrix(n)});
    g.index.emplace(detail::flatten(g.elements[0].action), 0);
    for (std::size_t head = 0; head < g.elements.size(); ++head) {
        const IntMatrix current = g.elements[head].action;
        for (const IntMatrix& s : gens) {
            IntMatrix next = detail::mat_mul(current, s);
            std::vector<int> key = detail::flatten(next);
            if (g.index.emplace(std::move(key), int(g.elements.size())).second)
                g.elements.push_back({std::move(next)});
        }
    }
    if (BigInt(g.elements.size()) != g.order)
        throw internal_error("Weyl closure of " + to_string(sys.type) + " produced " +
                             std::to_string(g.elements.size()) + " elements, formula says " +
                             g.order.str());
    return g;
}

struct FixedPointSet {
    BigInt order_g;
    BigInt order_h;
    int count = 0;
    std::vector<WeylElement> representatives;  // lex-least action per coset, sorted
    std::vector<int> coset_of;                 // group element index -> coset id
    int identity_coset = 0;
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Left cosets w W_H as orbits of right multiplication by the reflections in
/// the subsystem's node roots (a base of Delta_H).
inline FixedPointSet partition_cosets(const RootSystem& sys, const WeylGroup& g,
                                      const Subsystem& sub) {
    FixedPointSet fp;
    fp.order_g = g.order;
    fp.order_h = 1;
    for (const LieType& c : sub.components) fp.order_h *= weyl_order(c);

    std::vector<IntMatrix> h_gens;
    for (const Root& gamma : sub.nodes) h_gens.push_back(reflection_matrix(sys, gamma));

    const int n_elems = int(g.elements.size());
    UnionFind uf(n_elems);
    for (int e = 0; e < n_elems; ++e)
        for (const IntMatrix& h : h_gens)
            uf.unite(e, g.element_index(mat_mul(g.elements[e].action, h)));

    // Deterministic ids: cosets keyed by their lexicographically least action.
    std::map<int, int> least_of_root;  // union-find root -> element with least flattened action
    for (int e = 0; e < n_elems; ++e) {
        const int r = uf.find(e);
        auto it = least_of_root.find(r);
        if (it == least_of_root.end())
            least_of_root.emplace(r, e);
        else if (flatten(g.elements[e].action) < flatten(g.elements[it->second].action))
            it->second = e;
    }
    std::vector<std::pair<std::vector<int>, int>> ordered;  // (flattened least, uf root)
    for (const auto& [root, least] : least_of_root)
        ordered.emplace_back(flatten(g.elements[least].action), root);
    std::sort(ordered.begin(), ordered.end());

    fp.count = int(ordered.size());
    if (BigInt(fp.count) * fp.order_h != fp.order_g)
        throw internal_error("coset partition of " + to_string(sys.type) + " gives " +
                             std::to_string(fp.count) + " parts, expected |W_G|/|W_H| = (" +
                             fp.order_g.str() + ")/(" + fp.order_h.str() + ")");
    std::map<int, int> id_of_root;
    for (int c = 0; c < fp.count; ++c) {
        id_of_root.emplace(ordered[c].second, c);
        fp.representatives.push_back(g.elements[least_of_root.at(ordered[c].second)]);
    }
    fp.coset_of.resize(n_elems);
    for (int e = 0; e < n_elems; ++e) fp.coset_of[e] = id_of_root.at(uf.find(e));
    fp.identity_coset = fp.coset_of[0];
    return fp;
}

}  // namespace detail

/// Torus fixed points of G/H, i.e. the coset space W_G / W_H.
inline FixedPointSet fixed_points(const RootSystem& sys, const SubsystemSpec& spec,
                                  long long cap = -1) {
    WeylGroup g = weyl_group(sys, cap);
    Subsystem sub = subsystem_roots(sys, spec);
    return detail::partition_cosets(sys, g, sub);
}

struct GkmEdge {
    int u, v;    // coset ids, u < v
    Root label;  // positive representative of the tangent weight, root coordinates

    friend bool operator==(const GkmEdge& a, const GkmEdge& b) {
        return a.u == b.u && a.v == b.v && a.label == b.label;
    }
};

struct GkmGraph {
    LieType ambient;
    SubsystemSpec spec;
    BigInt order_g;
    BigInt order_h;
    int vertices = 0;
    int degree = 0;  // = number of positive complement roots, same at every vertex
    std::vector<WeylElement> representatives;
    std::vector<GkmEdge> edges;  // unique, sorted by (u, v, label)
    int identity_coset = 0;
};

/// Label in presentation coordinates: ambient integers where those exist,
/// otherwise the simple-root coefficients themselves.
inline std::vector<int> presentation_label(const RootSystem& sys, const Root& label) {
    return sys.has_ambient() ? sys.ambient(label) : label;
}

/// The GKM graph of G/H: one vertex per fixed point wW_H, and for each
/// positive complement root beta an edge from wW_H to w sigma_beta W_H
/// labeled by w(beta) up to sign.  Every edge is discovered once from each
/// endpoint with the same label; anything else is a bug.
inline GkmGraph gkm_graph(const RootSystem& sys, const SubsystemSpec& spec, long long cap = -1) {
    WeylGroup g = weyl_group(sys, cap);
    Subsystem sub = subsystem_roots(sys, spec);
    FixedPointSet fp = detail::partition_cosets(sys, g, sub);
    std::vector<Root> comp = complement(sys, sub);

    GkmGraph out;
    out.ambient = sys.type;
    out.spec = spec;
    out.order_g = fp.order_g;
    out.order_h = fp.order_h;
    out.vertices = fp.count;
    out.degree = int(comp.size());
    out.representatives = fp.representatives;
    out.identity_coset = fp.identity_coset;

    std::vector<IntMatrix> sigma;
    for (const Root& beta : comp) sigma.push_back(reflection_matrix(sys, beta));

    std::map<std::tuple<int, int, Root>, int> seen;
    for (int c = 0; c < fp.count; ++c) {
        const IntMatrix& w = fp.representatives[c].action;
        for (std::size_t b = 0; b < comp.size(); ++b) {
            const int d = fp.coset_of[g.element_index(detail::mat_mul(w, sigma[b]))];
            if (d == c)
                throw internal_error("self-loop at a GKM vertex of " + to_string(spec));
            Root label = detail::mat_apply(w, comp[b]);
            if (height(label) < 0) label = negate(label);
            if (!sys.is_positive_root(label))
                throw internal_error("Weyl image is not a root in " + to_string(spec));
            ++seen[{std::min(c, d), std::max(c, d), label}];
        }
    }
    for (const auto& [key, times] : seen) {
        if (times != 2)
            throw internal_error("edge of " + to_string(spec) + " seen " +
                                 std::to_string(times) + " times, want once per endpoint");
        out.edges.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    std::vector<int> deg(out.vertices, 0);
    for (const GkmEdge& e : out.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int d : deg)
        if (d != out.degree)
            throw internal_error("vertex degree " + std::to_string(d) + " in " + to_string(spec) +
                                 ", want " + std::to_string(out.degree));
    return out;
}

/// Tangent weights incident to one vertex, as a weight set ready for the
/// independence engine.
inline WeightSet vertex_weights(const RootSystem& sys, const GkmGraph& g, int vertex) {
    WeightSet s;
    s.dimension = sys.rank();
    for (const GkmEdge& e : g.edges)
        if (e.u == vertex || e.v == vertex) {
            s.vectors.push_back(e.label);
            s.labels.push_back(format_root(e.label));
        }
    return s;
}

/// Independence number at every fixed point; Weyl invariance says all
/// vertices agree, so a disagreement is an internal failure, not data.
inline int gkm_common_k(const RootSystem& sys, const GkmGraph& g) {
    int common = -1;
    for (int v = 0; v < g.vertices; ++v) {
        const int k = independence_number(vertex_weights(sys, g, v)).k;
        if (common == -1) common = k;
        if (k != common)
            throw internal_error("independence number differs between fixed points of " +
                                 to_string(g.spec));
    }
    return common;
}

}  // namespace rootk
